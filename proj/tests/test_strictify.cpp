#include <doctest.h>

#include "opdkit/smc.hpp"
#include "opdkit/testkit.hpp"

using namespace opdkit;
using namespace opdkit::smc;

TEST_CASE("twisted weak instances validate") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto inst = testkit::gen_twisted_weak(seed, 2);
    CHECK(validate_weak_smc(*inst.weak).verdict);
    CHECK(validate_strong_monoidal(inst.twisted).verdict);
    CHECK(validate_strong_monoidal(inst.plain).verdict);
  }
}

TEST_CASE("strictify recovers the untwisted tables") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto inst = testkit::gen_twisted_weak(seed, 2);
    const auto st = strictify(inst.twisted);
    const auto st0 = strictify(inst.plain);

    CHECK(validate_smc(*st.strict_smc).verdict);
    CHECK(validate_smc(*st0.strict_smc).verdict);

    // Same morphism enumeration (same target category), equal tables.
    const auto& a = *st.strict_smc;
    const auto& b = *st0.strict_smc;
    REQUIRE(a.num_mors() == b.num_mors());
    bool tensors_equal = true;
    a.visit_tensors([&](int f, int g, int fg) {
      if (b.tensor(f, g) != fg) tensors_equal = false;
    });
    CHECK(tensors_equal);
    CHECK(a.sym_table() == b.sym_table());
    for (int f = 0; f < a.num_mors(); ++f) {
      const auto& mf = a.mors[static_cast<size_t>(f)];
      for (int cod2 = 0; cod2 < a.num_objects(); ++cod2)
        for (int g : a.hom(mf.cod, cod2)) CHECK(a.compose(g, f) == b.compose(g, f));
    }
  }
}

TEST_CASE("strictification triangle: H o G = F, G strict, H strong and fully faithful") {
  const auto inst = testkit::gen_twisted_weak(5, 2);
  const auto st = strictify(inst.twisted);
  const auto& s = *inst.twisted.source;
  const auto& mp = *st.strict_smc;

  // H o G = F by table equality.
  for (int mor = 0; mor < s.num_mors(); ++mor)
    CHECK(st.embed.mor_map[static_cast<size_t>(st.strict_functor[static_cast<size_t>(mor)])] ==
          inst.twisted.mor_map[static_cast<size_t>(mor)]);
  for (int obj = 0; obj < s.num_objects(); ++obj)
    CHECK(st.embed.object_map[static_cast<size_t>(obj)] ==
          inst.twisted.object_map[static_cast<size_t>(obj)]);

  // G is identity on objects and strict monoidal.
  for (int mor = 0; mor < s.num_mors(); ++mor) {
    const auto& ms = s.mors[static_cast<size_t>(mor)];
    const auto& mg = mp.mors[static_cast<size_t>(st.strict_functor[static_cast<size_t>(mor)])];
    CHECK(mg.dom == ms.dom);
    CHECK(mg.cod == ms.cod);
  }
  for (int obj = 0; obj < s.num_objects(); ++obj)
    CHECK(st.strict_functor[static_cast<size_t>(s.identity[static_cast<size_t>(obj)])] ==
          mp.identity[static_cast<size_t>(obj)]);
  s.for_each_tensorable_pair([&](int f, int g) {
    CHECK(st.strict_functor[static_cast<size_t>(s.tensor(f, g))] ==
          mp.tensor(st.strict_functor[static_cast<size_t>(f)],
                    st.strict_functor[static_cast<size_t>(g)]));
  });
  for (const auto& [key, sym] : s.sym_table()) {
    perm::Permutation rho;
    rho.images = key.second;
    CHECK(st.strict_functor[static_cast<size_t>(sym)] == mp.sym(rho, key.first));
  }
  for (int f = 0; f < s.num_mors(); ++f) {
    const auto& mf = s.mors[static_cast<size_t>(f)];
    for (int cod2 = 0; cod2 < s.num_objects(); ++cod2)
      for (int g : s.hom(mf.cod, cod2))
        CHECK(st.strict_functor[static_cast<size_t>(s.compose(g, f))] ==
              mp.compose(st.strict_functor[static_cast<size_t>(g)],
                         st.strict_functor[static_cast<size_t>(f)]));
  }

  // H is strong monoidal and fully faithful by construction of the homs.
  CHECK(validate_strong_monoidal(st.embed).verdict);
  const auto& t = *inst.twisted.target->cat;
  for (int a = 0; a < mp.num_objects(); ++a)
    for (int b = 0; b < mp.num_objects(); ++b)
      CHECK(mp.hom(a, b).size() ==
            t.hom(st.embed.object_map[static_cast<size_t>(a)],
                  st.embed.object_map[static_cast<size_t>(b)])
                .size());
}

TEST_CASE("strictify rejects broken coherence data") {
  auto inst = testkit::gen_twisted_weak(9, 2);
  // Sabotage one coherence component: replace it with the identity twin,
  // flipping the bit.
  auto& coh = inst.twisted.coherence;
  REQUIRE(!coh.empty());
  for (auto& [key, arrow] : coh) {
    const auto& ar = inst.twisted.target->cat->arrows[static_cast<size_t>(arrow)];
    if (ar.dom != inst.twisted.target->cat->num_objects() - 1) {
      // find the other endomorphism on the same object
      for (int cand : inst.twisted.target->cat->hom(ar.dom, ar.cod))
        if (cand != arrow) {
          arrow = cand;
          break;
        }
      break;
    }
  }
  CHECK_THROWS_AS(strictify(inst.twisted), input_error);
}
