#include <doctest.h>

#include "opdkit/smc.hpp"

using namespace opdkit;
using namespace opdkit::smc;
using opdkit::cat::CategoryBuilder;
using opdkit::cat::CatPtr;

namespace {

CatPtr walking_arrow() {
  return CategoryBuilder().object("x").object("y").arrow("f", "x", "y").build();
}

// Independent oracle for hom sizes of S C.
size_t labelled_perm_count(const cat::FinCategory& c, const Sequence& xs, const Sequence& ys) {
  if (xs.size() != ys.size()) return 0;
  size_t total = 0;
  for (const auto& rho : perm::all_permutations(static_cast<int>(xs.size()))) {
    size_t prod = 1;
    for (int i = 1; i <= static_cast<int>(xs.size()); ++i)
      prod *= c.hom(xs[static_cast<size_t>(i) - 1], ys[static_cast<size_t>(rho(i)) - 1]).size();
    total += prod;
  }
  return total;
}

}  // namespace

TEST_CASE("free_smc on the terminal category") {
  auto t = cat::terminal_category();
  const auto fs = free_smc(t, 3);
  const auto& m = *fs.smc;
  CHECK(m.num_objects() == 4);
  const int triple = m.object_of({0, 0, 0});
  CHECK(m.hom(triple, triple).size() == 6);
  CHECK(m.hom(m.object_of({0}), m.object_of({0, 0})).empty());
  CHECK(validate_smc(m).verdict);
}

TEST_CASE("free_smc hom sizes match the labelled-permutation formula") {
  auto w = walking_arrow();
  const auto fs = free_smc(w, 3);
  const auto& m = *fs.smc;
  for (int a = 0; a < m.num_objects(); ++a)
    for (int b = 0; b < m.num_objects(); ++b)
      CHECK(m.hom(a, b).size() ==
            labelled_perm_count(*w, m.objects[static_cast<size_t>(a)],
                                m.objects[static_cast<size_t>(b)]));
  CHECK(validate_smc(m).verdict);
}

TEST_CASE("free_smc morphisms factor as symmetry then tensor of labels") {
  auto w = walking_arrow();
  const auto fs = free_smc(w, 3);
  const auto& m = *fs.smc;
  for (int mor = 0; mor < m.num_mors(); ++mor) {
    const auto& d = fs.mor_data[static_cast<size_t>(mor)];
    std::vector<int> unary;
    for (size_t i = 0; i < d.labels.size(); ++i) {
      const auto& ar = w->arrows[static_cast<size_t>(d.labels[i])];
      unary.push_back(fs.mor_of(m.object_of({ar.dom}), perm::Permutation::id(1), {d.labels[i]}));
    }
    const int folded = m.tensor_fold(unary);
    const int composite = m.compose(m.sym(d.rho, m.mors[static_cast<size_t>(folded)].cod), folded);
    CHECK(composite == mor);
  }
}

TEST_CASE("free_smc on a category with composition") {
  auto z2 = CategoryBuilder().object("*").arrow("s", "*", "*").compose("s", "s", "id_*").build();
  const auto fs = free_smc(z2, 3);
  CHECK(validate_smc(*fs.smc).verdict);
  CHECK(cat::is_groupoid(*as_category(*fs.smc)));
}

TEST_CASE("identity pinning validates and is exact") {
  for (const auto& c : {cat::terminal_category(), walking_arrow()}) {
    const auto p = identity_pinning(c, 3);
    CHECK(validate_pinned(p).verdict);
    CHECK(monoidal_exactness_check(p).verdict);
  }
}

TEST_CASE("coherence square validates and its exactness matches the direct check") {
  for (const auto& c : {cat::terminal_category(), walking_arrow()}) {
    const auto p = identity_pinning(c, 2);
    const auto sq = monoidal_coherence_square(p);
    REQUIRE(cat::validate_lax_square(sq).verdict);
    const auto generic = cat::exact_square_check(sq);
    const auto direct = monoidal_exactness_check(p);
    CHECK(generic.verdict == direct.verdict);
    CHECK(generic.verdict);
  }
}

TEST_CASE("sequences-of-sequences corner count (independent oracle)") {
  // One colour, bound 2, truncation: outer length <= 2 and total length <= 2.
  // Direct enumeration: (), (()), ((x)), ((x,x)), ((),()), ((x),()), ((),(x)),
  // ((x),(x)), ((x,x),()), ((),(x,x)): 10 objects.
  auto t = cat::terminal_category();
  const auto p = identity_pinning(t, 2);
  const auto sq = monoidal_coherence_square(p);
  int oracle = 0;
  for (int outer = 0; outer <= 2; ++outer) {
    std::function<void(int, int)> rec = [&](int pos, int total) {
      if (pos == outer) {
        ++oracle;
        return;
      }
      for (int len = 0; len + total <= 2; ++len) rec(pos + 1, total + len);
    };
    rec(0, 0);
  }
  CHECK(oracle == 10);
  CHECK(sq.p.source->num_objects() == oracle);
}

TEST_CASE("validate_smc flags a rewired tensor entry") {
  auto t = cat::terminal_category();
  auto fs = free_smc(t, 2);
  BoundedSMC m = *fs.smc;
  const int single = m.object_of({0});
  const int pair = m.object_of({0, 0});
  const int id1 = m.identity[static_cast<size_t>(single)];
  const int swap = m.sym(perm::Permutation({2, 1}), pair);
  m.set_tensor(id1, id1, swap);
  const auto report = validate_smc(m);
  CHECK_FALSE(report.verdict);
}
