#include <doctest.h>

#include "opdkit/adjunctions.hpp"
#include "opdkit/testkit.hpp"

using namespace opdkit;
using namespace opdkit::adj;
using opdkit::cat::CategoryBuilder;
using opdkit::opd::comm_operad;
using opdkit::opd::OpdPtr;

namespace {

OpdPtr one_binary_generator(int bound) {
  // Free symmetric operad on one binary generator, truncated at `bound`.
  testkit::GenConfig cfg;
  cfg.seed = 0;
  cfg.max_colours = 1;
  cfg.max_ops = 1;
  cfg.arity_bound = bound;
  // gen_operad draws sizes from the seed; build directly instead for
  // determinism of this helper: seed search below.
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    cfg.seed = seed;
    auto p = testkit::gen_operad(cfg);
    if (p->colours.size() == 1) {
      // one binary generator iff |P(c,c;c)| = 2  (b and its transposition)
      if (p->multihom({0, 0}, 0).size() == 2) return p;
    }
  }
  throw std::runtime_error("no seed produced the one-binary-generator operad");
}

}  // namespace

TEST_CASE("hermida_free of Comm counts functions") {
  const auto hf = hermida_free(comm_operad(4), 4);
  const auto& m = *hf.smc;
  CHECK(smc::validate_smc(m).verdict);
  for (int mm = 0; mm <= 4; ++mm)
    for (int n = 0; n <= 4; ++n) {
      const int dom = m.object_of(smc::Sequence(static_cast<size_t>(mm), 0));
      const int cod = m.object_of(smc::Sequence(static_cast<size_t>(n), 0));
      std::uint64_t expected = 1;  // n^m with 0^0 = 1
      if (mm > 0) {
        expected = 1;
        for (int i = 0; i < mm; ++i) expected *= static_cast<std::uint64_t>(n);
      }
      CHECK(m.hom(dom, cod).size() == expected);
    }
}

TEST_CASE("hermida_free on a unary operad is the free SMC") {
  auto c = CategoryBuilder().object("x").object("y").arrow("f", "x", "y").build();
  const auto hf = hermida_free(opd::operad_of_category(c, 3), 3);
  const auto fs = smc::free_smc(c, 3);
  CHECK(smc::validate_smc(*hf.smc).verdict);
  REQUIRE(hf.smc->num_objects() == fs.smc->num_objects());
  // Object-preserving hom bijections; compare sizes per pair and validate a
  // full isomorphism through canonical encodings: alpha must be a bijection,
  // the label of strand i is ops[alpha(i)].
  for (int a = 0; a < hf.smc->num_objects(); ++a)
    for (int b = 0; b < hf.smc->num_objects(); ++b)
      CHECK(hf.smc->hom(a, b).size() == fs.smc->hom(a, b).size());
  // Structure-preserving identification: map each F P morphism to the S C
  // labelled permutation and compare composition tables.
  std::vector<int> iso(static_cast<size_t>(hf.smc->num_mors()));
  for (int mor = 0; mor < hf.smc->num_mors(); ++mor) {
    const auto& d = hf.mor_data[static_cast<size_t>(mor)];
    REQUIRE(d.alpha.domain_size == d.alpha.codomain_size);
    perm::Permutation rho;
    rho.images = d.alpha.images;
    std::vector<int> labels(d.ops.size());
    for (int i = 1; i <= d.alpha.domain_size; ++i)
      labels[static_cast<size_t>(i) - 1] = d.ops[static_cast<size_t>(d.alpha(i)) - 1];
    iso[static_cast<size_t>(mor)] =
        fs.mor_of(hf.smc->mors[static_cast<size_t>(mor)].dom, rho, labels);
  }
  for (int f = 0; f < hf.smc->num_mors(); ++f) {
    const auto& mf = hf.smc->mors[static_cast<size_t>(f)];
    for (int cod2 = 0; cod2 < hf.smc->num_objects(); ++cod2)
      for (int g : hf.smc->hom(mf.cod, cod2))
        CHECK(iso[static_cast<size_t>(hf.smc->compose(g, f))] ==
              fs.smc->compose(iso[static_cast<size_t>(g)], iso[static_cast<size_t>(f)]));
  }
  hf.smc->for_each_tensorable_pair([&](int f, int g) {
    CHECK(iso[static_cast<size_t>(hf.smc->tensor(f, g))] ==
          fs.smc->tensor(iso[static_cast<size_t>(f)], iso[static_cast<size_t>(g)]));
  });
  for (const auto& [key, s] : hf.smc->sym_table()) {
    perm::Permutation rho;
    rho.images = key.second;
    CHECK(iso[static_cast<size_t>(s)] == fs.smc->sym(rho, key.first));
  }
}

TEST_CASE("hermida_free validates on a free operad with a binary generator") {
  const auto p = one_binary_generator(3);
  const auto hf = hermida_free(p, 3);
  CHECK(smc::validate_smc(*hf.smc).verdict);
}

TEST_CASE("hermida unit is a fully faithful operad map") {
  for (const auto& p : {comm_operad(3), one_binary_generator(3)}) {
    const auto unit = hermida_unit(p, 3);
    CHECK(opd::validate_operad(*unit.end.operad).verdict);
    CHECK(opd::validate_operad_map(unit.map).verdict);
    CHECK(opd::operad_map_fully_faithful(unit.map));
  }
}

TEST_CASE("hermida counit on a free target is bijective and fully faithful") {
  const auto p = one_binary_generator(3);
  const auto hf = hermida_free(p, 3);
  const auto counit = hermida_counit(hf.smc);
  CHECK(validate_hermida_counit(counit).verdict);
  CHECK(hermida_counit_fully_faithful(counit).verdict);
  // Identity morphisms map to identities (alpha = id, units |-> identity).
  const auto& fe = *counit.free->smc;
  for (int a = 0; a < fe.num_objects(); ++a)
    CHECK(counit.mor_map[static_cast<size_t>(fe.identity[static_cast<size_t>(a)])] ==
          hf.smc->identity[static_cast<size_t>(counit.object_map[static_cast<size_t>(a)])]);
}

TEST_CASE("subst_free pinnings validate and are hereditary") {
  const auto p = one_binary_generator(3);
  const auto pins = opd::pinnings(p);
  for (const auto& s : {pins.discrete, pins.groupoid, pins.full}) {
    const auto tau = subst_free(s, 3);
    CHECK(smc::validate_pinned(tau).verdict);
    const auto hered = hereditary_check(tau);
    CHECK(hered.verdict);
  }
}

TEST_CASE("identity pinning of a free SMC is hereditary and a regular pattern") {
  auto c = CategoryBuilder().object("x").object("y").arrow("f", "x", "y").build();
  const auto tau = smc::identity_pinning(c, 3);
  CHECK(hereditary_check(tau).verdict);
  CHECK(regular_pattern_check(tau).verdict);
}

TEST_CASE("subst_unit_check on canonical pinnings") {
  const auto p = one_binary_generator(3);
  const auto pins = opd::pinnings(p);
  CHECK(subst_unit_check(pins.groupoid, 3).verdict);
  CHECK(subst_unit_check(pins.full, 3).verdict);
  CHECK(subst_unit_check(pins.discrete, 3).verdict);
  const auto cpins = opd::pinnings(comm_operad(3));
  CHECK(subst_unit_check(cpins.groupoid, 3).verdict);
}

TEST_CASE("regular_pattern_check agrees across criteria on subst_free output") {
  const auto p = one_binary_generator(3);
  const auto tau = subst_free(opd::pinnings(p).groupoid, 3);
  const auto report = regular_pattern_check(tau);  // would throw on disagreement
  CHECK(report.verdict);
}

TEST_CASE("feynman_check") {
  const auto p = one_binary_generator(3);
  const auto pins = opd::pinnings(p);
  CHECK(feynman_check(subst_free(pins.groupoid, 3)).verdict);

  // Full pinning of an operad with a non-invertible unary op: not Feynman.
  auto w = CategoryBuilder().object("x").object("y").arrow("f", "x", "y").build();
  const auto wpins = opd::pinnings(opd::operad_of_category(w, 2));
  const auto tau_full = subst_free(wpins.full, 2);
  const auto report = feynman_check(tau_full);
  CHECK_FALSE(report.verdict);
  CHECK(report.witness.at("law") == "pin category is not a groupoid");

  // Discrete pinning of an operad with a non-identity iso unary op: the iso
  // core of M has isomorphisms that do not come from S C.
  auto g = CategoryBuilder()
               .object("x")
               .object("y")
               .arrow("u", "x", "y")
               .arrow("v", "y", "x")
               .compose("v", "u", "id_x")
               .compose("u", "v", "id_y")
               .build();
  const auto gpins = opd::pinnings(opd::operad_of_category(g, 2));
  const auto tau_disc = subst_free(gpins.discrete, 2);
  CHECK_FALSE(feynman_check(tau_disc).verdict);
  // The groupoid pinning of the same operad is Feynman.
  CHECK(feynman_check(subst_free(gpins.groupoid, 2)).verdict);
}

TEST_CASE("roundtrip reports") {
  const auto p = one_binary_generator(3);
  const auto pins = opd::pinnings(p);
  CHECK(roundtrip_substitude(pins.groupoid, 3).verdict);
  const auto tau = subst_free(pins.groupoid, 3);
  CHECK(roundtrip_pinned(tau).verdict);
}

TEST_CASE("mutants flip hereditary but stay valid") {
  const auto p = one_binary_generator(3);
  const auto tau = subst_free(opd::pinnings(p).groupoid, 3);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto mutant = testkit::mutate_break_hereditary(tau, seed);
    CHECK(smc::validate_smc(*mutant.target).verdict);
    const auto hered = hereditary_check(mutant);
    CHECK_FALSE(hered.verdict);
    // The witness re-verifies: a missed morphism really has no preimage, a
    // collision really is one (checked by hereditary_core itself; here we
    // check the shape).
    CHECK((hered.witness.at("kind") == "collision" ||
           hered.witness.at("kind") == "not-surjective"));
  }
}

TEST_CASE("hereditary and exactness agree on mutants (Prop 3.11 at desk scale)") {
  const auto p = one_binary_generator(3);
  const auto tau = subst_free(opd::pinnings(p).groupoid, 3);
  const auto mutant = testkit::mutate_break_hereditary(tau, 7);
  // regular_pattern_check throws internal_error on disagreement.
  const auto report = regular_pattern_check(mutant);
  CHECK_FALSE(report.verdict);
}

TEST_CASE("exactness via the generic square check matches the direct check on a mutant") {
  // Cross-validation of the normalised-factorisation reduction at bound 2:
  // materialise the coherence square and compare verdicts, on a positive and
  // on a mutated negative.
  auto c = CategoryBuilder().object("x").build();
  const auto tau = smc::identity_pinning(c, 2);
  {
    const auto direct = smc::monoidal_exactness_check(tau);
    const auto square = cat::exact_square_check(smc::monoidal_coherence_square(tau));
    CHECK(direct.verdict == square.verdict);
    CHECK(direct.verdict);
  }
  {
    const auto mutant = testkit::mutate_break_hereditary(tau, 3);
    const auto direct = smc::monoidal_exactness_check(mutant);
    const auto square = cat::exact_square_check(smc::monoidal_coherence_square(mutant));
    CHECK(direct.verdict == square.verdict);
    CHECK_FALSE(direct.verdict);
  }
}

TEST_CASE("comma condition agrees with feynman on groupoid-pinned instances") {
  const auto p = one_binary_generator(2);
  const auto pins = opd::pinnings(p);
  const auto tau = subst_free(pins.groupoid, 2);
  const auto feyn = feynman_check(tau);
  const auto comma = comma_condition_check(tau);
  CHECK(feyn.verdict == comma.verdict);
  CHECK(comma.verdict);

  const auto mutant = testkit::mutate_break_hereditary(tau, 11);
  const auto feyn2 = feynman_check(mutant);
  const auto comma2 = comma_condition_check(mutant);
  CHECK(feyn2.verdict == comma2.verdict);
  CHECK_FALSE(comma2.verdict);
}

TEST_CASE("algebra correspondence on tiny instances") {
  // Substitude: groupoid pinning of Comm at arity 2; W = F Comm at bound 2;
  // tautological carrier.
  const auto cm = comm_operad(2);
  const auto pins = opd::pinnings(cm);
  const auto hf = hermida_free(cm, 2);
  std::vector<int> carrier_obj{0};
  std::vector<int> carrier_arrow{hf.smc->identity[static_cast<size_t>(hf.smc->object_of({0}))]};
  const auto report =
      algebra_correspondence_check(pins.groupoid, hf.smc, carrier_obj, carrier_arrow, 2);
  CHECK(report.verdict);

  // The tautological action induces the identity functor.
  adj::AlgebraData a;
  a.phi = pins.groupoid;
  a.target = hf.smc;
  a.carrier_obj = carrier_obj;
  a.carrier_arrow = carrier_arrow;
  a.action.resize(static_cast<size_t>(cm->num_ops()));
  for (int o = 0; o < cm->num_ops(); ++o) {
    const auto& op = cm->ops[static_cast<size_t>(o)];
    const perm::FinFunction alpha(op.arity(), 1,
                                  std::vector<int>(static_cast<size_t>(op.arity()), 1));
    a.action[static_cast<size_t>(o)] =
        hf.mor_of(hf.smc->object_of(op.profile), alpha, {o});
  }
  CHECK(validate_algebra(a).verdict);
  const auto f = algebra_functor(a, 2);
  CHECK(validate_algebra_functor(f).verdict);
  for (int mor = 0; mor < f.free->smc->num_mors(); ++mor)
    CHECK(f.mor_map[static_cast<size_t>(mor)] == mor);
}
