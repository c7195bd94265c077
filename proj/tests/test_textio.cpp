#include <doctest.h>

#include "opdkit/adjunctions.hpp"
#include "opdkit/testkit.hpp"
#include "opdkit/textio.hpp"

using namespace opdkit;
using namespace opdkit::io;

TEST_CASE("category files parse, validate and round-trip") {
  const std::string text = R"(# the walking arrow with a retract
category walking
objects: x y
arrow f: x -> y
arrow g: y -> x
compose g f = id_x
compose f g = id_y
)";
  const auto m = parse_model(text);
  CHECK(m.kind == Model::Kind::category);
  CHECK(m.category->num_objects() == 2);
  CHECK(m.category->num_arrows() == 4);
  const auto printed = print_model(m);
  const auto reparsed = parse_model(printed);
  CHECK(print_model(reparsed) == printed);
}

TEST_CASE("category file with a typing error") {
  const std::string text = R"(category bad
objects: x y
arrow f: x -> y
arrow h: x -> y
compose h f = h
)";
  CHECK_THROWS_AS(parse_model(text), input_error);
}

TEST_CASE("syntax errors carry line numbers") {
  try {
    parse_model("category c\nobjects: x\narrow f x -> x\n");
    FAIL("expected a parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("incomplete tables surface as validation errors") {
  // Missing composite g.f.
  const std::string text = R"(category half
objects: x
arrow f: x -> x
)";
  CHECK_THROWS_AS(parse_model(text), validation_error);
}

TEST_CASE("operad files round-trip") {
  const std::string text = R"(operad pair arity 2
colours: c
op b: ( c c ) -> c
op bs: ( c c ) -> c
act b perm 2 1 = bs
act bs perm 2 1 = b
subst b [ id_c id_c ] = b
subst bs [ id_c id_c ] = bs
)";
  const auto m = parse_model(text);
  CHECK(m.kind == Model::Kind::operad);
  CHECK(m.operad->num_ops() == 3);
  const auto printed = print_model(m);
  const auto reparsed = parse_model(printed);
  CHECK(print_model(reparsed) == printed);
}

TEST_CASE("omitted act entries complete only when forced") {
  // A single binary op with no act line: the entry act(b, swap) is forced
  // because the multihom is a singleton.
  const std::string forced = R"(operad one arity 2
colours: c
op b: ( c c ) -> c
subst b [ id_c id_c ] = b
)";
  const auto m = parse_model(forced);
  CHECK(m.operad->act(m.operad->op_index("b"), perm::Permutation({2, 1})) ==
        m.operad->op_index("b"));

  // Two parallel binary ops: completion is not forced, validation reports
  // the incomplete table.
  const std::string open = R"(operad two arity 2
colours: c
op b: ( c c ) -> c
op b2: ( c c ) -> c
subst b [ id_c id_c ] = b
subst b2 [ id_c id_c ] = b2
)";
  try {
    parse_model(open);
    FAIL("expected a validation_error");
  } catch (const validation_error& e) {
    CHECK(e.report.at("witness").at("law") == "act table incomplete");
  }
}

TEST_CASE("generated structures round-trip through the printer") {
  testkit::GenConfig cfg;
  cfg.max_objects = 3;
  cfg.max_arrows = 3;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    cfg.seed = seed;
    const auto c = testkit::gen_category(cfg);
    const auto printed = print_model(model_of_category(c, "g" + std::to_string(seed)));
    const auto reparsed = parse_model(printed);
    CHECK(print_model(reparsed) == printed);
    CHECK(reparsed.category->num_arrows() == c->num_arrows());
  }
  cfg.max_colours = 2;
  cfg.max_ops = 1;
  cfg.arity_bound = 2;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    cfg.seed = seed;
    const auto p = testkit::gen_operad(cfg);
    const auto printed = print_model(model_of_operad(p, "p" + std::to_string(seed)));
    const auto reparsed = parse_model(printed);
    CHECK(print_model(reparsed) == printed);
    CHECK(reparsed.operad->num_ops() == p->num_ops());
  }
}

TEST_CASE("smc and pinned files round-trip") {
  auto c = cat::CategoryBuilder().object("x").arrow("s", "x", "x").compose("s", "s", "id_x").build();
  const auto tau = smc::identity_pinning(c, 2);
  const auto printed = print_model(model_of_pinned(tau, "idpin"));
  const auto reparsed = parse_model(printed);
  CHECK(reparsed.kind == Model::Kind::pinned);
  CHECK(print_model(reparsed) == printed);
  REQUIRE(reparsed.pinned.has_value());
  CHECK(adj::hereditary_check(*reparsed.pinned).verdict);

  const auto sm = print_model(model_of_smc(tau.target, "free"));
  const auto sm2 = parse_model(sm);
  CHECK(print_model(sm2) == sm);
  CHECK(smc::validate_smc(*sm2.smc).verdict);
}

TEST_CASE("substitude files round-trip and drive the checkers") {
  const auto p = opd::comm_operad(3);
  const auto pins = opd::pinnings(p);
  const auto printed = print_model(model_of_substitude(pins.groupoid, "comm"));
  const auto reparsed = parse_model(printed);
  CHECK(reparsed.kind == Model::Kind::substitude);
  CHECK(print_model(reparsed) == printed);
  REQUIRE(reparsed.substitude.has_value());
  CHECK(opd::is_substitude(*reparsed.substitude));
  CHECK(adj::subst_unit_check(*reparsed.substitude, 3).verdict);
}
