#include <doctest.h>

#include "opdkit/fincat.hpp"

using namespace opdkit;
using namespace opdkit::cat;

namespace {

// Two objects, one non-identity arrow x -> y.
CatPtr walking_arrow() {
  return CategoryBuilder().object("x").object("y").arrow("f", "x", "y").build();
}

// Two objects, two parallel arrows x -> y (hom(x,.) sizes (1,2)).
CatPtr parallel_pair() {
  return CategoryBuilder().object("x").object("y").arrow("f", "x", "y").arrow("g", "x", "y").build();
}

// Contractible groupoid on two objects: x ~= y with a single iso pair.
CatPtr chaotic_pair() {
  return CategoryBuilder()
      .object("x")
      .object("y")
      .arrow("u", "x", "y")
      .arrow("v", "y", "x")
      .compose("v", "u", "id_x")
      .compose("u", "v", "id_y")
      .build();
}

LaxSquare identity_square(const CatPtr& c) {
  LaxSquare s;
  s.p = identity_functor(c);
  s.q = identity_functor(c);
  s.f = identity_functor(c);
  s.g = identity_functor(c);
  s.phi = identity_nat_trans(identity_functor(c));
  return s;
}

}  // namespace

TEST_CASE("validate_category accepts the basics") {
  CHECK(validate_category(*discrete_category({"a", "b", "c"})).verdict);
  CHECK(validate_category(*walking_arrow()).verdict);
  CHECK(validate_category(*chaotic_pair()).verdict);

  // Monoid Z/2 as a one-object category.
  auto z2 = CategoryBuilder().object("*").arrow("s", "*", "*").compose("s", "s", "id_*").build();
  CHECK(validate_category(*z2).verdict);
}

TEST_CASE("validate_category rejects a non-associative table") {
  // One object, arrows {id, s, t} with s.s = t, s.t = id, t.s = s, t.t = t:
  // (s.s).s = t.s = s but s.(s.s) = s.t = id.
  std::vector<std::string> obj{"*"};
  std::vector<Arrow> arr{{"id_*", 0, 0}, {"s", 0, 0}, {"t", 0, 0}};
  auto c = FinCategory::make(obj, arr, {0}, [](int g, int f) {
    if (g == 1 && f == 1) return 2;
    if (g == 1 && f == 2) return 0;
    if (g == 2 && f == 1) return 1;
    return 2;
  });
  const auto report = validate_category(*c);
  CHECK_FALSE(report.verdict);
  CHECK(report.witness.at("law") == "associativity");
}

TEST_CASE("validate_category reports incomplete tables") {
  std::vector<std::string> obj{"*"};
  std::vector<Arrow> arr{{"id_*", 0, 0}, {"s", 0, 0}};
  auto c = FinCategory::make(obj, arr, {0}, [](int, int) { return -1; });
  const auto report = validate_category(*c);
  CHECK_FALSE(report.verdict);
  CHECK(report.witness.at("law") == "composition table incomplete");
}

TEST_CASE("gabriel factorisation") {
  // Identity functor: io and ff parts both isomorphisms.
  {
    auto c = walking_arrow();
    const auto gf = gabriel_factor_functor(identity_functor(c));
    CHECK(validate_category(*gf.mid).verdict);
    CHECK(functor_props(gf.io).identity_on_objects);
    CHECK(functor_props(gf.ff).fully_faithful);
    CHECK(gf.mid->num_arrows() == c->num_arrows());
  }
  // Discrete 2-object category into the terminal category: mid has 2 objects
  // and exactly one arrow in every hom (hom(a,b) = hom(*,*) = {id}).
  {
    auto d = discrete_category({"a", "b"});
    auto t = terminal_category();
    FinFunctor F;
    F.source = d;
    F.target = t;
    F.object_map = {0, 0};
    F.arrow_map = {0, 0};
    REQUIRE(validate_functor(F).verdict);
    const auto gf = gabriel_factor_functor(F);
    CHECK(validate_category(*gf.mid).verdict);
    CHECK(gf.mid->num_objects() == 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(gf.mid->hom(a, b).size() == 1);
    CHECK(validate_functor(gf.io).verdict);
    CHECK(validate_functor(gf.ff).verdict);
    CHECK(functor_props(gf.ff).fully_faithful);
    const auto hg = compose_functors(gf.ff, gf.io);
    CHECK(hg.object_map == F.object_map);
    CHECK(hg.arrow_map == F.arrow_map);
  }
  // Fully faithful input: io part is an isomorphism of categories.
  {
    auto c = chaotic_pair();
    const auto gf = gabriel_factor_functor(identity_functor(c));
    const auto props = functor_props(gf.io);
    CHECK(props.fully_faithful);
    CHECK(props.bijective_on_objects);
  }
}

TEST_CASE("iso_core") {
  {
    auto g = chaotic_pair();
    const auto core = iso_core(g);
    CHECK(core.core->num_arrows() == g->num_arrows());
    CHECK(is_groupoid(*core.core));
  }
  {
    auto c = walking_arrow();
    const auto core = iso_core(c);
    CHECK(core.core->num_arrows() == 2);  // just the identities
    CHECK(is_groupoid(*core.core));
  }
  // Explicit inverse pair retained next to a non-invertible idempotent.
  {
    auto c = CategoryBuilder()
                 .object("x")
                 .object("y")
                 .object("z")
                 .arrow("u", "x", "y")
                 .arrow("v", "y", "x")
                 .arrow("w", "z", "z")
                 .compose("v", "u", "id_x")
                 .compose("u", "v", "id_y")
                 .compose("w", "w", "w")
                 .build();
    REQUIRE(validate_category(*c).verdict);
    const auto core = iso_core(c);
    CHECK(core.core->num_arrows() == 5);  // id_x, id_y, id_z, u, v
    const auto core2 = iso_core(core.core);
    CHECK(core2.core->num_arrows() == core.core->num_arrows());
    CHECK(validate_functor(core.inclusion).verdict);
  }
}

TEST_CASE("comma categories") {
  {
    auto t = terminal_category();
    const auto cc = comma_category(identity_functor(t), identity_functor(t));
    CHECK(cc.comma->num_objects() == 1);
    CHECK(cc.comma->num_arrows() == 1);
    CHECK(validate_category(*cc.comma).verdict);
  }
  // id down id is the arrow category: object count = arrow count.
  {
    auto c = chaotic_pair();
    const auto cc = comma_category(identity_functor(c), identity_functor(c));
    CHECK(cc.comma->num_objects() == c->num_arrows());
    CHECK(validate_category(*cc.comma).verdict);
    CHECK(validate_functor(cc.proj1).verdict);
    CHECK(validate_functor(cc.proj2).verdict);
    CHECK(validate_nat_trans(cc.gamma).verdict);
  }
  // Coslice under x of the parallel pair: 3 objects.
  {
    auto c = parallel_pair();
    auto pt = terminal_category();
    FinFunctor x_pick;
    x_pick.source = pt;
    x_pick.target = c;
    const int x = c->object_index("x");
    x_pick.object_map = {x};
    x_pick.arrow_map = {c->identity[static_cast<size_t>(x)]};
    REQUIRE(validate_functor(x_pick).verdict);
    const auto cc = comma_category(x_pick, identity_functor(c));
    CHECK(cc.comma->num_objects() == 3);
    CHECK(validate_category(*cc.comma).verdict);
  }
}

TEST_CASE("connectedness") {
  CHECK_FALSE(is_connected(*discrete_category({})));
  CHECK(is_connected(*terminal_category()));
  CHECK_FALSE(is_connected(*discrete_category({"a", "b"})));
  CHECK(is_connected(*walking_arrow()));
  auto c = CategoryBuilder().object("a").object("b").object("c").arrow("f", "a", "b").build();
  CHECK_FALSE(is_connected(*c));
  CHECK(connected_components(*c) == std::vector<int>{0, 0, 1});
}

TEST_CASE("functor_props") {
  auto c = chaotic_pair();
  const auto props = functor_props(identity_functor(c));
  CHECK(props.fully_faithful);
  CHECK(props.essentially_surjective);
  CHECK(props.bijective_on_objects);
  CHECK(props.identity_on_objects);
  CHECK(props.equivalence);

  // Skeleton inclusion of the contractible 2-object groupoid.
  {
    auto pt = terminal_category();
    FinFunctor inc;
    inc.source = pt;
    inc.target = c;
    inc.object_map = {0};
    inc.arrow_map = {c->identity[0]};
    REQUIRE(validate_functor(inc).verdict);
    const auto p = functor_props(inc);
    CHECK(p.equivalence);
    CHECK_FALSE(p.bijective_on_objects);
  }

  // Constant functor from 2 discrete objects: hom inflation.
  {
    auto d = discrete_category({"a", "b"});
    auto t = terminal_category();
    FinFunctor F;
    F.source = d;
    F.target = t;
    F.object_map = {0, 0};
    F.arrow_map = {0, 0};
    const auto p = functor_props(F);
    CHECK_FALSE(p.fully_faithful);
    CHECK(p.essentially_surjective);
    CHECK_FALSE(p.equivalence);
  }
}

TEST_CASE("exact_square_check: identity squares are exact") {
  for (const auto& c : {terminal_category(), walking_arrow(), parallel_pair(), chaotic_pair()}) {
    const auto s = identity_square(c);
    REQUIRE(validate_lax_square(s).verdict);
    CHECK(exact_square_check(s).verdict);
  }
}

TEST_CASE("exact_square_check: comma squares are exact") {
  auto c = parallel_pair();
  auto g = chaotic_pair();
  FinFunctor F;  // collapse the chaotic pair onto x
  F.source = g;
  F.target = c;
  const int x = c->object_index("x");
  const int idx = c->identity[static_cast<size_t>(x)];
  F.object_map = {x, x};
  F.arrow_map = {idx, idx, idx, idx};
  REQUIRE(validate_functor(F).verdict);

  for (const auto& G : {identity_functor(c), F}) {
    const auto cc = comma_category(F, G);
    LaxSquare s;
    s.p = cc.proj1;
    s.q = cc.proj2;
    s.f = F;
    s.g = G;
    s.phi = cc.gamma;
    REQUIRE(validate_lax_square(s).verdict);
    CHECK(exact_square_check(s).verdict);
  }
}

TEST_CASE("exact_square_check: empty middle with existing gamma fails") {
  auto e = discrete_category({});
  auto t = terminal_category();
  FinFunctor from_empty;
  from_empty.source = e;
  from_empty.target = t;
  LaxSquare s;
  s.p = from_empty;
  s.q = from_empty;
  s.f = identity_functor(t);
  s.g = identity_functor(t);
  s.phi.source = compose_functors(s.f, s.p);
  s.phi.target = compose_functors(s.g, s.q);
  REQUIRE(validate_lax_square(s).verdict);
  const auto report = exact_square_check(s);
  CHECK_FALSE(report.verdict);
  CHECK(report.witness.at("reason") == "empty factorisation category");
}

TEST_CASE("s_construction: bounded free symmetric monoidal category") {
  auto t = terminal_category();
  const auto s = s_construction(t, 3);
  CHECK(s.cat->num_objects() == 4);  // (), (*), (*,*), (*,*,*)
  REQUIRE(validate_category(*s.cat).verdict);
  const int triple = s.object_of({0, 0, 0});
  CHECK(s.cat->hom(triple, triple).size() == 6);

  // Hom sizes match the labelled-permutation formula on the walking arrow.
  auto w = walking_arrow();
  const auto sw = s_construction(w, 3);
  REQUIRE(validate_category(*sw.cat).verdict);
  for (int a = 0; a < sw.cat->num_objects(); ++a) {
    for (int b = 0; b < sw.cat->num_objects(); ++b) {
      const auto& xs = sw.object_seqs[static_cast<size_t>(a)];
      const auto& ys = sw.object_seqs[static_cast<size_t>(b)];
      size_t expected = 0;
      if (xs.size() == ys.size()) {
        for (const auto& rho : perm::all_permutations(static_cast<int>(xs.size()))) {
          size_t prod = 1;
          for (int i = 1; i <= static_cast<int>(xs.size()); ++i)
            prod *= w->hom(xs[static_cast<size_t>(i) - 1], ys[static_cast<size_t>(rho(i)) - 1]).size();
          expected += prod;
        }
      }
      CHECK(sw.cat->hom(a, b).size() == expected);
    }
  }
}

TEST_CASE("S preserves exact squares (bounded)") {
  auto c = walking_arrow();
  {
    const auto sq = s_image_square(identity_square(c), 2);
    REQUIRE(validate_lax_square(sq).verdict);
    CHECK(exact_square_check(sq).verdict);
  }
  {
    const auto cc = comma_category(identity_functor(c), identity_functor(c));
    LaxSquare sq;
    sq.p = cc.proj1;
    sq.q = cc.proj2;
    sq.f = identity_functor(c);
    sq.g = identity_functor(c);
    sq.phi = cc.gamma;
    const auto ssq = s_image_square(sq, 2);
    REQUIRE(validate_lax_square(ssq).verdict);
    CHECK(exact_square_check(ssq).verdict);
  }
}
