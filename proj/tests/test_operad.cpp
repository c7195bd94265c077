#include <doctest.h>

#include "opdkit/operad.hpp"

using namespace opdkit;
using namespace opdkit::opd;
using opdkit::cat::CategoryBuilder;

namespace {

// Free symmetric operad on one binary generator, truncated at arity 2:
// ops are the unit, b and its transposition bs.
OpdPtr one_binary_generator() {
  auto p = std::make_shared<FinOperad>();
  p->init({"c"}, 2);
  const int u = p->add_op("u", {0}, 0);
  const int b = p->add_op("b", {0, 0}, 0);
  const int bs = p->add_op("bs", {0, 0}, 0);
  p->set_unit(0, u);
  const perm::Permutation swap({2, 1});
  p->set_act(u, perm::Permutation::id(1), u);
  for (int o : {b, bs}) p->set_act(o, perm::Permutation::id(2), o);
  p->set_act(b, swap, bs);
  p->set_act(bs, swap, b);
  p->set_subst(u, {u}, u);
  p->set_subst(u, {b}, b);
  p->set_subst(u, {bs}, bs);
  for (int o : {b, bs}) p->set_subst(o, {u, u}, o);
  p->freeze();
  return p;
}

}  // namespace

TEST_CASE("validate_operad accepts Comm and unary operads") {
  CHECK(validate_operad(*comm_operad(3)).verdict);
  auto c = CategoryBuilder().object("x").object("y").arrow("f", "x", "y").build();
  CHECK(validate_operad(*operad_of_category(c)).verdict);
  CHECK(validate_operad(*one_binary_generator()).verdict);
}

TEST_CASE("validate_operad rejects a non-action act table") {
  auto p = std::make_shared<FinOperad>();
  p->init({"c"}, 2);
  const int u = p->add_op("u", {0}, 0);
  const int b = p->add_op("b", {0, 0}, 0);
  const int bs = p->add_op("bs", {0, 0}, 0);
  p->set_unit(0, u);
  const perm::Permutation swap({2, 1});
  p->set_act(u, perm::Permutation::id(1), u);
  for (int o : {b, bs}) p->set_act(o, perm::Permutation::id(2), o);
  p->set_act(b, swap, bs);
  p->set_act(bs, swap, bs);  // breaks act(act(b,s),s) = b
  p->set_subst(u, {u}, u);
  p->set_subst(u, {b}, b);
  p->set_subst(u, {bs}, bs);
  for (int o : {b, bs}) p->set_subst(o, {u, u}, o);
  p->freeze();
  const auto report = validate_operad(*p);
  CHECK_FALSE(report.verdict);
  CHECK(report.witness.at("law") == "act right action");
}

TEST_CASE("operad_of_category") {
  auto t = cat::terminal_category();
  const auto p = operad_of_category(t);
  CHECK(p->colours.size() == 1);
  CHECK(p->num_ops() == 1);
  auto d = cat::discrete_category({"a", "b", "c"});
  const auto pd = operad_of_category(d);
  CHECK(pd->num_ops() == 3);
  for (int o = 0; o < pd->num_ops(); ++o)
    CHECK(pd->ops[static_cast<size_t>(o)].arity() == 1);
  CHECK(validate_operad(*pd).verdict);
}

TEST_CASE("unary_cores") {
  {
    const auto cores = unary_cores(comm_operad(3));
    CHECK(cores.p1->num_objects() == 1);
    CHECK(cores.p1->num_arrows() == 1);
    CHECK(cores.p1_iso->num_arrows() == 1);
  }
  {
    auto g = CategoryBuilder()
                 .object("x")
                 .object("y")
                 .arrow("u", "x", "y")
                 .arrow("v", "y", "x")
                 .compose("v", "u", "id_x")
                 .compose("u", "v", "id_y")
                 .build();
    const auto cores = unary_cores(operad_of_category(g));
    CHECK(cores.p1->num_arrows() == 4);
    CHECK(cores.p1_iso->num_arrows() == 4);
    CHECK(cat::is_groupoid(*cores.p1_iso));
  }
  {
    auto w = CategoryBuilder().object("x").object("y").arrow("f", "x", "y").build();
    const auto cores = unary_cores(operad_of_category(w));
    CHECK(cores.p1->num_arrows() == 3);
    CHECK(cores.p1_iso->num_arrows() == 2);
  }
}

TEST_CASE("end_operad of the free SMC on the terminal category") {
  auto t = cat::terminal_category();
  const auto fs = smc::free_smc(t, 3);
  const auto end = end_operad(fs.smc);
  CHECK(validate_operad(*end.operad).verdict);
  CHECK(end.operad->multihom({0}, 0).size() == 1);
  CHECK(end.operad->multihom({0, 0}, 0).empty());
  CHECK(end.operad->multihom({}, 0).empty());
  CHECK(end.operad->multihom({0, 0, 0}, 0).empty());
}

TEST_CASE("end_operad of a free SMC over a category with isos") {
  auto g = CategoryBuilder()
               .object("x")
               .object("y")
               .arrow("u", "x", "y")
               .arrow("v", "y", "x")
               .compose("v", "u", "id_x")
               .compose("u", "v", "id_y")
               .build();
  const auto fs = smc::free_smc(g, 2);
  const auto end = end_operad(fs.smc);
  CHECK(validate_operad(*end.operad).verdict);
  CHECK(end.operad->multihom({0}, 1).size() == 1);
}

TEST_CASE("gabriel_factor_operad") {
  auto p = one_binary_generator();
  {
    const auto gab = gabriel_factor_operad(identity_operad_map(p));
    CHECK(validate_operad(*gab.mid).verdict);
    CHECK(validate_operad_map(gab.io).verdict);
    CHECK(validate_operad_map(gab.ff).verdict);
    CHECK(operad_map_fully_faithful(gab.ff));
    CHECK(operad_map_fully_faithful(gab.io));
    CHECK(gab.mid->num_ops() == p->num_ops());
  }
  {
    auto d = operad_of_category(cat::discrete_category({"a", "b"}));
    auto cm = comm_operad(1);
    OperadMap f;
    f.source = d;
    f.target = cm;
    f.colour_map = {0, 0};
    f.op_map = {cm->unit[0], cm->unit[0]};
    REQUIRE(validate_operad_map(f).verdict);
    const auto gab = gabriel_factor_operad(f);
    CHECK(validate_operad(*gab.mid).verdict);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(gab.mid->multihom({a}, b).size() == 1);
    const auto hg = compose_operad_maps(gab.ff, gab.io);
    CHECK(hg.colour_map == f.colour_map);
    CHECK(hg.op_map == f.op_map);
  }
}

TEST_CASE("coreflect and pinnings") {
  auto p = one_binary_generator();
  const auto pins = pinnings(p);
  CHECK(is_substitude(pins.discrete));
  CHECK(is_substitude(pins.groupoid));
  CHECK(is_substitude(pins.full));
  CHECK(validate_pinned_operad(pins.discrete).verdict);
  CHECK(validate_pinned_operad(pins.groupoid).verdict);
  CHECK(validate_pinned_operad(pins.full).verdict);

  {
    const auto cpins = pinnings(comm_operad(2));
    CHECK(cpins.discrete.pins->num_arrows() == 1);
    CHECK(cpins.groupoid.pins->num_arrows() == 1);
    CHECK(cpins.full.pins->num_arrows() == 1);
  }

  CHECK(normal_substitude_check(pins.full));
  CHECK(normal_substitude_check(pins.discrete));  // only-unit unary part here

  {
    const auto co = coreflect(pins.groupoid);
    CHECK(is_substitude(co.substitude));
    CHECK(validate_operad(*co.substitude.body).verdict);
    CHECK(validate_operad_map(co.counit).verdict);
    CHECK(operad_map_fully_faithful(co.counit));
    CHECK(co.substitude.body->num_ops() == p->num_ops());
  }

  {
    auto w = CategoryBuilder().object("x").object("y").arrow("f", "x", "y").build();
    const auto wp = pinnings(operad_of_category(w));
    CHECK_FALSE(normal_substitude_check(wp.groupoid));
    CHECK(normal_substitude_check(wp.full));
    auto g = CategoryBuilder()
                 .object("x")
                 .object("y")
                 .arrow("u", "x", "y")
                 .arrow("v", "y", "x")
                 .compose("v", "u", "id_x")
                 .compose("u", "v", "id_y")
                 .build();
    const auto gp = pinnings(operad_of_category(g));
    CHECK(gp.groupoid.pins->num_arrows() > gp.discrete.pins->num_arrows());
  }
}

TEST_CASE("coreflect base-changes to the pinned colours") {
  auto c2 = cat::discrete_category({"a", "b"});
  auto p = operad_of_category(c2);
  PinnedOperad po;
  po.pins = cat::discrete_category({"z"});
  po.body = p;
  po.colour_map = {0};
  po.arrow_map = {p->unit[0]};
  REQUIRE(validate_pinned_operad(po).verdict);
  const auto co = coreflect(po);
  CHECK(co.substitude.body->colours == std::vector<std::string>{"z"});
  CHECK(co.substitude.body->multihom({0}, 0).size() == p->multihom({0}, 0).size());
  CHECK(operad_map_fully_faithful(co.counit));
}
