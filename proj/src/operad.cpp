#include "opdkit/operad.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace opdkit::opd {

namespace {

json op_json(const FinOperad& p, int op) {
  const auto& o = p.ops[static_cast<size_t>(op)];
  return json{{"op", o.name},
              {"profile", profile_name(o.profile, p.colours)},
              {"output", p.colours[static_cast<size_t>(o.output)]}};
}

// Tuples from a list of candidate sets (odometer); empty product yields {}.
void for_each_tuple(const std::vector<const std::vector<int>*>& choices,
                    const std::function<void(const std::vector<int>&)>& visit) {
  for (const auto* c : choices)
    if (c->empty()) return;
  std::vector<size_t> pick(choices.size(), 0);
  for (;;) {
    std::vector<int> tuple(choices.size());
    for (size_t i = 0; i < choices.size(); ++i) tuple[i] = (*choices[i])[pick[i]];
    visit(tuple);
    bool done = true;
    for (size_t i = 0; i < choices.size(); ++i) {
      if (++pick[i] < choices[i]->size()) {
        done = false;
        break;
      }
      pick[i] = 0;
    }
    if (done) break;
  }
}

}  // namespace

std::string profile_name(const Profile& p, const std::vector<std::string>& colours) {
  std::string n = "(";
  for (size_t k = 0; k < p.size(); ++k) n += (k ? "," : "") + colours[static_cast<size_t>(p[k])];
  return n + ")";
}

void for_each_inner_tuple(const FinOperad& p, const Profile& outputs, int budget,
                          const std::function<void(const std::vector<int>&, int)>& visit) {
  const int n = static_cast<int>(outputs.size());
  std::vector<int> tuple(static_cast<size_t>(n));
  std::function<void(int, int)> rec = [&](int slot, int used) {
    if (slot == n) {
      visit(tuple, used);
      return;
    }
    // Remaining slots need at least 0 arity each (nullary ops allowed).
    const auto& groups = p.ops_with_output(outputs[static_cast<size_t>(slot)]);
    for (int arity = 0; arity < static_cast<int>(groups.size()); ++arity) {
      if (used + arity > budget) break;
      for (int op : groups[static_cast<size_t>(arity)]) {
        tuple[static_cast<size_t>(slot)] = op;
        rec(slot + 1, used + arity);
      }
    }
  };
  rec(0, 0);
}

std::uint64_t count_all_inner_tuples(const FinOperad& p, const Profile& outputs) {
  std::uint64_t total = 1;
  for (int c : outputs) {
    std::uint64_t candidates = 0;
    for (const auto& group : p.ops_with_output(c)) candidates += group.size();
    if (candidates != 0 && total > (std::uint64_t{1} << 62) / candidates)
      return std::uint64_t{1} << 62;
    total *= candidates;
  }
  return total;
}

int FinOperad::subst(int outer, const std::vector<int>& inners) const {
  auto it = subst_.find({outer, inners});
  return it == subst_.end() ? -1 : it->second;
}

int FinOperad::act(int op, const perm::Permutation& rho) const {
  auto it = act_.find({op, rho.images});
  return it == act_.end() ? -1 : it->second;
}

const std::vector<int>& FinOperad::multihom(const Profile& profile, int output) const {
  static const std::vector<int> empty;
  auto it = homs_.find({profile, output});
  return it == homs_.end() ? empty : it->second;
}

void FinOperad::init(std::vector<std::string> colour_names, int bound) {
  colours = std::move(colour_names);
  arity_bound = bound;
  unit.assign(colours.size(), -1);
}

int FinOperad::add_op(std::string name, Profile profile, int output) {
  if (static_cast<int>(profile.size()) > arity_bound)
    throw input_error("operation " + name + " exceeds the arity bound");
  const int o = num_ops();
  ops.push_back(OperadOp{std::move(name), std::move(profile), output});
  return o;
}

void FinOperad::set_subst(int outer, const std::vector<int>& inners, int result) {
  subst_[{outer, inners}] = result;
}

void FinOperad::set_act(int op, const perm::Permutation& rho, int result) {
  act_[{op, rho.images}] = result;
}

void FinOperad::freeze() {
  homs_.clear();
  keys_.clear();
  hom_pos_.assign(ops.size(), -1);
  by_output_.assign(colours.size(),
                    std::vector<std::vector<int>>(static_cast<size_t>(arity_bound) + 1));
  for (int o = 0; o < num_ops(); ++o)
    by_output_[static_cast<size_t>(ops[static_cast<size_t>(o)].output)]
              [static_cast<size_t>(ops[static_cast<size_t>(o)].arity())].push_back(o);
  for (int o = 0; o < num_ops(); ++o) {
    auto key = std::make_pair(ops[static_cast<size_t>(o)].profile, ops[static_cast<size_t>(o)].output);
    auto it = homs_.find(key);
    if (it == homs_.end()) {
      keys_.push_back(key);
      it = homs_.emplace(key, std::vector<int>{}).first;
    }
    hom_pos_[static_cast<size_t>(o)] = static_cast<int>(it->second.size());
    it->second.push_back(o);
  }
}

int FinOperad::colour_index(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(colours.size()); ++i)
    if (colours[static_cast<size_t>(i)] == name) return i;
  throw input_error("unknown colour: " + name);
}

int FinOperad::op_index(const std::string& name) const {
  for (int i = 0; i < num_ops(); ++i)
    if (ops[static_cast<size_t>(i)].name == name) return i;
  throw input_error("unknown operation: " + name);
}

CheckReport validate_operad(const FinOperad& p) {
  CheckReport r = CheckReport::pass("validate_operad", p.arity_bound);

  // Units exist with the singleton profile.
  for (size_t c = 0; c < p.colours.size(); ++c) {
    ++r.coverage.checked;
    const int u = p.unit[c];
    if (u < 0 || u >= p.num_ops())
      return CheckReport::fail(r.check, p.arity_bound,
                               json{{"law", "missing unit"}, {"colour", p.colours[c]}});
    const auto& op = p.ops[static_cast<size_t>(u)];
    if (op.profile != Profile{static_cast<int>(c)} || op.output != static_cast<int>(c))
      return CheckReport::fail(r.check, p.arity_bound,
                               json{{"law", "unit profile"}, {"colour", p.colours[c]}});
  }

  // Per-operation: unit laws and the action table.
  for (int o = 0; o < p.num_ops(); ++o) {
    const auto& op = p.ops[static_cast<size_t>(o)];
    const int n = op.arity();

    std::vector<int> units;
    units.reserve(static_cast<size_t>(n));
    for (int c : op.profile) units.push_back(p.unit[static_cast<size_t>(c)]);
    ++r.coverage.checked;
    if (p.subst(o, units) != o)
      return CheckReport::fail(r.check, p.arity_bound,
                               json{{"law", "right unit"}, {"op", op_json(p, o)}});
    ++r.coverage.checked;
    if (p.subst(p.unit[static_cast<size_t>(op.output)], {o}) != o)
      return CheckReport::fail(r.check, p.arity_bound,
                               json{{"law", "left unit"}, {"op", op_json(p, o)}});

    for (const auto& rho : perm::all_permutations(n)) {
      ++r.coverage.checked;
      const int ro = p.act(o, rho);
      if (ro < 0)
        return CheckReport::fail(r.check, p.arity_bound,
                                 json{{"law", "act table incomplete"},
                                      {"op", op_json(p, o)},
                                      {"perm", perm::to_string(rho)}});
      const auto& rop = p.ops[static_cast<size_t>(ro)];
      Profile expected(static_cast<size_t>(n));
      for (int i = 1; i <= n; ++i)
        expected[static_cast<size_t>(i) - 1] = op.profile[static_cast<size_t>(rho(i)) - 1];
      if (rop.profile != expected || rop.output != op.output)
        return CheckReport::fail(r.check, p.arity_bound,
                                 json{{"law", "act profile"},
                                      {"op", op_json(p, o)},
                                      {"perm", perm::to_string(rho)}});
      if (rho.is_identity() && ro != o)
        return CheckReport::fail(r.check, p.arity_bound,
                                 json{{"law", "act identity"}, {"op", op_json(p, o)}});
      for (const auto& rho2 : perm::all_permutations(n)) {
        ++r.coverage.checked;
        if (p.act(ro, rho2) != p.act(o, perm::after(rho, rho2)))
          return CheckReport::fail(r.check, p.arity_bound,
                                   json{{"law", "act right action"},
                                        {"op", op_json(p, o)},
                                        {"perms", json{perm::to_string(rho), perm::to_string(rho2)}}});
      }
    }
  }

  // Substitution instances: totality within bound, profile bookkeeping,
  // associativity and both equivariance laws.  Enumeration is arity-pruned;
  // out-of-bound tuples only enter the skipped statistic.
  for (int o = 0; o < p.num_ops(); ++o) {
    const auto& op = p.ops[static_cast<size_t>(o)];
    const int n = op.arity();
    std::uint64_t visited = 0;
    for_each_inner_tuple(p, op.profile, p.arity_bound, [&](const std::vector<int>& inners, int) {
      ++visited;
      Profile expected;
      for (int q : inners)
        expected.insert(expected.end(), p.ops[static_cast<size_t>(q)].profile.begin(),
                        p.ops[static_cast<size_t>(q)].profile.end());
      const int s = p.subst(o, inners);
      ++r.coverage.checked;
      if (!r.verdict) return;
      if (s < 0) {
        r.verdict = false;
        r.witness = json{{"law", "subst table incomplete"}, {"op", op_json(p, o)}};
        return;
      }
      const auto& sop = p.ops[static_cast<size_t>(s)];
      if (sop.profile != expected || sop.output != op.output) {
        r.verdict = false;
        r.witness = json{{"law", "subst profile"}, {"op", op_json(p, o)}};
        return;
      }

      // Outer equivariance: subst(act(o,rho), (psi_{rho i})_i)
      //   = act(subst(o, (psi_j)_j), block_perm(rho, permuted sizes)).
      for (const auto& rho : perm::all_permutations(n)) {
        ++r.coverage.checked;
        std::vector<int> permuted(static_cast<size_t>(n));
        std::vector<int> sizes(static_cast<size_t>(n));
        for (int i = 1; i <= n; ++i) {
          permuted[static_cast<size_t>(i) - 1] = inners[static_cast<size_t>(rho(i)) - 1];
          sizes[static_cast<size_t>(i) - 1] =
              p.ops[static_cast<size_t>(permuted[static_cast<size_t>(i) - 1])].arity();
        }
        const int lhs = p.subst(p.act(o, rho), permuted);
        const int rhs = p.act(s, perm::block_perm(rho, sizes));
        if (lhs != rhs || lhs < 0) {
          r.verdict = false;
          r.witness = json{{"law", "outer equivariance"},
                           {"op", op_json(p, o)},
                           {"perm", perm::to_string(rho)}};
          return;
        }
      }

      // Inner equivariance: subst(o, (act(psi_i, rho_i))) =
      //   act(subst(o, psi), block_sum(rho_i)); checked one slot at a time.
      for (int i = 0; i < n && r.verdict; ++i) {
        const int qi = inners[static_cast<size_t>(i)];
        const int k = p.ops[static_cast<size_t>(qi)].arity();
        for (const auto& rho : perm::all_permutations(k)) {
          ++r.coverage.checked;
          std::vector<int> tweaked = inners;
          tweaked[static_cast<size_t>(i)] = p.act(qi, rho);
          std::vector<perm::Permutation> blocks;
          for (int j = 0; j < n; ++j)
            blocks.push_back(j == i ? rho
                                    : perm::Permutation::id(
                                          p.ops[static_cast<size_t>(inners[static_cast<size_t>(j)])].arity()));
          const int lhs = p.subst(o, tweaked);
          const int rhs = p.act(s, perm::block_sum(blocks));
          if (lhs != rhs || lhs < 0) {
            r.verdict = false;
            r.witness = json{{"law", "inner equivariance"},
                             {"op", op_json(p, o)},
                             {"slot", i + 1},
                             {"perm", perm::to_string(rho)}};
            return;
          }
        }
      }

      // Associativity: substitute a second layer into the composite.
      for_each_inner_tuple(p, sop.profile, p.arity_bound, [&](const std::vector<int>& psis, int) {
        if (!r.verdict) return;
        ++r.coverage.checked;
        const int lhs = p.subst(s, psis);
        // Regroup psis under each inner phi_j.
        std::vector<int> composed(static_cast<size_t>(n));
        int off = 0;
        for (int j = 0; j < n; ++j) {
          const int kj = p.ops[static_cast<size_t>(inners[static_cast<size_t>(j)])].arity();
          std::vector<int> slice(psis.begin() + off, psis.begin() + off + kj);
          off += kj;
          composed[static_cast<size_t>(j)] = p.subst(inners[static_cast<size_t>(j)], slice);
        }
        const int rhs = p.subst(o, composed);
        if (lhs != rhs || lhs < 0) {
          r.verdict = false;
          r.witness = json{{"law", "subst associativity"}, {"op", op_json(p, o)}};
        }
      });
      if (!r.verdict) return;
    });
    const std::uint64_t all = count_all_inner_tuples(p, op.profile);
    r.coverage.skipped += all > visited ? all - visited : 0;
    if (!r.verdict) return r;
  }

  return r;
}

OpdPtr comm_operad(int arity_bound) {
  auto p = std::make_shared<FinOperad>();
  p->init({"*"}, arity_bound);
  std::vector<int> op_of_arity(static_cast<size_t>(arity_bound) + 1, -1);
  for (int n = 0; n <= arity_bound; ++n)
    op_of_arity[static_cast<size_t>(n)] =
        p->add_op("m" + std::to_string(n), Profile(static_cast<size_t>(n), 0), 0);
  p->set_unit(0, op_of_arity[1]);
  for (int n = 0; n <= arity_bound; ++n) {
    const int o = op_of_arity[static_cast<size_t>(n)];
    for (const auto& rho : perm::all_permutations(n)) p->set_act(o, rho, o);
    // Substitutions: all splittings of the result arity.
    std::function<void(int, std::vector<int>&, int)> rec = [&](int slot, std::vector<int>& inners,
                                                               int total) {
      if (slot == n) {
        p->set_subst(o, inners, op_of_arity[static_cast<size_t>(total)]);
        return;
      }
      for (int k = 0; total + k <= arity_bound; ++k) {
        inners.push_back(op_of_arity[static_cast<size_t>(k)]);
        rec(slot + 1, inners, total + k);
        inners.pop_back();
      }
    };
    std::vector<int> inners;
    rec(0, inners, 0);
  }
  p->freeze();
  return p;
}

OpdPtr operad_of_category(const cat::CatPtr& c, int arity_bound) {
  auto p = std::make_shared<FinOperad>();
  p->init(c->objects, std::max(1, arity_bound));
  for (int a = 0; a < c->num_arrows(); ++a) {
    const auto& ar = c->arrows[static_cast<size_t>(a)];
    p->add_op(ar.name, {ar.dom}, ar.cod);
  }
  for (int x = 0; x < c->num_objects(); ++x)
    p->set_unit(x, c->identity[static_cast<size_t>(x)]);
  for (int a = 0; a < c->num_arrows(); ++a) {
    p->set_act(a, perm::Permutation::id(1), a);
    for (int b = 0; b < c->num_arrows(); ++b) {
      // subst(outer b, [inner a]) = b o a when composable.
      if (c->arrows[static_cast<size_t>(a)].cod == c->arrows[static_cast<size_t>(b)].dom)
        p->set_subst(b, {a}, c->compose(b, a));
    }
  }
  p->freeze();
  return p;
}

UnaryCores unary_cores(const OpdPtr& p) {
  std::vector<cat::Arrow> arrows;
  std::vector<int> arrow_to_op;
  std::vector<int> identities(p->colours.size(), -1);
  std::vector<int> op_to_arrow(static_cast<size_t>(p->num_ops()), -1);
  for (int o = 0; o < p->num_ops(); ++o) {
    const auto& op = p->ops[static_cast<size_t>(o)];
    if (op.arity() != 1) continue;
    const int a = static_cast<int>(arrows.size());
    arrows.push_back(cat::Arrow{op.name, op.profile[0], op.output});
    arrow_to_op.push_back(o);
    op_to_arrow[static_cast<size_t>(o)] = a;
  }
  for (size_t c = 0; c < p->colours.size(); ++c)
    identities[c] = op_to_arrow[static_cast<size_t>(p->unit[c])];
  auto p1 = cat::FinCategory::make(
      p->colours, std::move(arrows), std::move(identities), [&](int g, int f) {
        const int s = p->subst(arrow_to_op[static_cast<size_t>(g)],
                               {arrow_to_op[static_cast<size_t>(f)]});
        return s < 0 ? -1 : op_to_arrow[static_cast<size_t>(s)];
      });

  UnaryCores out;
  out.p1 = p1;
  out.p1_arrow_to_op = arrow_to_op;
  const auto core = cat::iso_core(p1);
  out.p1_iso = core.core;
  for (int a : core.arrow_of_core)
    out.p1_iso_arrow_to_op.push_back(arrow_to_op[static_cast<size_t>(a)]);
  return out;
}

EndOperad end_operad(const smc::SmcPtr& m) {
  EndOperad out;
  out.base = m;
  auto p = std::make_shared<FinOperad>();
  p->init(m->colours, m->bound);
  out.op_of_mor.assign(static_cast<size_t>(m->num_mors()), -1);

  for (int obj = 0; obj < m->num_objects(); ++obj) {
    for (int c = 0; c < static_cast<int>(m->colours.size()); ++c) {
      const int target = m->object_of({c});
      for (int mor : m->hom(obj, target)) {
        const int o = p->add_op(m->mors[static_cast<size_t>(mor)].name,
                                m->objects[static_cast<size_t>(obj)], c);
        out.mor_of_op.push_back(mor);
        out.op_of_mor[static_cast<size_t>(mor)] = o;
      }
    }
  }
  for (int c = 0; c < static_cast<int>(m->colours.size()); ++c)
    p->set_unit(c, out.op_of_mor[static_cast<size_t>(
                    m->identity[static_cast<size_t>(m->object_of({c}))])]);
  p->freeze();

  // Substitution: theta o ((x) phi_i); action: precompose with a symmetry.
  for (int o = 0; o < p->num_ops(); ++o) {
    const auto& op = p->ops[static_cast<size_t>(o)];
    const int n = op.arity();
    const int theta = out.mor_of_op[static_cast<size_t>(o)];

    for_each_inner_tuple(*p, op.profile, p->arity_bound, [&](const std::vector<int>& inners, int) {
      std::vector<int> inner_mors;
      inner_mors.reserve(inners.size());
      for (int q : inners) inner_mors.push_back(out.mor_of_op[static_cast<size_t>(q)]);
      const int folded = m->tensor_fold(inner_mors);
      if (folded < 0) return;
      const int composite = m->compose(theta, folded);
      if (composite < 0) return;
      p->set_subst(o, inners, out.op_of_mor[static_cast<size_t>(composite)]);
    });

    for (const auto& rho : perm::all_permutations(n)) {
      Profile permuted(static_cast<size_t>(n));
      for (int i = 1; i <= n; ++i)
        permuted[static_cast<size_t>(i) - 1] = op.profile[static_cast<size_t>(rho(i)) - 1];
      const int dom = m->object_of(permuted);
      const int s = m->sym(rho, dom);
      const int composite = m->compose(theta, s);
      p->set_act(o, rho, out.op_of_mor[static_cast<size_t>(composite)]);
    }
  }
  out.operad = p;
  return out;
}

OperadMap identity_operad_map(const OpdPtr& p) {
  OperadMap f;
  f.source = p;
  f.target = p;
  f.colour_map.resize(p->colours.size());
  std::iota(f.colour_map.begin(), f.colour_map.end(), 0);
  f.op_map.resize(static_cast<size_t>(p->num_ops()));
  std::iota(f.op_map.begin(), f.op_map.end(), 0);
  return f;
}

OperadMap compose_operad_maps(const OperadMap& g, const OperadMap& f) {
  if (g.source.get() != f.target.get())
    throw input_error("operad map composition: middle operads differ");
  OperadMap out;
  out.source = f.source;
  out.target = g.target;
  for (int c : f.colour_map) out.colour_map.push_back(g.on_colour(c));
  for (int o : f.op_map) out.op_map.push_back(g.on_op(o));
  return out;
}

CheckReport validate_operad_map(const OperadMap& f) {
  CheckReport r = CheckReport::pass("validate_operad_map", f.source->arity_bound);
  const FinOperad& s = *f.source;
  const FinOperad& t = *f.target;
  if (f.colour_map.size() != s.colours.size() || f.op_map.size() != static_cast<size_t>(s.num_ops()))
    throw input_error("operad map tables do not cover the source");

  for (int o = 0; o < s.num_ops(); ++o) {
    const auto& op = s.ops[static_cast<size_t>(o)];
    const auto& im = t.ops[static_cast<size_t>(f.on_op(o))];
    ++r.coverage.checked;
    Profile expected;
    for (int c : op.profile) expected.push_back(f.on_colour(c));
    if (im.profile != expected || im.output != f.on_colour(op.output))
      return CheckReport::fail(r.check, r.bound, json{{"law", "profiles"}, {"op", op.name}});
  }
  for (size_t c = 0; c < s.colours.size(); ++c) {
    ++r.coverage.checked;
    if (f.on_op(s.unit[c]) != t.unit[static_cast<size_t>(f.colour_map[c])])
      return CheckReport::fail(r.check, r.bound, json{{"law", "units"}, {"colour", s.colours[c]}});
  }
  for (int o = 0; o < s.num_ops(); ++o) {
    const int n = s.ops[static_cast<size_t>(o)].arity();
    for (const auto& rho : perm::all_permutations(n)) {
      ++r.coverage.checked;
      if (f.on_op(s.act(o, rho)) != t.act(f.on_op(o), rho))
        return CheckReport::fail(r.check, r.bound,
                                 json{{"law", "action"}, {"op", s.ops[static_cast<size_t>(o)].name}});
    }
    // Substitution instances (arity-pruned).
    bool failed = false;
    const int budget = std::min(s.arity_bound, t.arity_bound);
    for_each_inner_tuple(s, s.ops[static_cast<size_t>(o)].profile, budget,
                         [&](const std::vector<int>& inners, int) {
                           if (failed) return;
                           ++r.coverage.checked;
                           std::vector<int> mapped;
                           for (int q : inners) mapped.push_back(f.on_op(q));
                           if (f.on_op(s.subst(o, inners)) != t.subst(f.on_op(o), mapped))
                             failed = true;
                         });
    if (failed)
      return CheckReport::fail(r.check, r.bound,
                               json{{"law", "substitution"}, {"op", s.ops[static_cast<size_t>(o)].name}});
  }
  return r;
}

bool operad_map_fully_faithful(const OperadMap& f) {
  const FinOperad& s = *f.source;
  const FinOperad& t = *f.target;
  // Injectivity and size equality on every multihom of the source, plus
  // surjectivity onto multihoms of target profiles hit by the colour map.
  for (const auto& [profile, output] : s.inhabited_multihoms()) {
    Profile mapped;
    for (int c : profile) mapped.push_back(f.on_colour(c));
    const auto& src = s.multihom(profile, output);
    const auto& dst = t.multihom(mapped, f.on_colour(output));
    if (src.size() != dst.size()) return false;
    std::set<int> im;
    for (int o : src) im.insert(f.on_op(o));
    if (im.size() != src.size()) return false;
  }
  // Multihoms that are empty in the source must be empty in the target.
  // Enumerate target multihoms over mapped colours and compare sizes.
  std::vector<std::vector<int>> fibers(t.colours.size());
  for (size_t c = 0; c < s.colours.size(); ++c)
    fibers[static_cast<size_t>(f.colour_map[c])].push_back(static_cast<int>(c));
  for (const auto& [tprofile, toutput] : t.inhabited_multihoms()) {
    // Every preimage profile must have a multihom of the same size.
    std::vector<const std::vector<int>*> ptrs;
    bool representable = true;
    for (int c : tprofile) {
      if (fibers[static_cast<size_t>(c)].empty()) representable = false;
      ptrs.push_back(&fibers[static_cast<size_t>(c)]);
    }
    if (!representable || fibers[static_cast<size_t>(toutput)].empty()) continue;
    bool ok = true;
    for_each_tuple(ptrs, [&](const std::vector<int>& pre_profile) {
      if (!ok) return;
      for (int out_pre : fibers[static_cast<size_t>(toutput)]) {
        if (s.multihom(pre_profile, out_pre).size() !=
            t.multihom(tprofile, toutput).size())
          ok = false;
      }
    });
    if (!ok) return false;
  }
  return true;
}

CheckReport validate_operad_two_cell(const OperadTwoCell& t) {
  CheckReport r = CheckReport::pass("validate_operad_two_cell", t.f.source->arity_bound);
  if (t.f.source.get() != t.g.source.get() || t.f.target.get() != t.g.target.get())
    throw input_error("two-cell between non-parallel operad maps");
  const FinOperad& s = *t.f.source;
  const FinOperad& d = *t.f.target;
  for (size_t c = 0; c < s.colours.size(); ++c) {
    const auto& comp = d.ops[static_cast<size_t>(t.components[c])];
    ++r.coverage.checked;
    if (comp.arity() != 1 || comp.profile[0] != t.f.colour_map[c] ||
        comp.output != t.g.colour_map[c])
      return CheckReport::fail(r.check, r.bound,
                               json{{"law", "component profile"}, {"colour", s.colours[c]}});
  }
  for (int o = 0; o < s.num_ops(); ++o) {
    const auto& op = s.ops[static_cast<size_t>(o)];
    ++r.coverage.checked;
    const int lhs = d.subst(t.components[static_cast<size_t>(op.output)], {t.f.on_op(o)});
    std::vector<int> comps;
    for (int c : op.profile) comps.push_back(t.components[static_cast<size_t>(c)]);
    const int rhs = d.subst(t.g.on_op(o), comps);
    if (lhs != rhs || lhs < 0)
      return CheckReport::fail(r.check, r.bound, json{{"law", "naturality"}, {"op", op.name}});
  }
  return r;
}

CheckReport validate_pinned_operad(const PinnedOperad& p) {
  CheckReport r = CheckReport::pass("validate_pinned_operad", p.body->arity_bound);
  const cat::FinCategory& c = *p.pins;
  const FinOperad& b = *p.body;
  if (p.colour_map.size() != c.objects.size() || p.arrow_map.size() != c.arrows.size())
    throw input_error("pinned operad: maps do not cover the pin category");
  for (int a = 0; a < c.num_arrows(); ++a) {
    const auto& ar = c.arrows[static_cast<size_t>(a)];
    const auto& op = b.ops[static_cast<size_t>(p.arrow_map[static_cast<size_t>(a)])];
    ++r.coverage.checked;
    if (op.arity() != 1 || op.profile[0] != p.colour_map[static_cast<size_t>(ar.dom)] ||
        op.output != p.colour_map[static_cast<size_t>(ar.cod)])
      return CheckReport::fail(r.check, r.bound,
                               json{{"law", "pin endpoints"}, {"arrow", ar.name}});
  }
  for (int x = 0; x < c.num_objects(); ++x) {
    ++r.coverage.checked;
    if (p.arrow_map[static_cast<size_t>(c.identity[static_cast<size_t>(x)])] !=
        b.unit[static_cast<size_t>(p.colour_map[static_cast<size_t>(x)])])
      return CheckReport::fail(r.check, r.bound,
                               json{{"law", "pin identities"}, {"object", c.objects[static_cast<size_t>(x)]}});
  }
  for (int f = 0; f < c.num_arrows(); ++f) {
    const auto& af = c.arrows[static_cast<size_t>(f)];
    for (int g : c.arrows_from(af.cod)) {
      ++r.coverage.checked;
      const int lhs = p.arrow_map[static_cast<size_t>(c.compose(g, f))];
      const int rhs = b.subst(p.arrow_map[static_cast<size_t>(g)],
                              {p.arrow_map[static_cast<size_t>(f)]});
      if (lhs != rhs || rhs < 0)
        return CheckReport::fail(r.check, r.bound,
                                 json{{"law", "pin composition"},
                                      {"pair", json{c.arrows[static_cast<size_t>(g)].name, af.name}}});
    }
  }
  return r;
}

bool is_substitude(const PinnedOperad& p) {
  if (p.pins->objects != p.body->colours) return false;
  for (size_t x = 0; x < p.colour_map.size(); ++x)
    if (p.colour_map[x] != static_cast<int>(x)) return false;
  return true;
}

OperadGabriel gabriel_factor_operad(const OperadMap& f) {
  const FinOperad& s = *f.source;
  const FinOperad& t = *f.target;

  auto mid = std::make_shared<FinOperad>();
  mid->init(s.colours, std::min(s.arity_bound, t.arity_bound));
  std::vector<int> mid_to_target;
  std::map<std::pair<Profile, std::pair<int, int>>, int> index;  // (profile, (output, target op))

  // One mid operation per (source profile, source output, target op).
  // Profiles range over all sequences of source colours within bound.
  const auto profiles = smc::enumerate_sequences(static_cast<int>(s.colours.size()), mid->arity_bound);
  for (const auto& profile : profiles) {
    Profile mapped;
    for (int c : profile) mapped.push_back(f.on_colour(c));
    for (int out = 0; out < static_cast<int>(s.colours.size()); ++out) {
      for (int u : t.multihom(mapped, f.on_colour(out))) {
        const int o = mid->add_op(profile_name(profile, s.colours) + ":" + s.colours[static_cast<size_t>(out)] +
                                      ":" + t.ops[static_cast<size_t>(u)].name,
                                  profile, out);
        mid_to_target.push_back(u);
        index[{profile, {out, u}}] = o;
      }
    }
  }
  for (size_t c = 0; c < s.colours.size(); ++c)
    mid->set_unit(static_cast<int>(c),
                  index.at({{static_cast<int>(c)}, {static_cast<int>(c), t.unit[static_cast<size_t>(f.colour_map[c])]}}));
  mid->freeze();

  for (int o = 0; o < mid->num_ops(); ++o) {
    const auto& op = mid->ops[static_cast<size_t>(o)];
    const int n = op.arity();
    for (const auto& rho : perm::all_permutations(n)) {
      Profile permuted(static_cast<size_t>(n));
      for (int i = 1; i <= n; ++i)
        permuted[static_cast<size_t>(i) - 1] = op.profile[static_cast<size_t>(rho(i)) - 1];
      mid->set_act(o, rho,
                   index.at({permuted, {op.output, t.act(mid_to_target[static_cast<size_t>(o)], rho)}}));
    }
    for_each_inner_tuple(*mid, op.profile, mid->arity_bound,
                         [&](const std::vector<int>& inners, int) {
                           Profile combined;
                           for (int q : inners)
                             combined.insert(combined.end(),
                                             mid->ops[static_cast<size_t>(q)].profile.begin(),
                                             mid->ops[static_cast<size_t>(q)].profile.end());
                           std::vector<int> tgt_inners;
                           for (int q : inners)
                             tgt_inners.push_back(mid_to_target[static_cast<size_t>(q)]);
                           const int tgt = t.subst(mid_to_target[static_cast<size_t>(o)], tgt_inners);
                           if (tgt < 0) return;
                           mid->set_subst(o, inners, index.at({combined, {op.output, tgt}}));
                         });
  }

  OperadGabriel out;
  out.mid = mid;
  out.io.source = f.source;
  out.io.target = mid;
  out.io.colour_map.resize(s.colours.size());
  std::iota(out.io.colour_map.begin(), out.io.colour_map.end(), 0);
  for (int o = 0; o < s.num_ops(); ++o) {
    const auto& op = s.ops[static_cast<size_t>(o)];
    out.io.op_map.push_back(index.at({op.profile, {op.output, f.on_op(o)}}));
  }
  out.ff.source = mid;
  out.ff.target = f.target;
  out.ff.colour_map = f.colour_map;
  out.ff.op_map = mid_to_target;
  return out;
}

Coreflection coreflect(const PinnedOperad& po) {
  // phi as an operad map out of the pin category, at the body's bound.
  OperadMap phi;
  phi.source = operad_of_category(po.pins, po.body->arity_bound);
  phi.target = po.body;
  phi.colour_map = po.colour_map;
  phi.op_map = po.arrow_map;

  const auto gab = gabriel_factor_operad(phi);
  Coreflection out;
  out.substitude.pins = po.pins;
  out.substitude.body = gab.mid;
  out.substitude.colour_map = gab.io.colour_map;
  out.substitude.arrow_map = gab.io.op_map;
  out.counit = gab.ff;
  return out;
}

Pinnings pinnings(const OpdPtr& p) {
  Pinnings out;
  const auto cores = unary_cores(p);

  {
    auto disc = cat::discrete_category(p->colours);
    out.discrete.pins = disc;
    out.discrete.body = p;
    out.discrete.colour_map.resize(p->colours.size());
    std::iota(out.discrete.colour_map.begin(), out.discrete.colour_map.end(), 0);
    for (int x = 0; x < disc->num_objects(); ++x)
      out.discrete.arrow_map.push_back(p->unit[static_cast<size_t>(x)]);
  }
  {
    out.groupoid.pins = cores.p1_iso;
    out.groupoid.body = p;
    out.groupoid.colour_map.resize(p->colours.size());
    std::iota(out.groupoid.colour_map.begin(), out.groupoid.colour_map.end(), 0);
    out.groupoid.arrow_map = cores.p1_iso_arrow_to_op;
  }
  {
    out.full.pins = cores.p1;
    out.full.body = p;
    out.full.colour_map.resize(p->colours.size());
    std::iota(out.full.colour_map.begin(), out.full.colour_map.end(), 0);
    out.full.arrow_map = cores.p1_arrow_to_op;
  }
  return out;
}

bool normal_substitude_check(const Substitude& s) {
  if (!is_substitude(s)) return false;
  std::set<int> image;
  for (int op : s.arrow_map) image.insert(op);
  if (image.size() != s.arrow_map.size()) return false;
  for (int o = 0; o < s.body->num_ops(); ++o)
    if (s.body->ops[static_cast<size_t>(o)].arity() == 1 && !image.count(o)) return false;
  return true;
}

}  // namespace opdkit::opd
