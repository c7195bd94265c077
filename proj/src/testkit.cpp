#include "opdkit/testkit.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "opdkit/adjunctions.hpp"

namespace opdkit::testkit {

using cat::Arrow;
using cat::CatPtr;
using opd::OpdPtr;
using opd::Profile;
using smc::BoundedSMC;
using smc::Sequence;
using smc::SmcPtr;

namespace {

int draw(std::mt19937_64& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Clone object `a` of c as a fresh object with a connecting isomorphism:
// every arrow is copied to all endpoint lifts.
CatPtr clone_object(const CatPtr& c, int a, const std::string& clone_name) {
  const int nb = c->num_objects();
  std::vector<std::string> objects = c->objects;
  objects.push_back(clone_name);
  auto lifts = [&](int x) {
    std::vector<int> out{x};
    if (x == a) out.push_back(nb);
    return out;
  };
  std::vector<Arrow> arrows;
  std::vector<int> identities(static_cast<size_t>(nb) + 1, -1);
  std::map<std::tuple<int, int, int>, int> index;  // (base arrow, dom, cod)
  for (int u = 0; u < c->num_arrows(); ++u) {
    const auto& ar = c->arrows[static_cast<size_t>(u)];
    for (int d : lifts(ar.dom))
      for (int e : lifts(ar.cod)) {
        const int m = static_cast<int>(arrows.size());
        std::string nm = ar.name;
        if (d != ar.dom || e != ar.cod)
          nm += "@" + objects[static_cast<size_t>(d)] + ">" + objects[static_cast<size_t>(e)];
        arrows.push_back(Arrow{nm, d, e});
        index[{u, d, e}] = m;
        if (d == e && u == c->identity[static_cast<size_t>(ar.dom)])
          identities[static_cast<size_t>(d)] = m;
      }
  }
  const auto arrows_copy = arrows;
  std::vector<std::tuple<int, int, int>> data(arrows.size());
  for (const auto& [k, v] : index) data[static_cast<size_t>(v)] = k;
  return cat::FinCategory::make(
      std::move(objects), std::move(arrows), std::move(identities), [&](int g, int f) {
        const auto [bg, dg, eg] = data[static_cast<size_t>(g)];
        const auto [bf, df, ef] = data[static_cast<size_t>(f)];
        (void)dg;
        (void)ef;
        return index.at({c->compose(bg, bf), df, eg});
      });
}

}  // namespace

CatPtr gen_category(const GenConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const int objects = std::max(1, draw(rng, 1, std::max(1, cfg.max_objects)));
  const int generators = cfg.max_arrows <= 0 ? 0 : draw(rng, 0, cfg.max_arrows);

  std::vector<std::pair<int, int>> gens;
  for (int i = 0; i < generators; ++i)
    gens.emplace_back(draw(rng, 0, objects - 1), draw(rng, 0, objects - 1));

  // Path category truncated at length 2, with absorbing arrows for every
  // endpoint pair reachable by a path of length >= 3.
  std::vector<std::vector<bool>> adj(static_cast<size_t>(objects),
                                     std::vector<bool>(static_cast<size_t>(objects), false));
  for (const auto& [d, c] : gens) adj[static_cast<size_t>(d)][static_cast<size_t>(c)] = true;
  auto mul = [&](const std::vector<std::vector<bool>>& x, const std::vector<std::vector<bool>>& y) {
    std::vector<std::vector<bool>> out(static_cast<size_t>(objects),
                                       std::vector<bool>(static_cast<size_t>(objects), false));
    for (int i = 0; i < objects; ++i)
      for (int k = 0; k < objects; ++k)
        if (x[static_cast<size_t>(i)][static_cast<size_t>(k)])
          for (int j = 0; j < objects; ++j)
            if (y[static_cast<size_t>(k)][static_cast<size_t>(j)])
              out[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
    return out;
  };
  // bot[i][j]: some path of length >= 3.
  auto a2 = mul(adj, adj);
  auto bot = mul(a2, adj);
  for (;;) {
    auto grown = mul(bot, adj);
    auto grown2 = mul(adj, bot);
    bool changed = false;
    for (int i = 0; i < objects; ++i)
      for (int j = 0; j < objects; ++j)
        if ((grown[static_cast<size_t>(i)][static_cast<size_t>(j)] ||
             grown2[static_cast<size_t>(i)][static_cast<size_t>(j)]) &&
            !bot[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
          bot[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
          changed = true;
        }
    if (!changed) break;
  }

  std::vector<std::string> names;
  for (int i = 0; i < objects; ++i) names.push_back("o" + std::to_string(i));

  std::vector<Arrow> arrows;
  std::vector<int> identities;
  for (int i = 0; i < objects; ++i) {
    identities.push_back(static_cast<int>(arrows.size()));
    arrows.push_back(Arrow{"id_o" + std::to_string(i), i, i});
  }
  // Length-1 arrows.
  std::vector<int> gen_arrow;
  for (size_t i = 0; i < gens.size(); ++i) {
    gen_arrow.push_back(static_cast<int>(arrows.size()));
    arrows.push_back(Arrow{"g" + std::to_string(i), gens[i].first, gens[i].second});
  }
  // Length-2 arrows, one per composable generator pair.
  std::map<std::pair<int, int>, int> pair_arrow;
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = 0; j < gens.size(); ++j)
      if (gens[i].second == gens[j].first) {
        pair_arrow[{static_cast<int>(j), static_cast<int>(i)}] = static_cast<int>(arrows.size());
        arrows.push_back(Arrow{"g" + std::to_string(j) + "g" + std::to_string(i), gens[i].first,
                               gens[j].second});
      }
  // Absorbing arrows.
  std::map<std::pair<int, int>, int> bot_arrow;
  for (int i = 0; i < objects; ++i)
    for (int j = 0; j < objects; ++j)
      if (bot[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
        bot_arrow[{i, j}] = static_cast<int>(arrows.size());
        arrows.push_back(Arrow{"z" + std::to_string(i) + "_" + std::to_string(j), i, j});
      }

  const int n_arrows = static_cast<int>(arrows.size());
  // Arrow kinds: 0 identity, 1 generator (index), 2 pair, 3 absorbing.
  std::vector<int> kind(static_cast<size_t>(n_arrows), 3);
  std::vector<int> gen_of(static_cast<size_t>(n_arrows), -1);
  for (int i = 0; i < objects; ++i) kind[static_cast<size_t>(identities[static_cast<size_t>(i)])] = 0;
  for (size_t i = 0; i < gen_arrow.size(); ++i) {
    kind[static_cast<size_t>(gen_arrow[i])] = 1;
    gen_of[static_cast<size_t>(gen_arrow[i])] = static_cast<int>(i);
  }
  for (const auto& [k, v] : pair_arrow) {
    kind[static_cast<size_t>(v)] = 2;
    (void)k;
  }

  const auto arrows_copy = arrows;
  auto base = cat::FinCategory::make(
      names, std::move(arrows), std::move(identities), [&](int g, int f) {
        const auto& ag = arrows_copy[static_cast<size_t>(g)];
        const auto& af = arrows_copy[static_cast<size_t>(f)];
        const int kg = kind[static_cast<size_t>(g)];
        const int kf = kind[static_cast<size_t>(f)];
        if (kg == 1 && kf == 1)
          return pair_arrow.at({gen_of[static_cast<size_t>(g)], gen_of[static_cast<size_t>(f)]});
        return bot_arrow.at({af.dom, ag.cod});
      });

  // Clone an object half of the time to summon non-identity isomorphisms.
  if (base->num_objects() < cfg.max_objects && (rng() & 1)) {
    const int target = draw(rng, 0, base->num_objects() - 1);
    base = clone_object(base, target, "o" + std::to_string(target) + "c");
  }

  const auto report = cat::validate_category(*base);
  if (!report.verdict)
    throw generation_error("gen_category produced an invalid category: " + report.witness.dump());
  return base;
}

namespace {

// Trees over a signature of generators with arity >= 2; leaves are typed by
// colours.  An operation is a tree plus a numbering of its leaves.
struct TreeNode {
  int gen = -1;                  // -1: leaf
  int colour = -1;               // for leaves
  std::vector<TreeNode> children;

  std::string key() const {
    if (gen < 0) return "l" + std::to_string(colour);
    std::string s = "n" + std::to_string(gen) + "(";
    for (const auto& ch : children) s += ch.key() + ",";
    return s + ")";
  }
};

struct Signature {
  struct Gen {
    Profile inputs;
    int output;
  };
  std::vector<Gen> gens;
};

void collect_leaf_colours(const TreeNode& t, Profile& out) {
  if (t.gen < 0) {
    out.push_back(t.colour);
    return;
  }
  for (const auto& ch : t.children) collect_leaf_colours(ch, out);
}

// All trees with the given output colour, at most `max_leaves` leaves.
void enumerate_trees(const Signature& sig, int colour, int max_leaves,
                     std::vector<TreeNode>& out) {
  out.push_back(TreeNode{-1, colour, {}});
  for (size_t g = 0; g < sig.gens.size(); ++g) {
    const auto& gen = sig.gens[g];
    if (gen.output != colour) continue;
    // Children per slot with a shared leaf budget.
    std::vector<std::vector<TreeNode>> per_slot(gen.inputs.size());
    std::function<void(size_t, int, std::vector<TreeNode>&)> rec = [&](size_t slot, int budget,
                                                                       std::vector<TreeNode>& acc) {
      if (slot == gen.inputs.size()) {
        TreeNode t;
        t.gen = static_cast<int>(g);
        t.children = acc;
        out.push_back(std::move(t));
        return;
      }
      std::vector<TreeNode> subs;
      const int remaining_slots = static_cast<int>(gen.inputs.size() - slot - 1);
      enumerate_trees(sig, gen.inputs[slot], budget - remaining_slots, subs);
      for (auto& s : subs) {
        Profile leaves;
        collect_leaf_colours(s, leaves);
        const int used = static_cast<int>(leaves.size());
        if (used > budget - remaining_slots) continue;
        acc.push_back(s);
        rec(slot + 1, budget - used, acc);
        acc.pop_back();
      }
    };
    std::vector<TreeNode> acc;
    if (static_cast<int>(gen.inputs.size()) <= max_leaves) rec(0, max_leaves, acc);
  }
}

// Graft subtrees into the leaves of `outer` (in leaf order).
TreeNode graft(const TreeNode& outer, const std::vector<TreeNode>& subs, size_t& cursor) {
  if (outer.gen < 0) return subs[cursor++];
  TreeNode t;
  t.gen = outer.gen;
  t.colour = -1;
  for (const auto& ch : outer.children) t.children.push_back(graft(ch, subs, cursor));
  return t;
}

OpdPtr free_operad_on(const Signature& sig, const std::vector<std::string>& colours,
                      int arity_bound, std::uint64_t op_cap) {
  // Enumerate trees per output colour, then attach every leaf numbering.
  std::vector<std::pair<TreeNode, perm::Permutation>> op_data;
  std::map<std::pair<std::string, std::vector<int>>, int> op_index;

  auto p = std::make_shared<opd::FinOperad>();
  p->init(colours, arity_bound);

  for (int colour = 0; colour < static_cast<int>(colours.size()); ++colour) {
    std::vector<TreeNode> trees;
    enumerate_trees(sig, colour, arity_bound, trees);
    for (const auto& t : trees) {
      Profile leaves;
      collect_leaf_colours(t, leaves);
      const int n = static_cast<int>(leaves.size());
      for (const auto& rho : perm::all_permutations(n)) {
        // numbering: leaf at position i (tree order) is numbered rho(i); the
        // operation's profile lists colours by number: profile[k] = colour of
        // the leaf numbered k.
        Profile profile(static_cast<size_t>(n));
        for (int i = 1; i <= n; ++i)
          profile[static_cast<size_t>(rho(i)) - 1] = leaves[static_cast<size_t>(i) - 1];
        const std::string key = t.key();
        const int o = p->add_op("t" + std::to_string(p->num_ops()), profile, colour);
        op_data.emplace_back(t, rho);
        op_index[{key, rho.images}] = o;
        if (static_cast<std::uint64_t>(p->num_ops()) > op_cap)
          throw generation_error("operad closure exceeds the size cap");
      }
    }
  }
  for (int colour = 0; colour < static_cast<int>(colours.size()); ++colour)
    p->set_unit(colour, op_index.at({TreeNode{-1, colour, {}}.key(), {1}}));

  // Action: renumber the leaves.  act(op, pi) numbers leaf i by
  // pi^-1(rho(i)); its profile is the pi-permuted profile as required.
  for (int o = 0; o < p->num_ops(); ++o) {
    const auto& [tree, rho] = op_data[static_cast<size_t>(o)];
    const int n = p->ops[static_cast<size_t>(o)].arity();
    for (const auto& pi : perm::all_permutations(n))
      p->set_act(o, pi, op_index.at({tree.key(), perm::after(pi.inverse(), rho).images}));
  }

  // Substitution: graft in numbering order, renumber the combined leaves.
  p->freeze();
  for (int o = 0; o < p->num_ops(); ++o) {
    const auto& [tree, rho] = op_data[static_cast<size_t>(o)];
    const auto& op = p->ops[static_cast<size_t>(o)];
    const int n = op.arity();
    if (n == 0) {
      p->set_subst(o, {}, o);
      continue;
    }
    opd::for_each_inner_tuple(*p, op.profile, arity_bound, [&](const std::vector<int>& inners, int) {
      {
        // The leaf of `tree` numbered k receives the tree of inners[k-1].
        std::vector<TreeNode> subs_in_tree_order;
        std::vector<int> offsets(static_cast<size_t>(n) + 1, 0);
        for (int k = 1; k <= n; ++k)
          offsets[static_cast<size_t>(k)] =
              offsets[static_cast<size_t>(k) - 1] +
              p->ops[static_cast<size_t>(inners[static_cast<size_t>(k) - 1])].arity();
        // Combined numbering: leaf j of inner k (inner tree order, numbered
        // rho_k(j)) gets global number offsets[k-1] + rho_k(j).
        std::vector<int> global_numbering;
        for (int i = 1; i <= n; ++i) {
          const int k = rho(i);  // leaf i (tree order) is numbered k
          const auto& [itree, irho] = op_data[static_cast<size_t>(inners[static_cast<size_t>(k) - 1])];
          subs_in_tree_order.push_back(itree);
          for (int j = 1; j <= irho.size(); ++j)
            global_numbering.push_back(offsets[static_cast<size_t>(k) - 1] + irho(j));
        }
        size_t cursor = 0;
        const TreeNode grafted = graft(tree, subs_in_tree_order, cursor);
        p->set_subst(o, inners,
                     op_index.at({grafted.key(), global_numbering}));
      }
    });
  }
  return p;
}

// Clone colour `a` with a connecting invertible unary pair.
OpdPtr clone_colour(const OpdPtr& p, int a, const std::string& clone_name) {
  const int nb = static_cast<int>(p->colours.size());
  std::vector<std::string> colours = p->colours;
  colours.push_back(clone_name);
  auto lifts = [&](int c) {
    std::vector<int> out{c};
    if (c == a) out.push_back(nb);
    return out;
  };
  auto q = std::make_shared<opd::FinOperad>();
  q->init(colours, p->arity_bound);
  // Copies of each op, one per endpoint lift.
  std::map<std::pair<int, std::pair<Profile, int>>, int> index;  // (base op, (profile, output))
  std::vector<std::pair<int, std::pair<Profile, int>>> data;
  for (int o = 0; o < p->num_ops(); ++o) {
    const auto& op = p->ops[static_cast<size_t>(o)];
    std::vector<std::vector<int>> slot_lifts;
    for (int c : op.profile) slot_lifts.push_back(lifts(c));
    slot_lifts.push_back(lifts(op.output));
    std::vector<size_t> pick(slot_lifts.size(), 0);
    for (;;) {
      Profile profile(op.profile.size());
      for (size_t i = 0; i < op.profile.size(); ++i)
        profile[i] = slot_lifts[i][pick[i]];
      const int output = slot_lifts.back()[pick.back()];
      const int copy = q->add_op(op.name + "." + std::to_string(q->num_ops()), profile, output);
      index[{o, {profile, output}}] = copy;
      data.emplace_back(o, std::make_pair(profile, output));
      bool done = true;
      for (size_t i = 0; i < slot_lifts.size(); ++i) {
        if (++pick[i] < slot_lifts[i].size()) {
          done = false;
          break;
        }
        pick[i] = 0;
      }
      if (done) break;
    }
  }
  for (int c = 0; c <= nb; ++c) {
    const int base_c = c == nb ? a : c;
    q->set_unit(c, index.at({p->unit[static_cast<size_t>(base_c)], {Profile{c}, c}}));
  }
  q->freeze();
  for (int o = 0; o < q->num_ops(); ++o) {
    const auto& [base, sig] = data[static_cast<size_t>(o)];
    const auto& profile = sig.first;
    const int output = sig.second;
    const int n = static_cast<int>(profile.size());
    for (const auto& rho : perm::all_permutations(n)) {
      Profile permuted(static_cast<size_t>(n));
      for (int i = 1; i <= n; ++i)
        permuted[static_cast<size_t>(i) - 1] = profile[static_cast<size_t>(rho(i)) - 1];
      q->set_act(o, rho, index.at({p->act(base, rho), {permuted, output}}));
    }
    if (n == 0) {
      q->set_subst(o, {}, o);
      continue;
    }
    opd::for_each_inner_tuple(*q, profile, q->arity_bound, [&](const std::vector<int>& inners, int) {
      std::vector<int> base_inners(static_cast<size_t>(n));
      Profile combined;
      for (int i = 0; i < n; ++i) {
        base_inners[static_cast<size_t>(i)] = data[static_cast<size_t>(inners[static_cast<size_t>(i)])].first;
        const auto& ip = q->ops[static_cast<size_t>(inners[static_cast<size_t>(i)])].profile;
        combined.insert(combined.end(), ip.begin(), ip.end());
      }
      const int base_res = p->subst(base, base_inners);
      if (base_res >= 0) q->set_subst(o, inners, index.at({base_res, {combined, output}}));
    });
  }
  return q;
}

}  // namespace

OpdPtr gen_operad(const GenConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const int colours = std::max(1, draw(rng, 1, std::max(1, cfg.max_colours)));
  std::vector<std::string> names;
  for (int i = 0; i < colours; ++i) names.push_back("c" + std::to_string(i));
  const int max_gen_arity = std::min(3, cfg.arity_bound);

  for (int attempt = 0; attempt < 8; ++attempt) {
    const int n_gens = cfg.max_ops <= 0 ? 0 : draw(rng, 0, cfg.max_ops);
    Signature sig;
    for (int i = 0; i < n_gens; ++i) {
      Signature::Gen g;
      const int arity = max_gen_arity < 2 ? 2 : draw(rng, 2, max_gen_arity);
      for (int k = 0; k < arity; ++k) g.inputs.push_back(draw(rng, 0, colours - 1));
      g.output = draw(rng, 0, colours - 1);
      sig.gens.push_back(std::move(g));
    }
    OpdPtr p;
    try {
      p = free_operad_on(sig, names, cfg.arity_bound, 160);
    } catch (const generation_error&) {
      continue;  // closure too large; redraw a smaller signature
    }
    // Occasionally clone a colour for a non-identity invertible unary op.
    if (colours < cfg.max_colours && (rng() & 1)) {
      const int target = draw(rng, 0, colours - 1);
      try {
        auto enriched = clone_colour(p, target, names[static_cast<size_t>(target)] + "c");
        if (enriched->num_ops() <= 220) p = enriched;
      } catch (const generation_error&) {
      }
    }
    const auto report = opd::validate_operad(*p);
    if (!report.verdict)
      throw generation_error("gen_operad produced an invalid operad: " + report.witness.dump());
    return p;
  }
  throw generation_error("gen_operad: resampling budget exhausted");
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<size_t>(a)] = b;
    return true;
  }
};

// Quotient of m by the monoidal congruence generated by f ~ g.
SmcPtr quotient_smc(const BoundedSMC& m, int f0, int g0) {
  UnionFind uf(m.num_mors());
  std::vector<std::pair<int, int>> queue;
  auto merge = [&](int a, int b) {
    if (uf.unite(a, b)) queue.emplace_back(a, b);
  };
  merge(f0, g0);
  // Pre-collect tensor pairs per morphism for propagation.
  std::vector<std::vector<std::pair<int, int>>> tensor_with;  // mor -> (partner, is_left)
  tensor_with.assign(static_cast<size_t>(m.num_mors()), {});
  m.visit_tensors([&](int f, int g, int) {
    tensor_with[static_cast<size_t>(f)].emplace_back(g, 1);
    tensor_with[static_cast<size_t>(g)].emplace_back(f, 0);
  });
  while (!queue.empty()) {
    const auto [u, v] = queue.back();
    queue.pop_back();
    const auto& mu = m.mors[static_cast<size_t>(u)];
    // Compose on both sides.
    for (int w = 0; w < m.num_mors(); ++w) {
      const auto& mw = m.mors[static_cast<size_t>(w)];
      if (mw.cod == mu.dom) merge(m.compose(u, w), m.compose(v, w));
      if (mw.dom == mu.cod) merge(m.compose(w, u), m.compose(w, v));
    }
    for (const auto& [w, left] : tensor_with[static_cast<size_t>(u)]) {
      const int tu = left ? m.tensor(u, w) : m.tensor(w, u);
      const int tv = left ? m.tensor(v, w) : m.tensor(w, v);
      if (tu >= 0 && tv >= 0) merge(tu, tv);
    }
  }

  // Representatives and class table.
  std::vector<int> cls(static_cast<size_t>(m.num_mors()), -1);
  std::vector<int> rep;
  for (int mor = 0; mor < m.num_mors(); ++mor) {
    const int root = uf.find(mor);
    if (cls[static_cast<size_t>(root)] < 0) {
      cls[static_cast<size_t>(root)] = static_cast<int>(rep.size());
      rep.push_back(root);
    }
    cls[static_cast<size_t>(mor)] = cls[static_cast<size_t>(root)];
  }

  auto q = std::make_shared<BoundedSMC>();
  q->init(m.colours, m.bound);
  for (size_t i = 0; i < rep.size(); ++i) {
    const auto& mm = m.mors[static_cast<size_t>(rep[i])];
    q->add_mor(mm.name + "~", mm.dom, mm.cod);
  }
  for (int obj = 0; obj < m.num_objects(); ++obj)
    q->set_identity(obj, cls[static_cast<size_t>(m.identity[static_cast<size_t>(obj)])]);
  q->freeze();
  for (int u = 0; u < m.num_mors(); ++u) {
    const auto& mu = m.mors[static_cast<size_t>(u)];
    for (int w = 0; w < m.num_mors(); ++w) {
      const auto& mw = m.mors[static_cast<size_t>(w)];
      if (mw.dom == mu.cod)
        q->set_compose(cls[static_cast<size_t>(w)], cls[static_cast<size_t>(u)],
                       cls[static_cast<size_t>(m.compose(w, u))]);
    }
  }
  m.visit_tensors([&](int f, int g, int fg) {
    q->set_tensor(cls[static_cast<size_t>(f)], cls[static_cast<size_t>(g)],
                  cls[static_cast<size_t>(fg)]);
  });
  for (const auto& [key, s] : m.sym_table()) {
    perm::Permutation rho;
    rho.images = key.second;
    q->set_sym(rho, key.first, cls[static_cast<size_t>(s)]);
  }
  return q;
}

// Adjoin an absorbing morphism family rooted at (dom0, cod0).
SmcPtr absorb_smc(const BoundedSMC& m, int dom0, int cod0) {
  // Reachability closure over endpoint pairs.
  std::set<std::pair<int, int>> reach{{dom0, cod0}};
  std::vector<std::pair<int, int>> frontier{{dom0, cod0}};
  auto lens = [&](int obj) { return static_cast<int>(m.objects[static_cast<size_t>(obj)].size()); };
  while (!frontier.empty()) {
    const auto [d, c] = frontier.back();
    frontier.pop_back();
    std::vector<std::pair<int, int>> next;
    // Pre/post composition with every existing morphism.
    for (int w = 0; w < m.num_mors(); ++w) {
      const auto& mw = m.mors[static_cast<size_t>(w)];
      if (mw.cod == d) next.emplace_back(mw.dom, c);
      if (mw.dom == c) next.emplace_back(d, mw.cod);
    }
    // Tensor with every nonempty hom and with other absorbers.
    for (int a = 0; a < m.num_objects(); ++a)
      for (int b = 0; b < m.num_objects(); ++b) {
        const bool hom_nonempty = !m.hom(a, b).empty() || reach.count({a, b});
        if (!hom_nonempty) continue;
        if (lens(d) + lens(a) <= m.bound && lens(c) + lens(b) <= m.bound) {
          next.emplace_back(m.concat(d, a), m.concat(c, b));
          next.emplace_back(m.concat(a, d), m.concat(b, c));
        }
      }
    for (const auto& pr : next)
      if (reach.insert(pr).second) frontier.push_back(pr);
  }

  auto q = std::make_shared<BoundedSMC>();
  q->init(m.colours, m.bound);
  for (const auto& mm : m.mors) q->add_mor(mm.name, mm.dom, mm.cod);
  std::map<std::pair<int, int>, int> bot;
  for (const auto& [d, c] : reach)
    bot[{d, c}] = q->add_mor("bot@" + std::to_string(d) + ">" + std::to_string(c), d, c);
  for (int obj = 0; obj < m.num_objects(); ++obj)
    q->set_identity(obj, m.identity[static_cast<size_t>(obj)]);
  q->freeze();

  auto is_bot = [&](int mor) { return mor >= m.num_mors(); };
  // Composition.
  for (int f = 0; f < q->num_mors(); ++f) {
    const auto& mf = q->mors[static_cast<size_t>(f)];
    for (int cod2 = 0; cod2 < q->num_objects(); ++cod2)
      for (int g : q->hom(mf.cod, cod2)) {
        if (!is_bot(f) && !is_bot(g)) {
          q->set_compose(g, f, m.compose(g, f));
        } else {
          q->set_compose(g, f, bot.at({mf.dom, cod2}));
        }
      }
  }
  // Tensor.
  q->for_each_tensorable_pair([&](int f, int g) {
    const auto& mf = q->mors[static_cast<size_t>(f)];
    const auto& mg = q->mors[static_cast<size_t>(g)];
    const int dom = q->concat(mf.dom, mg.dom);
    const int cod = q->concat(mf.cod, mg.cod);
    if (!is_bot(f) && !is_bot(g)) {
      const int t = m.tensor(f, g);
      if (t >= 0) q->set_tensor(f, g, t);
    } else {
      q->set_tensor(f, g, bot.at({dom, cod}));
    }
  });
  for (const auto& [key, s] : m.sym_table()) {
    perm::Permutation rho;
    rho.images = key.second;
    q->set_sym(rho, key.first, s);
  }
  return q;
}

smc::PinnedSMC repin(const smc::PinnedSMC& tau, const SmcPtr& new_target,
                     const std::vector<int>& mor_translation) {
  std::vector<int> pin;
  pin.reserve(tau.arrow_pin.size());
  for (int mor : tau.arrow_pin) pin.push_back(mor_translation[static_cast<size_t>(mor)]);
  return smc::build_pinned(tau.base, new_target, pin);
}

}  // namespace

smc::PinnedSMC mutate_break_hereditary(const smc::PinnedSMC& tau, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const BoundedSMC& m = *tau.target;

  // Candidate sites: codomains of length >= 2.
  std::vector<std::pair<int, int>> sites;
  for (int d = 0; d < m.num_objects(); ++d)
    for (int c = 0; c < m.num_objects(); ++c)
      if (m.objects[static_cast<size_t>(c)].size() >= 2) sites.emplace_back(d, c);
  if (sites.empty()) throw generation_error("mutate_break_hereditary: no codomain of length >= 2");
  std::shuffle(sites.begin(), sites.end(), rng);

  const bool prefer_identify = rng() & 1;
  for (int mode = 0; mode < 2; ++mode) {
    const bool identify = (mode == 0) == prefer_identify;
    for (const auto& [d, c] : sites) {
      try {
        if (identify) {
          const auto& hom = m.hom(d, c);
          if (hom.size() < 2) continue;
          const int i = draw(rng, 0, static_cast<int>(hom.size()) - 1);
          int j = draw(rng, 0, static_cast<int>(hom.size()) - 2);
          if (j >= i) ++j;
          auto q = quotient_smc(m, hom[static_cast<size_t>(i)], hom[static_cast<size_t>(j)]);
          // Translation: class indices computed the same way as in quotient_smc.
          // Rebuild it through the public surface: map each old morphism to the
          // quotient morphism with the same representative name prefix.
          std::vector<int> translation(static_cast<size_t>(m.num_mors()), -1);
          {
            // Recompute the congruence to recover the class map.
            UnionFind uf(m.num_mors());
            std::vector<std::pair<int, int>> queue;
            auto merge = [&](int x, int y) {
              if (uf.unite(x, y)) queue.emplace_back(x, y);
            };
            merge(hom[static_cast<size_t>(i)], hom[static_cast<size_t>(j)]);
            std::vector<std::vector<std::pair<int, int>>> tensor_with(
                static_cast<size_t>(m.num_mors()));
            m.visit_tensors([&](int f, int g, int) {
              tensor_with[static_cast<size_t>(f)].emplace_back(g, 1);
              tensor_with[static_cast<size_t>(g)].emplace_back(f, 0);
            });
            while (!queue.empty()) {
              const auto [u, v] = queue.back();
              queue.pop_back();
              const auto& mu = m.mors[static_cast<size_t>(u)];
              for (int w = 0; w < m.num_mors(); ++w) {
                const auto& mw = m.mors[static_cast<size_t>(w)];
                if (mw.cod == mu.dom) merge(m.compose(u, w), m.compose(v, w));
                if (mw.dom == mu.cod) merge(m.compose(w, u), m.compose(w, v));
              }
              for (const auto& [w, left] : tensor_with[static_cast<size_t>(u)]) {
                const int tu = left ? m.tensor(u, w) : m.tensor(w, u);
                const int tv = left ? m.tensor(v, w) : m.tensor(w, v);
                if (tu >= 0 && tv >= 0) merge(tu, tv);
              }
            }
            std::vector<int> cls(static_cast<size_t>(m.num_mors()), -1);
            int next = 0;
            for (int mor = 0; mor < m.num_mors(); ++mor) {
              const int root = uf.find(mor);
              if (cls[static_cast<size_t>(root)] < 0) cls[static_cast<size_t>(root)] = next++;
              translation[static_cast<size_t>(mor)] = cls[static_cast<size_t>(root)];
            }
          }
          auto mutated = repin(tau, q, translation);
          if (!smc::validate_smc(*q).verdict) continue;
          if (adj::hereditary_check(mutated).verdict) continue;
          return mutated;
        } else {
          auto q = absorb_smc(m, d, c);
          std::vector<int> translation(static_cast<size_t>(m.num_mors()));
          std::iota(translation.begin(), translation.end(), 0);
          auto mutated = repin(tau, q, translation);
          if (!smc::validate_smc(*q).verdict) continue;
          if (adj::hereditary_check(mutated).verdict) continue;
          return mutated;
        }
      } catch (const input_error&) {
        continue;
      }
    }
  }
  throw generation_error("mutate_break_hereditary: no mutation site flips the verdict");
}

TwistedInstance gen_twisted_weak(std::uint64_t seed, int bound) {
  std::mt19937_64 rng(seed);
  const int K = bound;  // objects 0..K with saturating addition

  // Base category: one object with a Z/2 endomorphism.
  auto base = cat::CategoryBuilder().object("x").arrow("s", "x", "x").compose("s", "s", "id_x").build();
  const auto fs = smc::free_smc(base, bound);

  // The target: objects 0..K, hom(k, k) = Z/2, tensor saturating on objects
  // and XOR on arrows.
  std::vector<std::string> names;
  for (int k = 0; k <= K; ++k) names.push_back("w" + std::to_string(k));
  std::vector<cat::Arrow> arrows;
  std::vector<int> identities;
  std::vector<std::pair<int, int>> arrow_data;  // (object, bit)
  std::map<std::pair<int, int>, int> arrow_of;
  for (int k = 0; k <= K; ++k) {
    identities.push_back(static_cast<int>(arrows.size()));
    arrow_of[{k, 0}] = static_cast<int>(arrows.size());
    arrow_data.emplace_back(k, 0);
    arrows.push_back(cat::Arrow{"id_w" + std::to_string(k), k, k});
    arrow_of[{k, 1}] = static_cast<int>(arrows.size());
    arrow_data.emplace_back(k, 1);
    arrows.push_back(cat::Arrow{"f" + std::to_string(k), k, k});
  }
  auto wcat = cat::FinCategory::make(names, std::move(arrows), std::move(identities),
                                     [&](int g, int f) {
                                       const auto& dg = arrow_data[static_cast<size_t>(g)];
                                       const auto& df = arrow_data[static_cast<size_t>(f)];
                                       return arrow_of.at({dg.first, dg.second ^ df.second});
                                     });

  auto tadd = [&](int x, int y) { return std::min(x + y, K); };

  auto build_weak = [&](const std::vector<std::vector<int>>& u, int u0) {
    auto w = std::make_shared<smc::WeakSMC>();
    w->cat = wcat;
    w->unit = 0;
    w->tensor_obj.assign(static_cast<size_t>(K) + 1, std::vector<int>(static_cast<size_t>(K) + 1));
    for (int x = 0; x <= K; ++x)
      for (int y = 0; y <= K; ++y) w->tensor_obj[static_cast<size_t>(x)][static_cast<size_t>(y)] = tadd(x, y);
    for (int f = 0; f < wcat->num_arrows(); ++f)
      for (int g = 0; g < wcat->num_arrows(); ++g) {
        const auto& df = arrow_data[static_cast<size_t>(f)];
        const auto& dg = arrow_data[static_cast<size_t>(g)];
        const int obj = tadd(df.first, dg.first);
        // Endpoints coincide, so the twist conjugation cancels: plain XOR.
        w->tensor_mor[{f, g}] = arrow_of.at({obj, df.second ^ dg.second});
      }
    w->associator.assign(static_cast<size_t>(K) + 1,
                         std::vector<std::vector<int>>(static_cast<size_t>(K) + 1,
                                                       std::vector<int>(static_cast<size_t>(K) + 1)));
    w->left_unitor.assign(static_cast<size_t>(K) + 1, -1);
    w->right_unitor.assign(static_cast<size_t>(K) + 1, -1);
    w->symmetry.assign(static_cast<size_t>(K) + 1, std::vector<int>(static_cast<size_t>(K) + 1));
    for (int x = 0; x <= K; ++x) {
      w->left_unitor[static_cast<size_t>(x)] = arrow_of.at({x, u0 ^ u[0][static_cast<size_t>(x)]});
      w->right_unitor[static_cast<size_t>(x)] = arrow_of.at({x, u0 ^ u[static_cast<size_t>(x)][0]});
      for (int y = 0; y <= K; ++y) {
        w->symmetry[static_cast<size_t>(x)][static_cast<size_t>(y)] =
            arrow_of.at({tadd(x, y), u[static_cast<size_t>(y)][static_cast<size_t>(x)] ^
                                         u[static_cast<size_t>(x)][static_cast<size_t>(y)]});
        for (int z = 0; z <= K; ++z) {
          const int bit = u[static_cast<size_t>(x)][static_cast<size_t>(tadd(y, z))] ^
                          u[static_cast<size_t>(y)][static_cast<size_t>(z)] ^
                          u[static_cast<size_t>(x)][static_cast<size_t>(y)] ^
                          u[static_cast<size_t>(tadd(x, y))][static_cast<size_t>(z)];
          w->associator[static_cast<size_t>(x)][static_cast<size_t>(y)][static_cast<size_t>(z)] =
              arrow_of.at({tadd(tadd(x, y), z), bit});
        }
      }
    }
    return w;
  };

  auto build_functor = [&](const std::shared_ptr<const smc::WeakSMC>& w,
                           const std::vector<std::vector<int>>& u, int u0) {
    smc::StrongMonoidalFunctor F;
    F.source = fs.smc;
    F.target = w;
    for (const auto& seq : fs.smc->objects)
      F.object_map.push_back(std::min(static_cast<int>(seq.size()), K));
    for (int mor = 0; mor < fs.smc->num_mors(); ++mor) {
      const auto& d = fs.mor_data[static_cast<size_t>(mor)];
      int bit = 0;
      for (int l : d.labels) bit ^= (l == base->arrow_index("s")) ? 1 : 0;
      const int obj = std::min(d.rho.size(), K);
      F.mor_map.push_back(arrow_of.at({obj, bit}));
    }
    for (int a = 0; a < fs.smc->num_objects(); ++a)
      for (int b = 0; b < fs.smc->num_objects(); ++b) {
        if (fs.smc->concat(a, b) < 0) continue;
        const int fa = F.object_map[static_cast<size_t>(a)];
        const int fb = F.object_map[static_cast<size_t>(b)];
        F.coherence[{a, b}] = arrow_of.at({tadd(fa, fb), u[static_cast<size_t>(fa)][static_cast<size_t>(fb)]});
      }
    F.unit_coherence = arrow_of.at({0, u0});
    return F;
  };

  std::vector<std::vector<int>> u(static_cast<size_t>(K) + 1,
                                  std::vector<int>(static_cast<size_t>(K) + 1, 0));
  for (int x = 0; x <= K; ++x)
    for (int y = 0; y <= K; ++y) u[static_cast<size_t>(x)][static_cast<size_t>(y)] = rng() & 1;
  const int u0 = static_cast<int>(rng() & 1);
  std::vector<std::vector<int>> zero(static_cast<size_t>(K) + 1,
                                     std::vector<int>(static_cast<size_t>(K) + 1, 0));

  TwistedInstance out;
  out.weak = build_weak(u, u0);
  out.twisted = build_functor(out.weak, u, u0);
  auto plain_weak = build_weak(zero, 0);
  out.plain = build_functor(plain_weak, zero, 0);
  return out;
}

}  // namespace opdkit::testkit
