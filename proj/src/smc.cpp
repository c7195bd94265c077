#include "opdkit/smc.hpp"

#include <algorithm>
#include <sstream>

namespace opdkit::smc {

std::string sequence_name(const Sequence& s, const std::vector<std::string>& colours) {
  std::string n = "(";
  for (size_t k = 0; k < s.size(); ++k)
    n += (k ? "," : "") + colours[static_cast<size_t>(s[k])];
  return n + ")";
}

std::vector<Sequence> enumerate_sequences(int colours, int bound) {
  std::vector<Sequence> out{{}};
  std::vector<Sequence> frontier{{}};
  for (int len = 1; len <= bound; ++len) {
    std::vector<Sequence> next;
    for (const auto& s : frontier)
      for (int c = 0; c < colours; ++c) {
        Sequence t = s;
        t.push_back(c);
        next.push_back(std::move(t));
      }
    check_enum_budget(out.size() + next.size(), "bounded object sequences");
    for (auto& s : next) out.push_back(s);
    frontier = std::move(next);
  }
  return out;
}

int BoundedSMC::object_of(const Sequence& s) const {
  auto it = object_index_.find(s);
  return it == object_index_.end() ? -1 : it->second;
}

int BoundedSMC::concat(int a, int b) const {
  Sequence s = objects[static_cast<size_t>(a)];
  const Sequence& t = objects[static_cast<size_t>(b)];
  s.insert(s.end(), t.begin(), t.end());
  return object_of(s);
}

int BoundedSMC::compose(int g, int f) const {
  auto it = comp_.find(key(g, f));
  return it == comp_.end() ? -1 : it->second;
}

int BoundedSMC::tensor(int f, int g) const {
  auto it = tensor_.find(key(f, g));
  return it == tensor_.end() ? -1 : it->second;
}

int BoundedSMC::sym(const perm::Permutation& rho, int obj) const {
  auto it = sym_.find({obj, rho.images});
  return it == sym_.end() ? -1 : it->second;
}

const std::vector<int>& BoundedSMC::hom(int dom, int cod) const {
  return hom_[static_cast<size_t>(dom) * objects.size() + static_cast<size_t>(cod)];
}

int BoundedSMC::tensor_fold(const std::vector<int>& ms) const {
  int acc = identity[static_cast<size_t>(object_of({}))];
  for (int m : ms) {
    acc = tensor(acc, m);
    if (acc < 0) return -1;
  }
  return acc;
}

void BoundedSMC::init(std::vector<std::string> colour_names, int bound_) {
  colours = std::move(colour_names);
  bound = bound_;
  objects = enumerate_sequences(static_cast<int>(colours.size()), bound);
  for (int i = 0; i < num_objects(); ++i) object_index_[objects[static_cast<size_t>(i)]] = i;
  identity.assign(objects.size(), -1);
}

int BoundedSMC::add_mor(std::string name, int dom, int cod) {
  const int m = num_mors();
  mors.push_back(SmcMor{std::move(name), dom, cod});
  return m;
}

void BoundedSMC::set_compose(int g, int f, int gf) { comp_[key(g, f)] = gf; }
void BoundedSMC::set_tensor(int f, int g, int fg) { tensor_[key(f, g)] = fg; }

void BoundedSMC::set_sym(const perm::Permutation& rho, int obj, int mor) {
  sym_[{obj, rho.images}] = mor;
}

void BoundedSMC::visit_tensors(const std::function<void(int, int, int)>& fn) const {
  const auto n = static_cast<std::uint64_t>(mors.size());
  for (const auto& [k, fg] : tensor_)
    fn(static_cast<int>(k / n), static_cast<int>(k % n), fg);
}

void BoundedSMC::for_each_tensorable_pair(const std::function<void(int, int)>& fn) const {
  // Nonempty hom buckets keyed by (|dom|, |cod|).
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> buckets;
  for (int d = 0; d < num_objects(); ++d)
    for (int c = 0; c < num_objects(); ++c)
      if (!hom(d, c).empty())
        buckets[{static_cast<int>(objects[static_cast<size_t>(d)].size()),
                 static_cast<int>(objects[static_cast<size_t>(c)].size())}]
            .emplace_back(d, c);
  for (const auto& [k1, b1] : buckets)
    for (const auto& [k2, b2] : buckets) {
      if (k1.first + k2.first > bound || k1.second + k2.second > bound) continue;
      for (const auto& [d1, c1] : b1)
        for (const auto& [d2, c2] : b2)
          for (int f : hom(d1, c1))
            for (int g : hom(d2, c2)) fn(f, g);
    }
}

void BoundedSMC::freeze() {
  hom_.assign(objects.size() * objects.size(), {});
  hom_pos_.assign(mors.size(), -1);
  for (int m = 0; m < num_mors(); ++m) {
    auto& list = hom_[static_cast<size_t>(mors[static_cast<size_t>(m)].dom) * objects.size() +
                      static_cast<size_t>(mors[static_cast<size_t>(m)].cod)];
    hom_pos_[static_cast<size_t>(m)] = static_cast<int>(list.size());
    list.push_back(m);
  }
}

cat::CatPtr as_category(const BoundedSMC& m) {
  std::vector<std::string> names;
  names.reserve(m.objects.size());
  for (const auto& s : m.objects) names.push_back(sequence_name(s, m.colours));
  std::vector<cat::Arrow> arrows;
  arrows.reserve(m.mors.size());
  for (const auto& mor : m.mors) arrows.push_back(cat::Arrow{mor.name, mor.dom, mor.cod});
  return cat::FinCategory::make(std::move(names), std::move(arrows), m.identity,
                                [&m](int g, int f) { return m.compose(g, f); });
}

namespace {

json mor_json(const BoundedSMC& m, int mor) {
  return json{
      {"mor", m.mors[static_cast<size_t>(mor)].name},
      {"dom", sequence_name(m.objects[static_cast<size_t>(m.mors[static_cast<size_t>(mor)].dom)],
                            m.colours)},
      {"cod", sequence_name(m.objects[static_cast<size_t>(m.mors[static_cast<size_t>(mor)].cod)],
                            m.colours)}};
}

}  // namespace

CheckReport validate_smc(const BoundedSMC& m) {
  CheckReport r = CheckReport::pass("validate_smc", m.bound);

  {
    const auto cat_report = cat::validate_category(*as_category(m));
    r.coverage += cat_report.coverage;
    if (!cat_report.verdict)
      return CheckReport::fail(r.check, m.bound,
                               json{{"law", "category axioms"}, {"inner", cat_report.witness}});
  }

  const int empty_obj = m.object_of({});
  const int id_empty = m.identity[static_cast<size_t>(empty_obj)];

  // Tensor table: totality with correct endpoints on in-bound pairs, no
  // spurious out-of-bound entries, unit row/column.
  {
    json failure;
    std::uint64_t expected = 0;
    m.for_each_tensorable_pair([&](int f, int g) {
      ++expected;
      ++r.coverage.checked;
      if (!failure.is_null()) return;
      const auto& mf = m.mors[static_cast<size_t>(f)];
      const auto& mg = m.mors[static_cast<size_t>(g)];
      const int fg = m.tensor(f, g);
      if (fg < 0) {
        failure = json{{"law", "tensor table incomplete"},
                       {"pair", json{mor_json(m, f), mor_json(m, g)}}};
        return;
      }
      if (m.mors[static_cast<size_t>(fg)].dom != m.concat(mf.dom, mg.dom) ||
          m.mors[static_cast<size_t>(fg)].cod != m.concat(mf.cod, mg.cod))
        failure = json{{"law", "tensor endpoints"},
                       {"pair", json{mor_json(m, f), mor_json(m, g)}}};
    });
    if (!failure.is_null()) return CheckReport::fail(r.check, m.bound, failure);
    std::uint64_t entries = 0;
    m.visit_tensors([&](int f, int g, int) {
      ++entries;
      const auto& mf = m.mors[static_cast<size_t>(f)];
      const auto& mg = m.mors[static_cast<size_t>(g)];
      if (failure.is_null() &&
          (m.concat(mf.dom, mg.dom) < 0 || m.concat(mf.cod, mg.cod) < 0))
        failure = json{{"law", "tensor out of bound"},
                       {"pair", json{mor_json(m, f), mor_json(m, g)}}};
    });
    if (!failure.is_null()) return CheckReport::fail(r.check, m.bound, failure);
    (void)entries;
    for (int f = 0; f < m.num_mors(); ++f) {
      ++r.coverage.checked;
      if (m.tensor(f, id_empty) != f || m.tensor(id_empty, f) != f)
        return CheckReport::fail(r.check, m.bound,
                                 json{{"law", "tensor unit"}, {"mor", mor_json(m, f)}});
    }
  }

  for (int a = 0; a < m.num_objects(); ++a)
    for (int b = 0; b < m.num_objects(); ++b) {
      const int ab = m.concat(a, b);
      if (ab < 0) {
        ++r.coverage.skipped;
        continue;
      }
      ++r.coverage.checked;
      if (m.tensor(m.identity[static_cast<size_t>(a)], m.identity[static_cast<size_t>(b)]) !=
          m.identity[static_cast<size_t>(ab)])
        return CheckReport::fail(
            r.check, m.bound,
            json{{"law", "tensor of identities"},
                 {"objects", json{sequence_name(m.objects[static_cast<size_t>(a)], m.colours),
                                  sequence_name(m.objects[static_cast<size_t>(b)], m.colours)}}});
    }

  // Tensor associativity on triples whose both concatenations stay in bound.
  {
    // Morphisms grouped by (|dom|, |cod|).
    std::map<std::pair<int, int>, std::vector<int>> mors_by_lens;
    for (int h = 0; h < m.num_mors(); ++h)
      mors_by_lens[{static_cast<int>(
                        m.objects[static_cast<size_t>(m.mors[static_cast<size_t>(h)].dom)].size()),
                    static_cast<int>(
                        m.objects[static_cast<size_t>(m.mors[static_cast<size_t>(h)].cod)].size())}]
          .push_back(h);
    json failure;
    m.for_each_tensorable_pair([&](int f, int g) {
      if (!failure.is_null()) return;
      const int fg = m.tensor(f, g);
      const auto& mfg = m.mors[static_cast<size_t>(fg)];
      const int ld = static_cast<int>(m.objects[static_cast<size_t>(mfg.dom)].size());
      const int lc = static_cast<int>(m.objects[static_cast<size_t>(mfg.cod)].size());
      for (const auto& [lens, hs] : mors_by_lens) {
        if (ld + lens.first > m.bound || lc + lens.second > m.bound) continue;
        for (int h : hs) {
          ++r.coverage.checked;
          const int fg_h = m.tensor(fg, h);
          const int gh = m.tensor(g, h);
          const int f_gh = gh >= 0 ? m.tensor(f, gh) : -1;
          if (fg_h != f_gh || fg_h < 0) {
            failure = json{{"law", "tensor associativity"},
                           {"triple", json{mor_json(m, f), mor_json(m, g), mor_json(m, h)}}};
            return;
          }
        }
      }
    });
    if (!failure.is_null()) return CheckReport::fail(r.check, m.bound, failure);
  }

  // Interchange over pairs of composable pairs.
  for (int xa = 0; xa < m.num_objects(); ++xa)
    for (int xb = 0; xb < m.num_objects(); ++xb) {
      if (m.hom(xa, xb).empty()) continue;
      for (int xc = 0; xc < m.num_objects(); ++xc) {
        if (m.hom(xb, xc).empty()) continue;
        for (int ya = 0; ya < m.num_objects(); ++ya) {
          if (m.concat(xa, ya) < 0) continue;
          for (int yb = 0; yb < m.num_objects(); ++yb) {
            if (m.concat(xb, yb) < 0 || m.hom(ya, yb).empty()) continue;
            for (int yc = 0; yc < m.num_objects(); ++yc) {
              if (m.concat(xc, yc) < 0 || m.hom(yb, yc).empty()) continue;
              for (int u : m.hom(xa, xb))
                for (int u2 : m.hom(xb, xc))
                  for (int v : m.hom(ya, yb))
                    for (int v2 : m.hom(yb, yc)) {
                      ++r.coverage.checked;
                      const int lhs = m.tensor(m.compose(u2, u), m.compose(v2, v));
                      const int rhs = m.compose(m.tensor(u2, v2), m.tensor(u, v));
                      if (lhs != rhs || lhs < 0)
                        return CheckReport::fail(
                            r.check, m.bound,
                            json{{"law", "interchange"},
                                 {"quad", json{mor_json(m, u2), mor_json(m, u), mor_json(m, v2),
                                               mor_json(m, v)}}});
                    }
            }
          }
        }
      }
    }

  // Symmetry tables: totality, endpoints, identity and group action.
  for (int a = 0; a < m.num_objects(); ++a) {
    const auto& seq = m.objects[static_cast<size_t>(a)];
    const int n = static_cast<int>(seq.size());
    for (const auto& rho : perm::all_permutations(n)) {
      ++r.coverage.checked;
      const int s = m.sym(rho, a);
      if (s < 0)
        return CheckReport::fail(r.check, m.bound,
                                 json{{"law", "sym table incomplete"},
                                      {"object", sequence_name(seq, m.colours)},
                                      {"perm", perm::to_string(rho)}});
      const int expect_cod = m.object_of(perm::act_on_sequence(rho, seq));
      if (m.mors[static_cast<size_t>(s)].dom != a ||
          m.mors[static_cast<size_t>(s)].cod != expect_cod)
        return CheckReport::fail(r.check, m.bound,
                                 json{{"law", "sym endpoints"},
                                      {"object", sequence_name(seq, m.colours)},
                                      {"perm", perm::to_string(rho)}});
      if (rho.is_identity() && s != m.identity[static_cast<size_t>(a)])
        return CheckReport::fail(r.check, m.bound,
                                 json{{"law", "sym of identity permutation"},
                                      {"object", sequence_name(seq, m.colours)}});
      for (const auto& rho2 : perm::all_permutations(n)) {
        ++r.coverage.checked;
        const int s2 = m.sym(rho2, expect_cod);
        const int lhs = s2 >= 0 ? m.compose(s2, s) : -1;
        const int rhs = m.sym(perm::after(rho2, rho), a);
        if (lhs != rhs || lhs < 0)
          return CheckReport::fail(
              r.check, m.bound,
              json{{"law", "sym group action"},
                   {"object", sequence_name(seq, m.colours)},
                   {"perms", json{perm::to_string(rho), perm::to_string(rho2)}}});
      }
    }
  }

  // Naturality of the block-swap symmetry against tensor of morphisms.
  {
    json failure;
    m.for_each_tensorable_pair([&](int u, int v) {
      if (!failure.is_null()) return;
      ++r.coverage.checked;
      const auto& mu = m.mors[static_cast<size_t>(u)];
      const auto& mv = m.mors[static_cast<size_t>(v)];
      const int uv = m.tensor(u, v);
      const int vu = m.tensor(v, u);
      const perm::Permutation swap({2, 1});
      const auto dom_swap = perm::block_perm(
          swap, {static_cast<int>(m.objects[static_cast<size_t>(mu.dom)].size()),
                 static_cast<int>(m.objects[static_cast<size_t>(mv.dom)].size())});
      const auto cod_swap = perm::block_perm(
          swap, {static_cast<int>(m.objects[static_cast<size_t>(mu.cod)].size()),
                 static_cast<int>(m.objects[static_cast<size_t>(mv.cod)].size())});
      const int lhs = m.compose(m.sym(cod_swap, m.mors[static_cast<size_t>(uv)].cod), uv);
      const int rhs = m.compose(vu, m.sym(dom_swap, m.mors[static_cast<size_t>(uv)].dom));
      if (lhs != rhs || lhs < 0)
        failure = json{{"law", "sym naturality"},
                       {"pair", json{mor_json(m, u), mor_json(m, v)}}};
    });
    if (!failure.is_null()) return CheckReport::fail(r.check, m.bound, failure);
  }

  // Block sums of permutations tensor to the corresponding symmetries.
  for (int a = 0; a < m.num_objects(); ++a) {
    for (int b = 0; b < m.num_objects(); ++b) {
      const int ab = m.concat(a, b);
      if (ab < 0) {
        ++r.coverage.skipped;
        continue;
      }
      const int na = static_cast<int>(m.objects[static_cast<size_t>(a)].size());
      const int nb = static_cast<int>(m.objects[static_cast<size_t>(b)].size());
      for (const auto& ra : perm::all_permutations(na))
        for (const auto& rb : perm::all_permutations(nb)) {
          ++r.coverage.checked;
          const int lhs = m.sym(perm::block_sum({ra, rb}), ab);
          const int rhs = m.tensor(m.sym(ra, a), m.sym(rb, b));
          if (lhs != rhs || lhs < 0)
            return CheckReport::fail(
                r.check, m.bound,
                json{{"law", "sym block sum"},
                     {"objects", json{sequence_name(m.objects[static_cast<size_t>(a)], m.colours),
                                      sequence_name(m.objects[static_cast<size_t>(b)], m.colours)}},
                     {"perms", json{perm::to_string(ra), perm::to_string(rb)}}});
        }
    }
  }

  return r;
}

int FreeSmc::mor_of(int dom_object, const perm::Permutation& rho,
                    const std::vector<int>& labels) const {
  auto it = lookup_.find({dom_object, rho.images, labels});
  if (it == lookup_.end()) throw input_error("unknown labelled permutation");
  return it->second;
}

FreeSmc free_smc(const cat::CatPtr& c, int bound) {
  FreeSmc out;
  out.base = c;

  auto m = std::make_shared<BoundedSMC>();
  m->init(c->objects, bound);

  for (int d = 0; d < m->num_objects(); ++d) {
    const auto& xs = m->objects[static_cast<size_t>(d)];
    const int n = static_cast<int>(xs.size());
    for (const auto& rho : perm::all_permutations(n)) {
      std::vector<const std::vector<int>*> choices;
      for (int i = 1; i <= n; ++i)
        choices.push_back(&c->arrows_from(xs[static_cast<size_t>(i) - 1]));
      std::vector<size_t> pick(static_cast<size_t>(n), 0);
      for (;;) {
        std::vector<int> labels(static_cast<size_t>(n));
        Sequence cod_seq(static_cast<size_t>(n));
        for (int i = 1; i <= n; ++i) {
          const int f = (*choices[static_cast<size_t>(i) - 1])[pick[static_cast<size_t>(i) - 1]];
          labels[static_cast<size_t>(i) - 1] = f;
          cod_seq[static_cast<size_t>(rho(i)) - 1] = c->arrows[static_cast<size_t>(f)].cod;
        }
        const int cod = m->object_of(cod_seq);
        std::string nm = "[";
        for (int i = 0; i < n; ++i)
          nm += (i ? "," : "") + std::to_string(rho.images[static_cast<size_t>(i)]);
        nm += ";";
        for (int i = 0; i < n; ++i)
          nm += (i ? "," : "") +
                c->arrows[static_cast<size_t>(labels[static_cast<size_t>(i)])].name;
        nm += "]@" + sequence_name(xs, m->colours);
        const int mor = m->add_mor(std::move(nm), d, cod);
        out.mor_data.push_back(FreeSmc::LabelledPermutation{rho, labels});
        out.lookup_[{d, rho.images, labels}] = mor;
        check_enum_budget(static_cast<std::uint64_t>(mor) + 1, "free SMC morphisms");

        bool is_id = d == cod && rho.is_identity();
        for (int i = 0; is_id && i < n; ++i)
          is_id = labels[static_cast<size_t>(i)] ==
                  c->identity[static_cast<size_t>(xs[static_cast<size_t>(i)])];
        if (is_id) m->set_identity(d, mor);

        bool done = true;
        for (int i = 0; i < n; ++i) {
          if (++pick[static_cast<size_t>(i)] < choices[static_cast<size_t>(i)]->size()) {
            done = false;
            break;
          }
          pick[static_cast<size_t>(i)] = 0;
        }
        if (done) break;
      }
    }
  }
  m->freeze();

  // Composition: (rho2, (g_i)) o (rho1, (f_i)) = (rho2 o rho1, (g_{rho1 i} o f_i)).
  for (int f = 0; f < m->num_mors(); ++f) {
    const auto& df = out.mor_data[static_cast<size_t>(f)];
    const auto& mf = m->mors[static_cast<size_t>(f)];
    const int n = df.rho.size();
    for (int cod2 = 0; cod2 < m->num_objects(); ++cod2) {
      for (int g : m->hom(mf.cod, cod2)) {
        const auto& dg = out.mor_data[static_cast<size_t>(g)];
        std::vector<int> labels(static_cast<size_t>(n));
        for (int i = 1; i <= n; ++i)
          labels[static_cast<size_t>(i) - 1] =
              c->compose(dg.labels[static_cast<size_t>(df.rho(i)) - 1],
                         df.labels[static_cast<size_t>(i) - 1]);
        m->set_compose(g, f, out.mor_of(mf.dom, perm::after(dg.rho, df.rho), labels));
      }
    }
  }

  // Tensor: block sum of permutations, concatenated labels.
  m->for_each_tensorable_pair([&](int f, int g) {
    const auto& mf = m->mors[static_cast<size_t>(f)];
    const auto& mg = m->mors[static_cast<size_t>(g)];
    const int dom = m->concat(mf.dom, mg.dom);
    const auto& df = out.mor_data[static_cast<size_t>(f)];
    const auto& dg = out.mor_data[static_cast<size_t>(g)];
    std::vector<int> labels = df.labels;
    labels.insert(labels.end(), dg.labels.begin(), dg.labels.end());
    m->set_tensor(f, g, out.mor_of(dom, perm::block_sum({df.rho, dg.rho}), labels));
  });

  // Symmetries: pure permutations with identity labels.
  for (int a = 0; a < m->num_objects(); ++a) {
    const auto& xs = m->objects[static_cast<size_t>(a)];
    std::vector<int> id_labels;
    for (int x : xs) id_labels.push_back(c->identity[static_cast<size_t>(x)]);
    for (const auto& rho : perm::all_permutations(static_cast<int>(xs.size())))
      m->set_sym(rho, a, out.mor_of(a, rho, id_labels));
  }

  out.smc = m;
  return out;
}

PinnedSMC build_pinned(const cat::CatPtr& c, const SmcPtr& m, const std::vector<int>& arrow_pin) {
  if (m->colours != c->objects)
    throw input_error("pinned SMC: colours of the target must be the objects of the base");
  if (arrow_pin.size() != c->arrows.size())
    throw input_error("pinned SMC: pin table does not cover the base arrows");

  PinnedSMC p;
  p.base = c;
  p.target = m;
  p.free = std::make_shared<FreeSmc>(free_smc(c, m->bound));
  p.arrow_pin = arrow_pin;

  for (size_t a = 0; a < arrow_pin.size(); ++a) {
    const auto& ar = c->arrows[a];
    const int mor = arrow_pin[a];
    if (mor < 0 || mor >= m->num_mors()) throw input_error("pin of " + ar.name + " is dangling");
    const auto& mm = m->mors[static_cast<size_t>(mor)];
    if (m->objects[static_cast<size_t>(mm.dom)] != Sequence{ar.dom} ||
        m->objects[static_cast<size_t>(mm.cod)] != Sequence{ar.cod})
      throw input_error("pin of " + ar.name +
                        " is not a morphism between the matching singletons");
  }

  // tau(rho, (f_i)) = sym(rho, -) o (x)_i pin(f_i).
  const auto& sc = *p.free->smc;
  p.tau.resize(static_cast<size_t>(sc.num_mors()));
  for (int mor = 0; mor < sc.num_mors(); ++mor) {
    const auto& d = p.free->mor_data[static_cast<size_t>(mor)];
    std::vector<int> pins;
    pins.reserve(d.labels.size());
    for (int l : d.labels) pins.push_back(arrow_pin[static_cast<size_t>(l)]);
    const int folded = m->tensor_fold(pins);
    if (folded < 0) throw input_error("pin tensor fell outside the bound");
    const int s = m->sym(d.rho, m->mors[static_cast<size_t>(folded)].cod);
    const int t = s >= 0 ? m->compose(s, folded) : -1;
    if (t < 0) throw input_error("target tables are incomplete under the pin");
    p.tau[static_cast<size_t>(mor)] = t;
  }
  return p;
}

CheckReport validate_pinned(const PinnedSMC& p) {
  CheckReport r = CheckReport::pass("validate_pinned", p.bound());
  const BoundedSMC& sc = *p.free->smc;
  const BoundedSMC& m = *p.target;

  for (int a = 0; a < sc.num_objects(); ++a) {
    ++r.coverage.checked;
    if (p.tau[static_cast<size_t>(sc.identity[static_cast<size_t>(a)])] !=
        m.identity[static_cast<size_t>(a)])
      return CheckReport::fail(
          r.check, p.bound(),
          json{{"law", "tau identities"},
               {"object", sequence_name(sc.objects[static_cast<size_t>(a)], sc.colours)}});
  }
  for (int f = 0; f < sc.num_mors(); ++f) {
    const auto& mf = sc.mors[static_cast<size_t>(f)];
    for (int cod2 = 0; cod2 < sc.num_objects(); ++cod2)
      for (int g : sc.hom(mf.cod, cod2)) {
        ++r.coverage.checked;
        if (p.tau[static_cast<size_t>(sc.compose(g, f))] !=
            m.compose(p.tau[static_cast<size_t>(g)], p.tau[static_cast<size_t>(f)]))
          return CheckReport::fail(
              r.check, p.bound(),
              json{{"law", "tau composition"},
                   {"pair", json{sc.mors[static_cast<size_t>(g)].name, mf.name}}});
      }
  }
  {
    json failure;
    sc.for_each_tensorable_pair([&](int f, int g) {
      if (!failure.is_null()) return;
      ++r.coverage.checked;
      const int fg = sc.tensor(f, g);
      if (p.tau[static_cast<size_t>(fg)] !=
          m.tensor(p.tau[static_cast<size_t>(f)], p.tau[static_cast<size_t>(g)]))
        failure = json{{"law", "tau tensor"},
                       {"pair", json{sc.mors[static_cast<size_t>(f)].name,
                                     sc.mors[static_cast<size_t>(g)].name}}};
    });
    if (!failure.is_null()) return CheckReport::fail(r.check, p.bound(), failure);
  }
  for (const auto& [key, s] : sc.sym_table()) {
    ++r.coverage.checked;
    perm::Permutation rho;
    rho.images = key.second;
    if (p.tau[static_cast<size_t>(s)] != m.sym(rho, key.first))
      return CheckReport::fail(
          r.check, p.bound(),
          json{{"law", "tau symmetry"},
               {"object", sequence_name(sc.objects[static_cast<size_t>(key.first)], sc.colours)},
               {"perm", perm::to_string(rho)}});
  }
  return r;
}

PinnedSMC identity_pinning(const cat::CatPtr& c, int bound) {
  auto fs = free_smc(c, bound);
  std::vector<int> pin;
  pin.reserve(c->arrows.size());
  for (int a = 0; a < c->num_arrows(); ++a) {
    const auto& ar = c->arrows[static_cast<size_t>(a)];
    pin.push_back(fs.mor_of(fs.smc->object_of({ar.dom}), perm::Permutation::id(1), {a}));
  }
  return build_pinned(c, fs.smc, pin);
}

}  // namespace opdkit::smc
