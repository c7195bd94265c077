#include <algorithm>
#include <set>

#include "opdkit/smc.hpp"

namespace opdkit::smc {

int WeakSMC::tmor(int f, int g) const {
  auto it = tensor_mor.find({f, g});
  return it == tensor_mor.end() ? -1 : it->second;
}

namespace {

bool iso_with(const cat::FinCategory& c, int arrow) { return cat::is_iso(c, arrow); }

}  // namespace

CheckReport validate_weak_smc(const WeakSMC& w) {
  CheckReport r = CheckReport::pass("validate_weak_smc", 0);
  const cat::FinCategory& c = *w.cat;

  {
    const auto inner = cat::validate_category(c);
    r.coverage += inner.coverage;
    if (!inner.verdict)
      return CheckReport::fail(r.check, 0, json{{"law", "category axioms"}, {"inner", inner.witness}});
  }

  const int n = c.num_objects();
  if (w.unit < 0 || w.unit >= n) throw input_error("weak SMC: bad unit object");
  if (static_cast<int>(w.tensor_obj.size()) != n) throw input_error("weak SMC: tensor table size");

  // Tensor of morphisms: totality, endpoints, functoriality.
  for (int f = 0; f < c.num_arrows(); ++f) {
    const auto& af = c.arrows[static_cast<size_t>(f)];
    for (int g = 0; g < c.num_arrows(); ++g) {
      const auto& ag = c.arrows[static_cast<size_t>(g)];
      ++r.coverage.checked;
      const int fg = w.tmor(f, g);
      if (fg < 0)
        return CheckReport::fail(r.check, 0, json{{"law", "tensor incomplete"},
                                                  {"pair", json{af.name, ag.name}}});
      const auto& a = c.arrows[static_cast<size_t>(fg)];
      if (a.dom != w.tobj(af.dom, ag.dom) || a.cod != w.tobj(af.cod, ag.cod))
        return CheckReport::fail(r.check, 0, json{{"law", "tensor endpoints"},
                                                  {"pair", json{af.name, ag.name}}});
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      ++r.coverage.checked;
      if (w.tmor(c.identity[static_cast<size_t>(x)], c.identity[static_cast<size_t>(y)]) !=
          c.identity[static_cast<size_t>(w.tobj(x, y))])
        return CheckReport::fail(r.check, 0, json{{"law", "tensor of identities"}});
    }
  for (int f = 0; f < c.num_arrows(); ++f) {
    const auto& af = c.arrows[static_cast<size_t>(f)];
    for (int f2 : c.arrows_from(af.cod))
      for (int g = 0; g < c.num_arrows(); ++g) {
        const auto& ag = c.arrows[static_cast<size_t>(g)];
        for (int g2 : c.arrows_from(ag.cod)) {
          ++r.coverage.checked;
          const int lhs = w.tmor(c.compose(f2, f), c.compose(g2, g));
          const int rhs = c.compose(w.tmor(f2, g2), w.tmor(f, g));
          if (lhs != rhs || lhs < 0)
            return CheckReport::fail(r.check, 0, json{{"law", "interchange"},
                                                      {"pair", json{af.name, ag.name}}});
        }
      }
  }

  // Coherence families: endpoints, invertibility, naturality.
  auto check_component = [&](int arrow, int dom, int cod, const char* what) -> bool {
    if (arrow < 0 || arrow >= c.num_arrows()) return false;
    const auto& a = c.arrows[static_cast<size_t>(arrow)];
    (void)what;
    return a.dom == dom && a.cod == cod && iso_with(c, arrow);
  };

  for (int x = 0; x < n; ++x) {
    ++r.coverage.checked;
    if (!check_component(w.left_unitor[static_cast<size_t>(x)], w.tobj(w.unit, x), x, "l") ||
        !check_component(w.right_unitor[static_cast<size_t>(x)], w.tobj(x, w.unit), x, "r"))
      return CheckReport::fail(r.check, 0, json{{"law", "unitor components"},
                                                {"object", c.objects[static_cast<size_t>(x)]}});
    for (int y = 0; y < n; ++y) {
      ++r.coverage.checked;
      if (!check_component(w.symmetry[static_cast<size_t>(x)][static_cast<size_t>(y)],
                           w.tobj(x, y), w.tobj(y, x), "s"))
        return CheckReport::fail(r.check, 0, json{{"law", "symmetry components"}});
      for (int z = 0; z < n; ++z) {
        ++r.coverage.checked;
        if (!check_component(
                w.associator[static_cast<size_t>(x)][static_cast<size_t>(y)][static_cast<size_t>(z)],
                w.tobj(w.tobj(x, y), z), w.tobj(x, w.tobj(y, z)), "a"))
          return CheckReport::fail(r.check, 0, json{{"law", "associator components"}});
      }
    }
  }

  // Naturality of the three families.
  for (int f = 0; f < c.num_arrows(); ++f) {
    const auto& af = c.arrows[static_cast<size_t>(f)];
    // Unitors.
    ++r.coverage.checked;
    if (c.compose(w.left_unitor[static_cast<size_t>(af.cod)],
                  w.tmor(c.identity[static_cast<size_t>(w.unit)], f)) !=
        c.compose(f, w.left_unitor[static_cast<size_t>(af.dom)]))
      return CheckReport::fail(r.check, 0, json{{"law", "left unitor naturality"}, {"arrow", af.name}});
    if (c.compose(w.right_unitor[static_cast<size_t>(af.cod)],
                  w.tmor(f, c.identity[static_cast<size_t>(w.unit)])) !=
        c.compose(f, w.right_unitor[static_cast<size_t>(af.dom)]))
      return CheckReport::fail(r.check, 0, json{{"law", "right unitor naturality"}, {"arrow", af.name}});
    for (int g = 0; g < c.num_arrows(); ++g) {
      const auto& ag = c.arrows[static_cast<size_t>(g)];
      ++r.coverage.checked;
      if (c.compose(w.symmetry[static_cast<size_t>(af.cod)][static_cast<size_t>(ag.cod)],
                    w.tmor(f, g)) !=
          c.compose(w.tmor(g, f),
                    w.symmetry[static_cast<size_t>(af.dom)][static_cast<size_t>(ag.dom)]))
        return CheckReport::fail(r.check, 0,
                                 json{{"law", "symmetry naturality"},
                                      {"pair", json{af.name, ag.name}}});
      for (int h = 0; h < c.num_arrows(); ++h) {
        const auto& ah = c.arrows[static_cast<size_t>(h)];
        ++r.coverage.checked;
        const int lhs = c.compose(
            w.associator[static_cast<size_t>(af.cod)][static_cast<size_t>(ag.cod)][static_cast<size_t>(ah.cod)],
            w.tmor(w.tmor(f, g), h));
        const int rhs = c.compose(
            w.tmor(f, w.tmor(g, h)),
            w.associator[static_cast<size_t>(af.dom)][static_cast<size_t>(ag.dom)][static_cast<size_t>(ah.dom)]);
        if (lhs != rhs || lhs < 0)
          return CheckReport::fail(r.check, 0, json{{"law", "associator naturality"}});
      }
    }
  }

  // Pentagon, triangle, hexagon, involution.
  auto assoc = [&](int x, int y, int z) {
    return w.associator[static_cast<size_t>(x)][static_cast<size_t>(y)][static_cast<size_t>(z)];
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      ++r.coverage.checked;
      // Involution.
      if (c.compose(w.symmetry[static_cast<size_t>(y)][static_cast<size_t>(x)],
                    w.symmetry[static_cast<size_t>(x)][static_cast<size_t>(y)]) !=
          c.identity[static_cast<size_t>(w.tobj(x, y))])
        return CheckReport::fail(r.check, 0, json{{"law", "symmetry involution"}});
      // Triangle.
      ++r.coverage.checked;
      if (c.compose(w.tmor(c.identity[static_cast<size_t>(x)],
                           w.left_unitor[static_cast<size_t>(y)]),
                    assoc(x, w.unit, y)) !=
          w.tmor(w.right_unitor[static_cast<size_t>(x)], c.identity[static_cast<size_t>(y)]))
        return CheckReport::fail(r.check, 0, json{{"law", "triangle"}});
      for (int z = 0; z < n; ++z) {
        // Hexagon.
        ++r.coverage.checked;
        const int lhs = c.compose(
            assoc(y, z, x),
            c.compose(w.symmetry[static_cast<size_t>(x)][static_cast<size_t>(w.tobj(y, z))],
                      assoc(x, y, z)));
        const int rhs = c.compose(
            w.tmor(c.identity[static_cast<size_t>(y)],
                   w.symmetry[static_cast<size_t>(x)][static_cast<size_t>(z)]),
            c.compose(assoc(y, x, z),
                      w.tmor(w.symmetry[static_cast<size_t>(x)][static_cast<size_t>(y)],
                             c.identity[static_cast<size_t>(z)])));
        if (lhs != rhs || lhs < 0)
          return CheckReport::fail(r.check, 0, json{{"law", "hexagon"}});
        for (int v = 0; v < n; ++v) {
          // Pentagon.
          ++r.coverage.checked;
          const int p_lhs = c.compose(assoc(x, y, w.tobj(z, v)), assoc(w.tobj(x, y), z, v));
          const int p_rhs = c.compose(
              w.tmor(c.identity[static_cast<size_t>(x)], assoc(y, z, v)),
              c.compose(assoc(x, w.tobj(y, z), v),
                        w.tmor(assoc(x, y, z), c.identity[static_cast<size_t>(v)])));
          if (p_lhs != p_rhs || p_lhs < 0)
            return CheckReport::fail(r.check, 0, json{{"law", "pentagon"}});
        }
      }
    }

  return r;
}

CheckReport validate_strong_monoidal(const StrongMonoidalFunctor& f) {
  CheckReport r = CheckReport::pass("validate_strong_monoidal", f.source->bound);
  const BoundedSMC& s = *f.source;
  const WeakSMC& w = *f.target;
  const cat::FinCategory& t = *w.cat;

  // Underlying functor.
  for (int mor = 0; mor < s.num_mors(); ++mor) {
    const auto& ms = s.mors[static_cast<size_t>(mor)];
    const int im = f.mor_map[static_cast<size_t>(mor)];
    ++r.coverage.checked;
    if (im < 0 || t.arrows[static_cast<size_t>(im)].dom != f.object_map[static_cast<size_t>(ms.dom)] ||
        t.arrows[static_cast<size_t>(im)].cod != f.object_map[static_cast<size_t>(ms.cod)])
      return CheckReport::fail(r.check, r.bound, json{{"law", "endpoints"}, {"mor", ms.name}});
  }
  for (int a = 0; a < s.num_objects(); ++a) {
    ++r.coverage.checked;
    if (f.mor_map[static_cast<size_t>(s.identity[static_cast<size_t>(a)])] !=
        t.identity[static_cast<size_t>(f.object_map[static_cast<size_t>(a)])])
      return CheckReport::fail(r.check, r.bound, json{{"law", "identities"}});
  }
  for (int x = 0; x < s.num_mors(); ++x) {
    const auto& mx = s.mors[static_cast<size_t>(x)];
    for (int cod2 = 0; cod2 < s.num_objects(); ++cod2)
      for (int g : s.hom(mx.cod, cod2)) {
        ++r.coverage.checked;
        if (f.mor_map[static_cast<size_t>(s.compose(g, x))] !=
            t.compose(f.mor_map[static_cast<size_t>(g)], f.mor_map[static_cast<size_t>(x)]))
          return CheckReport::fail(r.check, r.bound, json{{"law", "composition"}});
      }
  }

  const int empty_obj = s.object_of({});
  // Unit coherence.
  ++r.coverage.checked;
  if (f.unit_coherence < 0 ||
      t.arrows[static_cast<size_t>(f.unit_coherence)].dom !=
          f.object_map[static_cast<size_t>(empty_obj)] ||
      t.arrows[static_cast<size_t>(f.unit_coherence)].cod != w.unit ||
      !cat::is_iso(t, f.unit_coherence))
    return CheckReport::fail(r.check, r.bound, json{{"law", "unit coherence"}});

  // Binary coherences: endpoints and invertibility.
  auto coh = [&](int a, int b) {
    auto it = f.coherence.find({a, b});
    return it == f.coherence.end() ? -1 : it->second;
  };
  for (int a = 0; a < s.num_objects(); ++a)
    for (int b = 0; b < s.num_objects(); ++b) {
      const int ab = s.concat(a, b);
      if (ab < 0) {
        ++r.coverage.skipped;
        continue;
      }
      ++r.coverage.checked;
      const int cc = coh(a, b);
      if (cc < 0 ||
          t.arrows[static_cast<size_t>(cc)].dom != f.object_map[static_cast<size_t>(ab)] ||
          t.arrows[static_cast<size_t>(cc)].cod !=
              w.tobj(f.object_map[static_cast<size_t>(a)], f.object_map[static_cast<size_t>(b)]) ||
          !cat::is_iso(t, cc))
        return CheckReport::fail(r.check, r.bound, json{{"law", "coherence components"}});
    }

  // Naturality of the coherence.
  {
    json failure;
    s.for_each_tensorable_pair([&](int u, int v) {
      if (!failure.is_null()) return;
      ++r.coverage.checked;
      const auto& mu = s.mors[static_cast<size_t>(u)];
      const auto& mv = s.mors[static_cast<size_t>(v)];
      const int uv = s.tensor(u, v);
      const int lhs = t.compose(coh(mu.cod, mv.cod), f.mor_map[static_cast<size_t>(uv)]);
      const int rhs = t.compose(
          w.tmor(f.mor_map[static_cast<size_t>(u)], f.mor_map[static_cast<size_t>(v)]),
          coh(mu.dom, mv.dom));
      if (lhs != rhs || lhs < 0) failure = json{{"law", "coherence naturality"}};
    });
    if (!failure.is_null()) return CheckReport::fail(r.check, r.bound, failure);
  }

  // Colax associativity against the target associator.
  for (int a = 0; a < s.num_objects(); ++a)
    for (int b = 0; b < s.num_objects(); ++b) {
      const int ab = s.concat(a, b);
      if (ab < 0) continue;
      for (int cobj = 0; cobj < s.num_objects(); ++cobj) {
        const int bc = s.concat(b, cobj);
        const int abc = bc >= 0 ? s.concat(a, bc) : -1;
        if (bc < 0 || abc < 0) {
          ++r.coverage.skipped;
          continue;
        }
        ++r.coverage.checked;
        const int fa = f.object_map[static_cast<size_t>(a)];
        const int fb = f.object_map[static_cast<size_t>(b)];
        const int fc = f.object_map[static_cast<size_t>(cobj)];
        const int lhs = t.compose(
            w.associator[static_cast<size_t>(fa)][static_cast<size_t>(fb)][static_cast<size_t>(fc)],
            t.compose(w.tmor(coh(a, b), t.identity[static_cast<size_t>(fc)]), coh(ab, cobj)));
        const int rhs =
            t.compose(w.tmor(t.identity[static_cast<size_t>(fa)], coh(b, cobj)), coh(a, bc));
        if (lhs != rhs || lhs < 0)
          return CheckReport::fail(r.check, r.bound, json{{"law", "coherence associativity"}});
      }
    }

  // Unit axioms.
  for (int a = 0; a < s.num_objects(); ++a) {
    const int fa = f.object_map[static_cast<size_t>(a)];
    ++r.coverage.checked;
    const int left = t.compose(
        w.left_unitor[static_cast<size_t>(fa)],
        t.compose(w.tmor(f.unit_coherence, t.identity[static_cast<size_t>(fa)]), coh(empty_obj, a)));
    if (left != t.identity[static_cast<size_t>(fa)])
      return CheckReport::fail(r.check, r.bound, json{{"law", "left unit axiom"}});
    const int right = t.compose(
        w.right_unitor[static_cast<size_t>(fa)],
        t.compose(w.tmor(t.identity[static_cast<size_t>(fa)], f.unit_coherence), coh(a, empty_obj)));
    if (right != t.identity[static_cast<size_t>(fa)])
      return CheckReport::fail(r.check, r.bound, json{{"law", "right unit axiom"}});
  }

  // Symmetry compatibility: s_{Fa,Fb} o coh_{a,b} = coh_{b,a} o F(block swap).
  for (int a = 0; a < s.num_objects(); ++a)
    for (int b = 0; b < s.num_objects(); ++b) {
      const int ab = s.concat(a, b);
      if (ab < 0) {
        ++r.coverage.skipped;
        continue;
      }
      ++r.coverage.checked;
      const int fa = f.object_map[static_cast<size_t>(a)];
      const int fb = f.object_map[static_cast<size_t>(b)];
      const auto swap = perm::block_perm(
          perm::Permutation({2, 1}),
          {static_cast<int>(s.objects[static_cast<size_t>(a)].size()),
           static_cast<int>(s.objects[static_cast<size_t>(b)].size())});
      const int lhs = t.compose(w.symmetry[static_cast<size_t>(fa)][static_cast<size_t>(fb)],
                                coh(a, b));
      const int rhs =
          t.compose(coh(b, a), f.mor_map[static_cast<size_t>(s.sym(swap, ab))]);
      if (lhs != rhs || lhs < 0)
        return CheckReport::fail(r.check, r.bound, json{{"law", "coherence symmetry"}});
    }

  return r;
}

Strictification strictify(const StrongMonoidalFunctor& f) {
  {
    const auto input = validate_strong_monoidal(f);
    if (!input.verdict)
      throw input_error("strictify: input coherence axioms fail: " + input.witness.dump());
  }
  const BoundedSMC& s = *f.source;
  const WeakSMC& w = *f.target;
  const cat::FinCategory& t = *w.cat;

  auto mp = std::make_shared<BoundedSMC>();
  mp->init(s.colours, s.bound);

  // One morphism per (a, b, target arrow F a -> F b).
  std::map<std::tuple<int, int, int>, int> index;
  std::vector<int> to_target;
  for (int a = 0; a < mp->num_objects(); ++a) {
    for (int b = 0; b < mp->num_objects(); ++b) {
      for (int u : t.hom(f.object_map[static_cast<size_t>(a)], f.object_map[static_cast<size_t>(b)])) {
        const int mor =
            mp->add_mor(sequence_name(mp->objects[static_cast<size_t>(a)], mp->colours) + ":" +
                            sequence_name(mp->objects[static_cast<size_t>(b)], mp->colours) + ":" +
                            t.arrows[static_cast<size_t>(u)].name,
                        a, b);
        index[{a, b, u}] = mor;
        to_target.push_back(u);
        if (a == b && u == t.identity[static_cast<size_t>(f.object_map[static_cast<size_t>(a)])])
          mp->set_identity(a, mor);
      }
    }
  }
  mp->freeze();

  for (int m1 = 0; m1 < mp->num_mors(); ++m1) {
    const auto& a1 = mp->mors[static_cast<size_t>(m1)];
    for (int cod2 = 0; cod2 < mp->num_objects(); ++cod2)
      for (int m2 : mp->hom(a1.cod, cod2))
        mp->set_compose(m2, m1,
                        index.at({a1.dom, cod2,
                                  t.compose(to_target[static_cast<size_t>(m2)],
                                            to_target[static_cast<size_t>(m1)])}));
  }

  auto coh = [&](int a, int b) { return f.coherence.at({a, b}); };

  // Tensor: conjugate the target tensor by the coherences.
  {
    std::map<std::pair<int, int>, int> coh_inverse;
    mp->for_each_tensorable_pair([&](int m1, int m2) {
      const auto& a1 = mp->mors[static_cast<size_t>(m1)];
      const auto& a2 = mp->mors[static_cast<size_t>(m2)];
      const int dom = mp->concat(a1.dom, a2.dom);
      const int cod = mp->concat(a1.cod, a2.cod);
      const int inner = w.tmor(to_target[static_cast<size_t>(m1)], to_target[static_cast<size_t>(m2)]);
      auto it = coh_inverse.find({a1.cod, a2.cod});
      if (it == coh_inverse.end())
        it = coh_inverse.emplace(std::make_pair(a1.cod, a2.cod),
                                 *cat::inverse_of(t, coh(a1.cod, a2.cod))).first;
      const int u = t.compose(it->second, t.compose(inner, coh(a1.dom, a2.dom)));
      mp->set_tensor(m1, m2, index.at({dom, cod, u}));
    });
  }

  // Symmetries: images of the free symmetries of the source.
  for (int a = 0; a < s.num_objects(); ++a) {
    const int nn = static_cast<int>(s.objects[static_cast<size_t>(a)].size());
    for (const auto& rho : perm::all_permutations(nn)) {
      const int src_sym = s.sym(rho, a);
      const int cod = s.mors[static_cast<size_t>(src_sym)].cod;
      mp->set_sym(rho, a, index.at({a, cod, f.mor_map[static_cast<size_t>(src_sym)]}));
    }
  }

  Strictification out;
  out.strict_smc = mp;
  out.strict_functor.reserve(static_cast<size_t>(s.num_mors()));
  for (int mor = 0; mor < s.num_mors(); ++mor) {
    const auto& ms = s.mors[static_cast<size_t>(mor)];
    out.strict_functor.push_back(index.at({ms.dom, ms.cod, f.mor_map[static_cast<size_t>(mor)]}));
  }
  out.embed.source = mp;
  out.embed.target = f.target;
  out.embed.object_map = f.object_map;
  out.embed.mor_map = to_target;
  out.embed.coherence = f.coherence;
  out.embed.unit_coherence = f.unit_coherence;
  return out;
}

}  // namespace opdkit::smc
