#include "opdkit/fincat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace opdkit::cat {

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
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

json arrow_json(const FinCategory& c, int a) {
  const Arrow& ar = c.arrows[static_cast<size_t>(a)];
  return json{{"arrow", ar.name},
              {"dom", c.objects[static_cast<size_t>(ar.dom)]},
              {"cod", c.objects[static_cast<size_t>(ar.cod)]}};
}

}  // namespace

int FinCategory::object_index(const std::string& name) const {
  for (int i = 0; i < num_objects(); ++i)
    if (objects[static_cast<size_t>(i)] == name) return i;
  throw input_error("unknown object: " + name);
}

int FinCategory::arrow_index(const std::string& name) const {
  for (int i = 0; i < num_arrows(); ++i)
    if (arrows[static_cast<size_t>(i)].name == name) return i;
  throw input_error("unknown arrow: " + name);
}

void FinCategory::finalize() {
  const size_t no = objects.size();
  hom_.assign(no * no, {});
  from_.assign(no, {});
  for (int a = 0; a < num_arrows(); ++a) {
    const Arrow& ar = arrows[static_cast<size_t>(a)];
    if (ar.dom < 0 || ar.dom >= num_objects() || ar.cod < 0 || ar.cod >= num_objects())
      throw input_error("arrow " + ar.name + " has a dangling endpoint");
    hom_[static_cast<size_t>(ar.dom) * no + static_cast<size_t>(ar.cod)].push_back(a);
    from_[static_cast<size_t>(ar.dom)].push_back(a);
  }
}

std::shared_ptr<const FinCategory> FinCategory::make(std::vector<std::string> objects,
                                                     std::vector<Arrow> arrows,
                                                     std::vector<int> identities,
                                                     const std::function<int(int, int)>& compose_fn) {
  auto c = std::make_shared<FinCategory>();
  c->objects = std::move(objects);
  c->arrows = std::move(arrows);
  c->identity = std::move(identities);
  if (c->identity.size() != c->objects.size())
    throw input_error("identity table does not cover all objects");
  for (int x = 0; x < c->num_objects(); ++x) {
    const int id = c->identity[static_cast<size_t>(x)];
    if (id < 0 || id >= c->num_arrows()) throw input_error("dangling identity arrow index");
  }
  c->finalize();
  // Identity composites are forced; the callback fills the rest.
  for (int f = 0; f < c->num_arrows(); ++f) {
    const Arrow& af = c->arrows[static_cast<size_t>(f)];
    for (int g : c->arrows_from(af.cod)) {
      int gf;
      if (c->is_identity(g))
        gf = f;
      else if (c->is_identity(f))
        gf = g;
      else
        gf = compose_fn(g, f);
      if (gf >= 0) c->comp_[c->key(g, f)] = gf;
    }
  }
  return c;
}

CategoryBuilder& CategoryBuilder::object(const std::string& name) {
  objects_.push_back(name);
  return *this;
}

CategoryBuilder& CategoryBuilder::arrow(const std::string& name, const std::string& dom,
                                        const std::string& cod) {
  arrows_.emplace_back(name, dom, cod);
  return *this;
}

CategoryBuilder& CategoryBuilder::compose(const std::string& g, const std::string& f,
                                          const std::string& gf) {
  composites_.emplace_back(g, f, gf);
  return *this;
}

CatPtr CategoryBuilder::build() const {
  std::vector<std::string> objects = objects_;
  std::vector<Arrow> arrows;
  std::vector<int> identities;
  std::map<std::string, int> obj_idx, arr_idx;
  for (int i = 0; i < static_cast<int>(objects.size()); ++i) {
    if (!obj_idx.emplace(objects[static_cast<size_t>(i)], i).second)
      throw input_error("duplicate object: " + objects[static_cast<size_t>(i)]);
  }
  for (const auto& o : objects) {
    const std::string id_name = "id_" + o;
    arr_idx[id_name] = static_cast<int>(arrows.size());
    identities.push_back(static_cast<int>(arrows.size()));
    arrows.push_back(Arrow{id_name, obj_idx.at(o), obj_idx.at(o)});
  }
  for (const auto& [name, dom, cod] : arrows_) {
    if (arr_idx.count(name)) throw input_error("duplicate or reserved arrow name: " + name);
    auto di = obj_idx.find(dom);
    auto ci = obj_idx.find(cod);
    if (di == obj_idx.end()) throw input_error("arrow " + name + ": unknown object " + dom);
    if (ci == obj_idx.end()) throw input_error("arrow " + name + ": unknown object " + cod);
    arr_idx[name] = static_cast<int>(arrows.size());
    arrows.push_back(Arrow{name, di->second, ci->second});
  }
  std::map<std::pair<int, int>, int> table;
  for (const auto& [g, f, gf] : composites_) {
    auto gi = arr_idx.find(g), fi = arr_idx.find(f), ri = arr_idx.find(gf);
    if (gi == arr_idx.end()) throw input_error("compose: unknown arrow " + g);
    if (fi == arr_idx.end()) throw input_error("compose: unknown arrow " + f);
    if (ri == arr_idx.end()) throw input_error("compose: unknown arrow " + gf);
    const Arrow& ag = arrows[static_cast<size_t>(gi->second)];
    const Arrow& af = arrows[static_cast<size_t>(fi->second)];
    if (af.cod != ag.dom)
      throw input_error("compose " + g + " " + f + ": cod of " + f + " is not dom of " + g);
    const Arrow& ar = arrows[static_cast<size_t>(ri->second)];
    if (ar.dom != af.dom || ar.cod != ag.cod)
      throw input_error("compose " + g + " " + f + " = " + gf + ": endpoint mismatch");
    table[{gi->second, fi->second}] = ri->second;
  }
  return FinCategory::make(std::move(objects), std::move(arrows), std::move(identities),
                           [&table](int g, int f) {
                             auto it = table.find({g, f});
                             return it == table.end() ? -1 : it->second;
                           });
}

CatPtr discrete_category(const std::vector<std::string>& objects) {
  CategoryBuilder b;
  for (const auto& o : objects) b.object(o);
  return b.build();
}

CatPtr terminal_category() { return discrete_category({"*"}); }

CheckReport validate_category(const FinCategory& c) {
  CheckReport r = CheckReport::pass("validate_category", 0);
  for (int x = 0; x < c.num_objects(); ++x) {
    const int id = c.identity[static_cast<size_t>(x)];
    const Arrow& a = c.arrows[static_cast<size_t>(id)];
    ++r.coverage.checked;
    if (a.dom != x || a.cod != x)
      return CheckReport::fail(r.check, 0,
                               json{{"law", "identity endpoints"},
                                    {"object", c.objects[static_cast<size_t>(x)]}});
  }
  for (int f = 0; f < c.num_arrows(); ++f) {
    const Arrow& af = c.arrows[static_cast<size_t>(f)];
    ++r.coverage.checked;
    if (c.compose(c.identity[static_cast<size_t>(af.cod)], f) != f ||
        c.compose(f, c.identity[static_cast<size_t>(af.dom)]) != f)
      return CheckReport::fail(r.check, 0, json{{"law", "unit"}, {"arrow", af.name}});
  }
  // Totality with correct endpoints.
  for (int f = 0; f < c.num_arrows(); ++f) {
    const Arrow& af = c.arrows[static_cast<size_t>(f)];
    for (int g : c.arrows_from(af.cod)) {
      const Arrow& ag = c.arrows[static_cast<size_t>(g)];
      ++r.coverage.checked;
      const int gf = c.compose(g, f);
      if (gf < 0)
        return CheckReport::fail(r.check, 0,
                                 json{{"law", "composition table incomplete"},
                                      {"pair", json{arrow_json(c, g), arrow_json(c, f)}}});
      const Arrow& agf = c.arrows[static_cast<size_t>(gf)];
      if (agf.dom != af.dom || agf.cod != ag.cod)
        return CheckReport::fail(r.check, 0,
                                 json{{"law", "composite endpoints"},
                                      {"pair", json{arrow_json(c, g), arrow_json(c, f)}}});
    }
  }
  // Associativity over composable triples.
  for (int f = 0; f < c.num_arrows(); ++f) {
    const Arrow& af = c.arrows[static_cast<size_t>(f)];
    for (int g : c.arrows_from(af.cod)) {
      const Arrow& ag = c.arrows[static_cast<size_t>(g)];
      const int gf = c.compose(g, f);
      for (int h : c.arrows_from(ag.cod)) {
        ++r.coverage.checked;
        const int hg = c.compose(h, g);
        if (gf < 0 || hg < 0) continue;  // already reported as incompleteness
        if (c.compose(h, gf) != c.compose(hg, f))
          return CheckReport::fail(
              r.check, 0,
              json{{"law", "associativity"},
                   {"triple", json{arrow_json(c, h), arrow_json(c, g), arrow_json(c, f)}}});
      }
    }
  }
  return r;
}

FinFunctor identity_functor(const CatPtr& c) {
  FinFunctor f;
  f.source = c;
  f.target = c;
  f.object_map.resize(static_cast<size_t>(c->num_objects()));
  std::iota(f.object_map.begin(), f.object_map.end(), 0);
  f.arrow_map.resize(static_cast<size_t>(c->num_arrows()));
  std::iota(f.arrow_map.begin(), f.arrow_map.end(), 0);
  return f;
}

FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f) {
  if (g.source.get() != f.target.get())
    throw input_error("functor composition: middle categories differ");
  FinFunctor out;
  out.source = f.source;
  out.target = g.target;
  out.object_map.reserve(f.object_map.size());
  for (int x : f.object_map) out.object_map.push_back(g.on_object(x));
  out.arrow_map.reserve(f.arrow_map.size());
  for (int a : f.arrow_map) out.arrow_map.push_back(g.on_arrow(a));
  return out;
}

CheckReport validate_functor(const FinFunctor& f) {
  CheckReport r = CheckReport::pass("validate_functor", 0);
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  if (f.object_map.size() != s.objects.size() || f.arrow_map.size() != s.arrows.size())
    throw input_error("functor maps do not cover the source");
  for (int a = 0; a < s.num_arrows(); ++a) {
    const Arrow& ar = s.arrows[static_cast<size_t>(a)];
    const Arrow& im = t.arrows[static_cast<size_t>(f.on_arrow(a))];
    ++r.coverage.checked;
    if (im.dom != f.on_object(ar.dom) || im.cod != f.on_object(ar.cod))
      return CheckReport::fail(r.check, 0, json{{"law", "endpoints"}, {"arrow", ar.name}});
  }
  for (int x = 0; x < s.num_objects(); ++x) {
    ++r.coverage.checked;
    if (f.on_arrow(s.identity[static_cast<size_t>(x)]) !=
        t.identity[static_cast<size_t>(f.on_object(x))])
      return CheckReport::fail(r.check, 0,
                               json{{"law", "identities"}, {"object", s.objects[static_cast<size_t>(x)]}});
  }
  for (int g = 0; g < s.num_arrows(); ++g) {
    const Arrow& ag = s.arrows[static_cast<size_t>(g)];
    for (int h = 0; h < s.num_arrows(); ++h) {
      const Arrow& ah = s.arrows[static_cast<size_t>(h)];
      if (ah.dom != ag.cod) continue;
      ++r.coverage.checked;
      if (f.on_arrow(s.compose(h, g)) != t.compose(f.on_arrow(h), f.on_arrow(g)))
        return CheckReport::fail(
            r.check, 0, json{{"law", "composition"}, {"pair", json{ah.name, ag.name}}});
    }
  }
  return r;
}

FinNatTrans identity_nat_trans(const FinFunctor& f) {
  FinNatTrans t;
  t.source = f;
  t.target = f;
  t.components.reserve(f.object_map.size());
  for (int x = 0; x < f.source->num_objects(); ++x)
    t.components.push_back(f.target->identity[static_cast<size_t>(f.on_object(x))]);
  return t;
}

CheckReport validate_nat_trans(const FinNatTrans& t) {
  CheckReport r = CheckReport::pass("validate_nat_trans", 0);
  const FinFunctor& F = t.source;
  const FinFunctor& G = t.target;
  if (F.source.get() != G.source.get() || F.target.get() != G.target.get())
    throw input_error("natural transformation between non-parallel functors");
  const FinCategory& s = *F.source;
  const FinCategory& d = *F.target;
  if (t.components.size() != s.objects.size())
    throw input_error("component table does not cover the source objects");
  for (int x = 0; x < s.num_objects(); ++x) {
    const Arrow& comp = d.arrows[static_cast<size_t>(t.components[static_cast<size_t>(x)])];
    ++r.coverage.checked;
    if (comp.dom != F.on_object(x) || comp.cod != G.on_object(x))
      return CheckReport::fail(r.check, 0,
                               json{{"law", "component endpoints"},
                                    {"object", s.objects[static_cast<size_t>(x)]}});
  }
  for (int a = 0; a < s.num_arrows(); ++a) {
    const Arrow& ar = s.arrows[static_cast<size_t>(a)];
    ++r.coverage.checked;
    const int lhs = d.compose(t.components[static_cast<size_t>(ar.cod)], F.on_arrow(a));
    const int rhs = d.compose(G.on_arrow(a), t.components[static_cast<size_t>(ar.dom)]);
    if (lhs != rhs)
      return CheckReport::fail(r.check, 0, json{{"law", "naturality"}, {"arrow", ar.name}});
  }
  return r;
}

CheckReport validate_lax_square(const LaxSquare& s) {
  CheckReport r = CheckReport::pass("validate_lax_square", 0);
  if (s.p.source.get() != s.q.source.get()) throw input_error("lax square: p and q sources differ");
  if (s.f.source.get() != s.p.target.get()) throw input_error("lax square: f source is not p target");
  if (s.g.source.get() != s.q.target.get()) throw input_error("lax square: g source is not q target");
  if (s.f.target.get() != s.g.target.get()) throw input_error("lax square: f and g targets differ");
  r.absorb(validate_functor(s.p));
  r.absorb(validate_functor(s.q));
  r.absorb(validate_functor(s.f));
  r.absorb(validate_functor(s.g));
  r.absorb(validate_nat_trans(s.phi));
  return r;
}

namespace {

// Iso classes of objects; representative labels.
std::vector<int> iso_class_labels(const FinCategory& c) {
  UnionFind uf(c.num_objects());
  for (int a = 0; a < c.num_arrows(); ++a)
    if (is_iso(c, a)) uf.unite(c.arrows[static_cast<size_t>(a)].dom, c.arrows[static_cast<size_t>(a)].cod);
  std::vector<int> labels(static_cast<size_t>(c.num_objects()));
  for (int x = 0; x < c.num_objects(); ++x) labels[static_cast<size_t>(x)] = uf.find(x);
  return labels;
}

}  // namespace

FunctorProps functor_props(const FinFunctor& f) {
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  FunctorProps out;

  out.fully_faithful = true;
  for (int a = 0; a < s.num_objects() && out.fully_faithful; ++a) {
    for (int b = 0; b < s.num_objects() && out.fully_faithful; ++b) {
      const auto& src = s.hom(a, b);
      const auto& dst = t.hom(f.on_object(a), f.on_object(b));
      if (src.size() != dst.size()) {
        out.fully_faithful = false;
        break;
      }
      std::set<int> images;
      for (int x : src) images.insert(f.on_arrow(x));
      if (images.size() != src.size()) out.fully_faithful = false;
    }
  }

  {
    const auto labels = iso_class_labels(t);
    std::set<int> hit;
    for (int x = 0; x < s.num_objects(); ++x) hit.insert(labels[static_cast<size_t>(f.on_object(x))]);
    std::set<int> all(labels.begin(), labels.end());
    out.essentially_surjective = hit == all;
  }

  {
    std::set<int> images(f.object_map.begin(), f.object_map.end());
    out.bijective_on_objects =
        s.num_objects() == t.num_objects() && static_cast<int>(images.size()) == s.num_objects();
  }

  out.identity_on_objects = s.objects == t.objects;
  if (out.identity_on_objects)
    for (int x = 0; x < s.num_objects(); ++x)
      if (f.on_object(x) != x) {
        out.identity_on_objects = false;
        break;
      }

  out.equivalence = out.fully_faithful && out.essentially_surjective;
  return out;
}

GabrielFactorisation gabriel_factor_functor(const FinFunctor& f) {
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;

  std::vector<Arrow> mid_arrows;
  std::vector<int> mid_identity(static_cast<size_t>(s.num_objects()), -1);
  std::vector<int> mid_to_target;                  // mid arrow -> target arrow
  std::map<std::tuple<int, int, int>, int> index;  // (a, b, target arrow) -> mid arrow
  for (int a = 0; a < s.num_objects(); ++a) {
    for (int b = 0; b < s.num_objects(); ++b) {
      for (int u : t.hom(f.on_object(a), f.on_object(b))) {
        const int m = static_cast<int>(mid_arrows.size());
        mid_arrows.push_back(Arrow{s.objects[static_cast<size_t>(a)] + ":" +
                                       s.objects[static_cast<size_t>(b)] + ":" +
                                       t.arrows[static_cast<size_t>(u)].name,
                                   a, b});
        mid_to_target.push_back(u);
        index[{a, b, u}] = m;
        if (a == b && u == t.identity[static_cast<size_t>(f.on_object(a))])
          mid_identity[static_cast<size_t>(a)] = m;
      }
    }
  }
  const std::vector<Arrow> mid_arrows_copy = mid_arrows;
  auto mid = FinCategory::make(
      s.objects, std::move(mid_arrows), std::move(mid_identity),
      [&](int g, int h) {
        const Arrow& ag = mid_arrows_copy[static_cast<size_t>(g)];
        const Arrow& ah = mid_arrows_copy[static_cast<size_t>(h)];
        const int u = t.compose(mid_to_target[static_cast<size_t>(g)],
                                mid_to_target[static_cast<size_t>(h)]);
        return index.at({ah.dom, ag.cod, u});
      });

  GabrielFactorisation out;
  out.mid = mid;
  out.io.source = f.source;
  out.io.target = mid;
  out.io.object_map.resize(static_cast<size_t>(s.num_objects()));
  std::iota(out.io.object_map.begin(), out.io.object_map.end(), 0);
  for (int a = 0; a < s.num_arrows(); ++a) {
    const Arrow& ar = s.arrows[static_cast<size_t>(a)];
    out.io.arrow_map.push_back(index.at({ar.dom, ar.cod, f.on_arrow(a)}));
  }
  out.ff.source = mid;
  out.ff.target = f.target;
  out.ff.object_map = f.object_map;
  out.ff.arrow_map = mid_to_target;
  return out;
}

bool is_iso(const FinCategory& c, int arrow) { return inverse_of(c, arrow).has_value(); }

std::optional<int> inverse_of(const FinCategory& c, int arrow) {
  const Arrow& a = c.arrows[static_cast<size_t>(arrow)];
  for (int v : c.hom(a.cod, a.dom))
    if (c.compose(v, arrow) == c.identity[static_cast<size_t>(a.dom)] &&
        c.compose(arrow, v) == c.identity[static_cast<size_t>(a.cod)])
      return v;
  return std::nullopt;
}

bool is_groupoid(const FinCategory& c) {
  for (int a = 0; a < c.num_arrows(); ++a)
    if (!is_iso(c, a)) return false;
  return true;
}

IsoCore iso_core(const CatPtr& c) {
  std::vector<Arrow> arrows;
  std::vector<int> to_base;
  std::vector<int> base_to_core(static_cast<size_t>(c->num_arrows()), -1);
  std::vector<int> identities(static_cast<size_t>(c->num_objects()), -1);
  for (int a = 0; a < c->num_arrows(); ++a) {
    if (!is_iso(*c, a)) continue;
    const int m = static_cast<int>(arrows.size());
    arrows.push_back(c->arrows[static_cast<size_t>(a)]);
    to_base.push_back(a);
    base_to_core[static_cast<size_t>(a)] = m;
  }
  for (int x = 0; x < c->num_objects(); ++x)
    identities[static_cast<size_t>(x)] = base_to_core[static_cast<size_t>(c->identity[static_cast<size_t>(x)])];
  auto core = FinCategory::make(c->objects, std::move(arrows), std::move(identities),
                                [&](int g, int f) {
                                  return base_to_core[static_cast<size_t>(
                                      c->compose(to_base[static_cast<size_t>(g)],
                                                 to_base[static_cast<size_t>(f)]))];
                                });
  IsoCore out;
  out.core = core;
  out.inclusion.source = core;
  out.inclusion.target = c;
  out.inclusion.object_map.resize(static_cast<size_t>(c->num_objects()));
  std::iota(out.inclusion.object_map.begin(), out.inclusion.object_map.end(), 0);
  out.inclusion.arrow_map = to_base;
  out.arrow_of_core = std::move(to_base);
  return out;
}

CommaCategory comma_category(const FinFunctor& F, const FinFunctor& G) {
  if (F.target.get() != G.target.get()) throw input_error("comma category: targets differ");
  const FinCategory& A = *F.source;
  const FinCategory& B = *G.source;
  const FinCategory& D = *F.target;

  std::vector<std::tuple<int, int, int>> objs;  // (a, u : Fa -> Gb, b)
  std::map<std::tuple<int, int, int>, int> obj_index;
  std::vector<std::string> obj_names;
  for (int a = 0; a < A.num_objects(); ++a)
    for (int b = 0; b < B.num_objects(); ++b)
      for (int u : D.hom(F.on_object(a), G.on_object(b))) {
        obj_index[{a, u, b}] = static_cast<int>(objs.size());
        objs.emplace_back(a, u, b);
        obj_names.push_back("(" + A.objects[static_cast<size_t>(a)] + "|" +
                            D.arrows[static_cast<size_t>(u)].name + "|" +
                            B.objects[static_cast<size_t>(b)] + ")");
      }

  // Morphisms (a,u,b) -> (a',u',b') are pairs (f : a -> a', g : b -> b')
  // with u' o Ff = Gg o u.
  struct MorRec {
    int src, dst, f, g;
  };
  std::vector<MorRec> mors;
  std::vector<Arrow> arrows;
  std::vector<int> identities(objs.size(), -1);
  std::map<std::tuple<int, int, int, int>, int> mor_index;  // (src, dst, f, g)
  for (int s_i = 0; s_i < static_cast<int>(objs.size()); ++s_i) {
    const auto [a, u, b] = objs[static_cast<size_t>(s_i)];
    for (int d_i = 0; d_i < static_cast<int>(objs.size()); ++d_i) {
      const auto [a2, u2, b2] = objs[static_cast<size_t>(d_i)];
      for (int fa : A.hom(a, a2)) {
        for (int gb : B.hom(b, b2)) {
          if (D.compose(u2, F.on_arrow(fa)) != D.compose(G.on_arrow(gb), u)) continue;
          const int m = static_cast<int>(arrows.size());
          arrows.push_back(Arrow{"(" + A.arrows[static_cast<size_t>(fa)].name + "|" +
                                     B.arrows[static_cast<size_t>(gb)].name + ")@" +
                                     std::to_string(s_i) + ">" + std::to_string(d_i),
                                 s_i, d_i});
          mors.push_back(MorRec{s_i, d_i, fa, gb});
          mor_index[{s_i, d_i, fa, gb}] = m;
          if (s_i == d_i && fa == A.identity[static_cast<size_t>(a)] &&
              gb == B.identity[static_cast<size_t>(b)])
            identities[static_cast<size_t>(s_i)] = m;
        }
      }
    }
  }
  auto comma = FinCategory::make(obj_names, std::move(arrows), std::move(identities),
                                 [&](int g, int f) {
                                   const MorRec& mg = mors[static_cast<size_t>(g)];
                                   const MorRec& mf = mors[static_cast<size_t>(f)];
                                   return mor_index.at({mf.src, mg.dst,
                                                        A.compose(mg.f, mf.f),
                                                        B.compose(mg.g, mf.g)});
                                 });

  CommaCategory out;
  out.comma = comma;
  out.objects = objs;
  out.proj1.source = comma;
  out.proj1.target = F.source;
  out.proj2.source = comma;
  out.proj2.target = G.source;
  for (const auto& [a, u, b] : objs) {
    out.proj1.object_map.push_back(a);
    out.proj2.object_map.push_back(b);
    (void)u;
  }
  for (const auto& m : mors) {
    out.proj1.arrow_map.push_back(m.f);
    out.proj2.arrow_map.push_back(m.g);
  }
  out.gamma.source = compose_functors(F, out.proj1);
  out.gamma.target = compose_functors(G, out.proj2);
  for (const auto& [a, u, b] : objs) {
    out.gamma.components.push_back(u);
    (void)a;
    (void)b;
  }
  return out;
}

std::vector<int> connected_components(const FinCategory& c) {
  UnionFind uf(c.num_objects());
  for (const Arrow& a : c.arrows) uf.unite(a.dom, a.cod);
  std::map<int, int> relabel;
  std::vector<int> out(static_cast<size_t>(c.num_objects()));
  for (int x = 0; x < c.num_objects(); ++x) {
    const int root = uf.find(x);
    auto it = relabel.find(root);
    if (it == relabel.end()) it = relabel.emplace(root, static_cast<int>(relabel.size())).first;
    out[static_cast<size_t>(x)] = it->second;
  }
  return out;
}

bool is_connected(const FinCategory& c) {
  if (c.num_objects() == 0) return false;
  const auto labels = connected_components(c);
  return *std::max_element(labels.begin(), labels.end()) == 0;
}

CheckReport exact_square_check(const LaxSquare& s) {
  CheckReport r = CheckReport::pass("exact_square_check", 0);
  const FinCategory& P = *s.p.source;
  const FinCategory& A = *s.f.source;
  const FinCategory& B = *s.g.source;
  const FinCategory& C = *s.f.target;

  for (int a = 0; a < A.num_objects(); ++a) {
    for (int b = 0; b < B.num_objects(); ++b) {
      for (int gamma : C.hom(s.f.on_object(a), s.g.on_object(b))) {
        ++r.coverage.checked;
        // Objects of Fact_phi(a, gamma, b): (alpha : a -> px, x, beta : qx -> b)
        // with g(beta) . phi_x . f(alpha) = gamma.
        std::vector<std::tuple<int, int, int>> objs;  // (x, alpha, beta)
        std::map<std::tuple<int, int, int>, int> idx;
        for (int x = 0; x < P.num_objects(); ++x) {
          const int phi_x = s.phi.components[static_cast<size_t>(x)];
          for (int alpha : A.hom(a, s.p.on_object(x))) {
            const int mid = C.compose(phi_x, s.f.on_arrow(alpha));
            for (int beta : B.hom(s.q.on_object(x), b)) {
              if (C.compose(s.g.on_arrow(beta), mid) != gamma) continue;
              idx[{x, alpha, beta}] = static_cast<int>(objs.size());
              objs.emplace_back(x, alpha, beta);
            }
          }
        }
        if (objs.empty()) {
          return CheckReport::fail(
              r.check, 0,
              json{{"reason", "empty factorisation category"},
                   {"a", A.objects[static_cast<size_t>(a)]},
                   {"b", B.objects[static_cast<size_t>(b)]},
                   {"gamma", C.arrows[static_cast<size_t>(gamma)].name},
                   {"coverage_so_far", r.coverage.checked}});
        }
        check_enum_budget(objs.size(), "factorisation category");
        UnionFind uf(static_cast<int>(objs.size()));
        for (int o = 0; o < static_cast<int>(objs.size()); ++o) {
          const auto [x1, alpha1, beta1] = objs[static_cast<size_t>(o)];
          for (int delta : P.arrows_from(x1)) {
            const int x2 = P.arrows[static_cast<size_t>(delta)].cod;
            const int alpha2 = A.compose(s.p.on_arrow(delta), alpha1);
            // beta1 = beta2 . q(delta): scan candidates beta2.
            for (int beta2 : B.hom(s.q.on_object(x2), b)) {
              if (B.compose(beta2, s.q.on_arrow(delta)) != beta1) continue;
              auto it = idx.find({x2, alpha2, beta2});
              if (it != idx.end()) uf.unite(o, it->second);
            }
          }
        }
        std::set<int> roots;
        for (int o = 0; o < static_cast<int>(objs.size()); ++o) roots.insert(uf.find(o));
        if (roots.size() > 1) {
          json parts = json::array();
          for (int o = 0; o < static_cast<int>(objs.size()); ++o) {
            const auto [x, alpha, beta] = objs[static_cast<size_t>(o)];
            parts.push_back(json{{"x", P.objects[static_cast<size_t>(x)]},
                                 {"alpha", A.arrows[static_cast<size_t>(alpha)].name},
                                 {"beta", B.arrows[static_cast<size_t>(beta)].name},
                                 {"component", uf.find(o)}});
          }
          return CheckReport::fail(r.check, 0,
                                   json{{"reason", "disconnected factorisation category"},
                                        {"a", A.objects[static_cast<size_t>(a)]},
                                        {"b", B.objects[static_cast<size_t>(b)]},
                                        {"gamma", C.arrows[static_cast<size_t>(gamma)].name},
                                        {"partition", parts}});
        }
      }
    }
  }
  return r;
}

int SCategory::object_of(const std::vector<int>& seq) const {
  auto it = object_of_seq.find(seq);
  if (it == object_of_seq.end()) throw input_error("sequence outside the bound");
  return it->second;
}

int SCategory::arrow_of(int dom_object, const perm::Permutation& rho,
                        const std::vector<int>& labels) const {
  auto it = arrow_lookup_.find({dom_object, rho.images, labels});
  if (it == arrow_lookup_.end()) throw input_error("unknown labelled permutation");
  return it->second;
}

SCategory s_construction(const CatPtr& c, int bound,
                         const std::function<bool(const std::vector<int>&)>& keep) {
  SCategory out;
  out.base = c;
  out.bound = bound;

  // Objects: sequences ordered by length, then lexicographically.
  std::vector<std::vector<int>> seqs;
  std::vector<std::vector<int>> frontier{{}};
  seqs.push_back({});
  for (int len = 1; len <= bound; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& s : frontier)
      for (int x = 0; x < c->num_objects(); ++x) {
        auto t = s;
        t.push_back(x);
        next.push_back(std::move(t));
      }
    check_enum_budget(seqs.size() + next.size(), "free symmetric monoidal objects");
    for (auto& s : next)
      if (!keep || keep(s)) seqs.push_back(s);
    frontier = std::move(next);
  }
  std::vector<std::string> names;
  for (int i = 0; i < static_cast<int>(seqs.size()); ++i) {
    out.object_of_seq[seqs[static_cast<size_t>(i)]] = i;
    std::string n = "(";
    for (size_t k = 0; k < seqs[static_cast<size_t>(i)].size(); ++k)
      n += (k ? "," : "") + c->objects[static_cast<size_t>(seqs[static_cast<size_t>(i)][k])];
    names.push_back(n + ")");
  }
  out.object_seqs = seqs;

  // Arrows: labelled permutations.
  std::vector<Arrow> arrows;
  std::vector<SCategory::MorData> data;
  std::vector<int> arrow_doms;
  std::vector<int> identities(seqs.size(), -1);
  std::uint64_t budget = 0;
  for (int d = 0; d < static_cast<int>(seqs.size()); ++d) {
    const auto& xs = seqs[static_cast<size_t>(d)];
    const int n = static_cast<int>(xs.size());
    for (const auto& rho : perm::all_permutations(n)) {
      const auto cod_seq_template = perm::act_on_sequence(rho, xs);
      // Labels f_i : x_i -> y_{rho(i)}; enumerate all combinations of
      // arrows out of each x_i, grouped by resulting codomain sequence.
      std::vector<std::vector<int>> choices;
      for (int i = 1; i <= n; ++i)
        choices.push_back(c->arrows_from(xs[static_cast<size_t>(i) - 1]));
      std::vector<size_t> pick(static_cast<size_t>(n), 0);
      for (;;) {
        std::vector<int> labels(static_cast<size_t>(n));
        std::vector<int> cod_seq(static_cast<size_t>(n));
        for (int i = 1; i <= n; ++i) {
          const int f = choices[static_cast<size_t>(i) - 1][pick[static_cast<size_t>(i) - 1]];
          labels[static_cast<size_t>(i) - 1] = f;
          cod_seq[static_cast<size_t>(rho(i)) - 1] = c->arrows[static_cast<size_t>(f)].cod;
        }
        // Labels may move letters outside the object filter; skip those.
        const auto cod_it = out.object_of_seq.find(cod_seq);
        if (cod_it != out.object_of_seq.end()) {
          const int cod = cod_it->second;
          const int m = static_cast<int>(arrows.size());
          std::string nm = "[";
          for (int i = 0; i < n; ++i)
            nm += (i ? "," : "") + std::to_string(rho.images[static_cast<size_t>(i)]);
          nm += ";";
          for (int i = 0; i < n; ++i)
            nm += (i ? "," : "") + c->arrows[static_cast<size_t>(labels[static_cast<size_t>(i)])].name;
          nm += "]";
          arrows.push_back(Arrow{nm + "@" + names[static_cast<size_t>(d)], d, cod});
          data.push_back(SCategory::MorData{rho, labels});
          arrow_doms.push_back(d);
          out.arrow_lookup_[{d, rho.images, labels}] = m;
          check_enum_budget(++budget, "free symmetric monoidal arrows");
          // Identity: identity permutation with identity labels.
          if (d == cod && rho.is_identity()) {
            bool all_id = true;
            for (int i = 0; i < n; ++i)
              if (labels[static_cast<size_t>(i)] !=
                  c->identity[static_cast<size_t>(xs[static_cast<size_t>(i)])]) {
                all_id = false;
                break;
              }
            if (all_id) identities[static_cast<size_t>(d)] = m;
          }
        }
        // Advance the per-position odometer.
        bool done = true;
        for (int i = 0; i < n; ++i) {
          if (++pick[static_cast<size_t>(i)] < choices[static_cast<size_t>(i)].size()) {
            done = false;
            break;
          }
          pick[static_cast<size_t>(i)] = 0;
        }
        if (done) break;
      }
    }
  }

  out.cat = FinCategory::make(
      std::move(names), std::move(arrows), std::move(identities),
      [&data, &arrow_doms, &out, base = c](int g, int f) {
        const auto& dg = data[static_cast<size_t>(g)];
        const auto& df = data[static_cast<size_t>(f)];
        const int n = df.rho.size();
        // (rho', (g_i)) o (rho, (f_i)) = (rho' o rho, (g_{rho i} o f_i)).
        std::vector<int> labels(static_cast<size_t>(n));
        for (int i = 1; i <= n; ++i)
          labels[static_cast<size_t>(i) - 1] =
              base->compose(dg.labels[static_cast<size_t>(df.rho(i)) - 1],
                            df.labels[static_cast<size_t>(i) - 1]);
        return out.arrow_of(arrow_doms[static_cast<size_t>(f)], perm::after(dg.rho, df.rho),
                            labels);
      });
  out.mor_data = std::move(data);
  return out;
}

FinFunctor s_functor(const SCategory& sdom, const SCategory& scod, const FinFunctor& f) {
  FinFunctor out;
  out.source = sdom.cat;
  out.target = scod.cat;
  for (const auto& seq : sdom.object_seqs) {
    std::vector<int> imaged;
    imaged.reserve(seq.size());
    for (int x : seq) imaged.push_back(f.on_object(x));
    out.object_map.push_back(scod.object_of(imaged));
  }
  for (int a = 0; a < sdom.cat->num_arrows(); ++a) {
    const auto& d = sdom.mor_data[static_cast<size_t>(a)];
    std::vector<int> labels;
    labels.reserve(d.labels.size());
    for (int l : d.labels) labels.push_back(f.on_arrow(l));
    out.arrow_map.push_back(
        scod.arrow_of(out.on_object(sdom.cat->arrows[static_cast<size_t>(a)].dom), d.rho, labels));
  }
  return out;
}

LaxSquare s_image_square(const LaxSquare& s, int bound) {
  SCategory sp = s_construction(s.p.source, bound);
  SCategory sa = s_construction(s.f.source, bound);
  SCategory sb = s_construction(s.g.source, bound);
  SCategory sc = s_construction(s.f.target, bound);

  LaxSquare out;
  out.p = s_functor(sp, sa, s.p);
  out.q = s_functor(sp, sb, s.q);
  out.f = s_functor(sa, sc, s.f);
  out.g = s_functor(sb, sc, s.g);
  out.phi.source = compose_functors(out.f, out.p);
  out.phi.target = compose_functors(out.g, out.q);
  const FinCategory& P = *s.p.source;
  for (const auto& seq : sp.object_seqs) {
    const int n = static_cast<int>(seq.size());
    std::vector<int> labels;
    labels.reserve(seq.size());
    for (int x : seq) labels.push_back(s.phi.components[static_cast<size_t>(x)]);
    std::vector<int> dom_seq;
    dom_seq.reserve(seq.size());
    for (int x : seq) dom_seq.push_back(s.f.on_object(s.p.on_object(x)));
    out.phi.components.push_back(
        sc.arrow_of(sc.object_of(dom_seq), perm::Permutation::id(n), labels));
  }
  (void)P;
  return out;
}

}  // namespace opdkit::cat

