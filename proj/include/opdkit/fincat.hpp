#ifndef OPDKIT_FINCAT_HPP
#define OPDKIT_FINCAT_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "opdkit/perm.hpp"
#include "opdkit/report.hpp"

namespace opdkit::cat {

struct Arrow {
  std::string name;
  int dom = -1;
  int cod = -1;
};

// Composition-table presentation of a finite category.  Objects and arrows
// are addressed by index; the insertion order is the canonical total order
// used for deterministic witness selection.  Immutable after construction.
class FinCategory {
 public:
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<int> identity;  // object -> arrow index

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }

  bool is_identity(int a) const { return identity[static_cast<size_t>(arrows[static_cast<size_t>(a)].dom)] == a; }

  // Composite g o f; -1 when the pair is not composable or the table has a hole.
  int compose(int g, int f) const {
    auto it = comp_.find(key(g, f));
    return it == comp_.end() ? -1 : it->second;
  }
  bool has_composite(int g, int f) const { return comp_.count(key(g, f)) != 0; }

  const std::vector<int>& hom(int dom, int cod) const {
    return hom_[static_cast<size_t>(dom) * objects.size() + static_cast<size_t>(cod)];
  }
  const std::vector<int>& arrows_from(int dom) const { return from_[static_cast<size_t>(dom)]; }

  int object_index(const std::string& name) const;
  int arrow_index(const std::string& name) const;

  // Builds a category from parts.  `identities[x]` indexes the identity
  // arrow of object x inside `arrows`.  The compose callback returns the
  // composite arrow index for every composable (g, f) pair of non-identity
  // arrows (it may return -1 to leave a hole for validate_category to
  // report); identity composites are filled in automatically.
  static std::shared_ptr<const FinCategory> make(
      std::vector<std::string> objects, std::vector<Arrow> arrows, std::vector<int> identities,
      const std::function<int(int g, int f)>& compose_fn);

 private:
  std::uint64_t key(int g, int f) const {
    return static_cast<std::uint64_t>(g) * static_cast<std::uint64_t>(arrows.size()) +
           static_cast<std::uint64_t>(f);
  }
  void finalize();

  std::unordered_map<std::uint64_t, int> comp_;
  std::vector<std::vector<int>> hom_;
  std::vector<std::vector<int>> from_;
};

using CatPtr = std::shared_ptr<const FinCategory>;

// Convenience builder for hand-written and parsed categories.
class CategoryBuilder {
 public:
  CategoryBuilder& object(const std::string& name);
  CategoryBuilder& arrow(const std::string& name, const std::string& dom, const std::string& cod);
  CategoryBuilder& compose(const std::string& g, const std::string& f, const std::string& gf);
  CatPtr build() const;

 private:
  std::vector<std::string> objects_;
  std::vector<std::tuple<std::string, std::string, std::string>> arrows_;
  std::vector<std::tuple<std::string, std::string, std::string>> composites_;
};

CatPtr discrete_category(const std::vector<std::string>& objects);
CatPtr terminal_category();

// All category axioms, exhaustively: identity dom/cod, unit laws, totality
// of the table on composable pairs, and associativity.  Witness carries the
// first violated pair or triple.
CheckReport validate_category(const FinCategory& c);

struct FinFunctor {
  CatPtr source;
  CatPtr target;
  std::vector<int> object_map;
  std::vector<int> arrow_map;

  int on_object(int x) const { return object_map[static_cast<size_t>(x)]; }
  int on_arrow(int a) const { return arrow_map[static_cast<size_t>(a)]; }
};

FinFunctor identity_functor(const CatPtr& c);
FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f);  // g o f
CheckReport validate_functor(const FinFunctor& f);

struct FinNatTrans {
  FinFunctor source;
  FinFunctor target;
  std::vector<int> components;  // object of source category -> arrow of target category
};

FinNatTrans identity_nat_trans(const FinFunctor& f);
CheckReport validate_nat_trans(const FinNatTrans& t);

// The lax square
//        q
//    P -----> B
//  p |    phi | g      phi : f o p  =>  g o q
//    v        v
//    A -----> C
//        f
struct LaxSquare {
  FinFunctor p, q, f, g;
  FinNatTrans phi;
};

CheckReport validate_lax_square(const LaxSquare& s);

struct FunctorProps {
  bool fully_faithful = false;
  bool essentially_surjective = false;
  bool bijective_on_objects = false;
  bool identity_on_objects = false;
  bool equivalence = false;
};

FunctorProps functor_props(const FinFunctor& f);

// Identity-on-objects / fully-faithful factorisation.  mid's objects are
// literally the source's objects; mid hom(a, b) is target hom(Fa, Fb).
struct GabrielFactorisation {
  FinFunctor io;   // source -> mid, identity on objects
  CatPtr mid;
  FinFunctor ff;   // mid -> target, fully faithful
};

GabrielFactorisation gabriel_factor_functor(const FinFunctor& f);

// Subcategory of all isomorphisms; always a groupoid.
struct IsoCore {
  CatPtr core;
  FinFunctor inclusion;          // core -> c
  std::vector<int> arrow_of_core;  // core arrow -> arrow of c
};

IsoCore iso_core(const CatPtr& c);
bool is_groupoid(const FinCategory& c);
bool is_iso(const FinCategory& c, int arrow);
std::optional<int> inverse_of(const FinCategory& c, int arrow);

// Comma category F down G for functors F : A -> D and G : B -> D.
struct CommaCategory {
  CatPtr comma;
  FinFunctor proj1;  // -> A
  FinFunctor proj2;  // -> B
  FinNatTrans gamma; // F o proj1 => G o proj2
  std::vector<std::tuple<int, int, int>> objects;  // (a, u : Fa -> Gb, b)
};

CommaCategory comma_category(const FinFunctor& F, const FinFunctor& G);

// Nonempty and zigzag-connected.  The empty category is NOT connected.
bool is_connected(const FinCategory& c);

// Connected components by object; -1-free labelling in [0, n_components).
std::vector<int> connected_components(const FinCategory& c);

// Guitart's elementary criterion: for every a, b and gamma : fa -> gb the
// factorisation category Fact_phi(a, gamma, b) must be connected.
CheckReport exact_square_check(const LaxSquare& s);

// The free symmetric monoidal category on c, materialised as a finite
// category: objects are sequences of c-objects of length <= bound, arrows
// are permutations labelled by arrows of c.
struct SCategory {
  CatPtr cat;
  CatPtr base;
  int bound = 0;
  std::vector<std::vector<int>> object_seqs;           // S-object -> base object sequence
  std::map<std::vector<int>, int> object_of_seq;

  struct MorData {
    perm::Permutation rho;
    std::vector<int> labels;  // labels[i-1] : x_i -> y_{rho(i)} in the base
  };
  std::vector<MorData> mor_data;  // per S-arrow

  int object_of(const std::vector<int>& seq) const;
  int arrow_of(int dom_object, const perm::Permutation& rho, const std::vector<int>& labels) const;

 private:
  friend SCategory s_construction(const CatPtr&, int,
                                  const std::function<bool(const std::vector<int>&)>&);
  std::map<std::tuple<int, std::vector<int>, std::vector<int>>, int> arrow_lookup_;
};

// The optional filter drops object sequences (used to truncate by total
// inner length when the base objects are themselves sequences).
SCategory s_construction(const CatPtr& c, int bound,
                         const std::function<bool(const std::vector<int>&)>& keep = {});

// S applied to a functor, with source and target materialised as above.
FinFunctor s_functor(const SCategory& sdom, const SCategory& scod, const FinFunctor& f);

// Free bounded symmetric-monoidal image of a square: S applied to each
// corner (sequences of length <= bound), functors and 2-cell lifted.
LaxSquare s_image_square(const LaxSquare& s, int bound);

}  // namespace opdkit::cat

#endif
