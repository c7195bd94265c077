#ifndef OPDKIT_SMC_HPP
#define OPDKIT_SMC_HPP

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "opdkit/fincat.hpp"
#include "opdkit/perm.hpp"
#include "opdkit/report.hpp"

namespace opdkit::smc {

// A sequence of colour indices; the empty sequence is the unit object.
using Sequence = std::vector<int>;

std::string sequence_name(const Sequence& s, const std::vector<std::string>& colours);

// All sequences over `colours` of length <= bound, ordered by length then
// lexicographically.  This order is canonical everywhere.
std::vector<Sequence> enumerate_sequences(int colours, int bound);

struct SmcMor {
  std::string name;
  int dom = -1;
  int cod = -1;
};

// A symmetric strict monoidal category truncated to object sequences of
// length <= bound.  Tensor on objects is concatenation; tensor of morphisms
// is a partial table, defined when both concatenations stay within bound.
// Tables may contain holes after parsing; validate_smc reports them.
struct BoundedSMC {
  std::vector<std::string> colours;
  int bound = 0;
  std::vector<Sequence> objects;
  std::vector<SmcMor> mors;
  std::vector<int> identity;  // per object

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_mors() const { return static_cast<int>(mors.size()); }

  int object_of(const Sequence& s) const;  // -1 when out of bound
  int concat(int a, int b) const;          // -1 when out of bound

  int compose(int g, int f) const;
  int tensor(int f, int g) const;
  int sym(const perm::Permutation& rho, int obj) const;

  const std::vector<int>& hom(int dom, int cod) const;
  int index_in_hom(int mor) const { return hom_pos_[static_cast<size_t>(mor)]; }

  bool is_identity(int mor) const {
    return identity[static_cast<size_t>(mors[static_cast<size_t>(mor)].dom)] == mor;
  }

  // Left fold of the tensor table; empty input gives the unit identity.
  int tensor_fold(const std::vector<int>& ms) const;

  // Table construction (used by the free constructions, the parser and the
  // mutation harness); call finalize_objects first, then add morphisms and
  // table entries, then freeze.
  void init(std::vector<std::string> colour_names, int bound_);
  int add_mor(std::string name, int dom, int cod);
  void set_identity(int obj, int mor) { identity[static_cast<size_t>(obj)] = mor; }
  void set_compose(int g, int f, int gf);
  void set_tensor(int f, int g, int fg);
  void set_sym(const perm::Permutation& rho, int obj, int mor);
  void freeze();  // builds hom lists and positions

  const std::map<std::pair<int, std::vector<int>>, int>& sym_table() const { return sym_; }

  // Visits every defined tensor entry (f, g, f (x) g).
  void visit_tensors(const std::function<void(int, int, int)>& fn) const;

  // Visits every morphism pair whose tensor stays within the bound, grouped
  // through nonempty hom buckets (avoids the all-pairs scan).
  void for_each_tensorable_pair(const std::function<void(int, int)>& fn) const;

 private:
  std::uint64_t key(int a, int b) const {
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(mors.size()) +
           static_cast<std::uint64_t>(b);
  }
  std::map<Sequence, int> object_index_;
  std::unordered_map<std::uint64_t, int> comp_;
  std::unordered_map<std::uint64_t, int> tensor_;
  std::map<std::pair<int, std::vector<int>>, int> sym_;  // (object, rho images) -> mor
  std::vector<std::vector<int>> hom_;
  std::vector<int> hom_pos_;
};

using SmcPtr = std::shared_ptr<const BoundedSMC>;

// All BoundedSMC axioms within the bound, with coverage statistics for
// instances skipped due to truncation.
CheckReport validate_smc(const BoundedSMC& m);

// View the underlying category (objects and morphisms keep their indices).
cat::CatPtr as_category(const BoundedSMC& m);

// The free symmetric strict monoidal category S C, truncated at `bound`.
// Morphisms are permutations labelled by arrows of the base category.
struct FreeSmc {
  SmcPtr smc;
  cat::CatPtr base;

  struct LabelledPermutation {
    perm::Permutation rho;
    std::vector<int> labels;  // labels[i-1] : x_i -> y_{rho(i)} in the base
  };
  std::vector<LabelledPermutation> mor_data;

  int mor_of(int dom_object, const perm::Permutation& rho, const std::vector<int>& labels) const;

 private:
  friend FreeSmc free_smc(const cat::CatPtr&, int);
  std::map<std::tuple<int, std::vector<int>, std::vector<int>>, int> lookup_;
};

using FreeSmcPtr = std::shared_ptr<const FreeSmc>;

FreeSmc free_smc(const cat::CatPtr& c, int bound);

// A pinned symmetric strict monoidal category: tau : S C -> M, identity on
// objects (colours of M are exactly the objects of C), determined by where
// the arrows of C go.
struct PinnedSMC {
  cat::CatPtr base;              // C
  SmcPtr target;                 // M
  FreeSmcPtr free;               // S C at M's bound
  std::vector<int> arrow_pin;    // C arrow -> M morphism between singletons
  std::vector<int> tau;          // S C morphism -> M morphism

  int bound() const { return target->bound; }
};

// Validates functoriality of the pin and strict monoidality of the induced
// tau; throws input_error on structural mismatch, returns the failure report
// otherwise.
PinnedSMC build_pinned(const cat::CatPtr& c, const SmcPtr& m, const std::vector<int>& arrow_pin);
CheckReport validate_pinned(const PinnedSMC& p);

// The identity pinning of S C.
PinnedSMC identity_pinning(const cat::CatPtr& c, int bound);

// The monad coherence square of tau (identity 2-cell since tau is strict),
// with every corner materialised as a finite category and truncated so that
// total sequence length stays within the bound.
cat::LaxSquare monoidal_coherence_square(const PinnedSMC& tau);

// Guitart exactness of tau's coherence square, decided through the bounded
// categories of normalised factorisations: for every f : tau(x) -> (+)_k w_k
// the factorisations (sigma, blocks, (g_k)) with f = ((x)_k g_k) o sym(sigma)
// must form a nonempty connected category.  Verdict is "exact up to bound".
CheckReport monoidal_exactness_check(const PinnedSMC& tau);

// --- Weak symmetric monoidal categories and strictification ---------------

// A finite category with a total tensor and designated coherence
// isomorphisms (associator, unitors, symmetry).
struct WeakSMC {
  cat::CatPtr cat;
  int unit = -1;
  std::vector<std::vector<int>> tensor_obj;         // [x][y] -> object
  std::map<std::pair<int, int>, int> tensor_mor;    // (f, g) -> f (x) g
  std::vector<std::vector<std::vector<int>>> associator;  // [x][y][z]
  std::vector<int> left_unitor;                     // I (x) x -> x
  std::vector<int> right_unitor;                    // x (x) I -> x
  std::vector<std::vector<int>> symmetry;           // [x][y] : x (x) y -> y (x) x

  int tobj(int x, int y) const { return tensor_obj[static_cast<size_t>(x)][static_cast<size_t>(y)]; }
  int tmor(int f, int g) const;
};

// Exhaustive check of the weak axioms: tensor functoriality, naturality of
// all coherence families, invertibility, pentagon, triangle, hexagon and
// the symmetry involution.
CheckReport validate_weak_smc(const WeakSMC& w);

// A symmetric strong monoidal functor from a BoundedSMC (viewed as a
// category) into a WeakSMC, with binary coherences indexed by object pairs.
struct StrongMonoidalFunctor {
  SmcPtr source;
  std::shared_ptr<const WeakSMC> target;
  std::vector<int> object_map;                  // source object -> target object
  std::vector<int> mor_map;                     // source morphism -> target arrow
  std::map<std::pair<int, int>, int> coherence;  // (a, b) -> iso F(a.b) -> Fa (x) Fb
  int unit_coherence = -1;                      // F(empty) -> I
};

CheckReport validate_strong_monoidal(const StrongMonoidalFunctor& f);

// Power-coherence strictification of F : S -> M along the Gabriel
// factorisation S -> M' -> M.  M' carries the transported strict structure;
// G is strict and identity-on-objects; H is strong monoidal and fully
// faithful; H o G = F on the nose.
struct Strictification {
  SmcPtr strict_smc;                 // M'
  std::vector<int> strict_functor;   // G on morphisms (identity on objects)
  StrongMonoidalFunctor embed;       // H : M' -> M
};

Strictification strictify(const StrongMonoidalFunctor& f);

}  // namespace opdkit::smc

#endif
