#ifndef OPDKIT_ADJUNCTIONS_HPP
#define OPDKIT_ADJUNCTIONS_HPP

#include <map>
#include <memory>
#include <vector>

#include "opdkit/operad.hpp"
#include "opdkit/perm.hpp"
#include "opdkit/report.hpp"
#include "opdkit/smc.hpp"

namespace opdkit::adj {

// The free symmetric strict monoidal category F P on an operad, truncated at
// `bound`: objects are colour sequences, hom(x, y) = sum over indexing
// functions alpha of products of multihoms over the fibers.  Morphisms are
// encoded canonically as (alpha image list, operation tuple ordered by j).
struct HermidaFree {
  smc::SmcPtr smc;
  opd::OpdPtr base;

  struct MorData {
    perm::FinFunction alpha;
    std::vector<int> ops;  // ops[j-1] in P((x_i)_{alpha i = j}; y_j)
  };
  std::vector<MorData> mor_data;

  int mor_of(int dom_object, const perm::FinFunction& alpha, const std::vector<int>& ops) const;

 private:
  friend HermidaFree hermida_free(const opd::OpdPtr&, int);
  std::map<std::tuple<int, std::vector<int>, std::vector<int>>, int> lookup_;
};

// Requires p->arity_bound >= bound (fibers index multihoms up to `bound`).
HermidaFree hermida_free(const opd::OpdPtr& p, int bound);

// Unit of the Hermida adjunction: P -> End(F P), the identity on colours and
// operations.  Returns the map together with the endomorphism operad.
struct HermidaUnit {
  opd::OperadMap map;
  opd::EndOperad end;
  std::shared_ptr<const HermidaFree> free;
};

HermidaUnit hermida_unit(const opd::OpdPtr& p, int bound);

// Counit of the Hermida adjunction at a bounded SMC m: the strict functor
// F(End(m)) -> m sending (alpha, (g_j)) to ((x)_j g_j) o sym(sigma_alpha).
struct HermidaCounit {
  std::shared_ptr<const HermidaFree> free;  // F(End(m))
  opd::EndOperad end;
  smc::SmcPtr target;
  std::vector<int> object_map;  // F(End(m)) object -> m object (a bijection)
  std::vector<int> mor_map;     // F(End(m)) morphism -> m morphism
};

HermidaCounit hermida_counit(const smc::SmcPtr& m);
CheckReport validate_hermida_counit(const HermidaCounit& c);
// Fully faithful within bound (hom-by-hom bijectivity of the counit).
CheckReport hermida_counit_fully_faithful(const HermidaCounit& c);

// Left adjoint of the substitude adjunction: S C -> F P.
smc::PinnedSMC subst_free(const opd::Substitude& s, int bound);

// Right adjoint: a pinned SMC tau yields the substitude C -> End(M)|C.
struct SubstEnd {
  opd::Substitude substitude;
  opd::Coreflection coreflection;  // pin into End(M) and its Gabriel data
  opd::EndOperad end;
};

SubstEnd subst_end(const smc::PinnedSMC& tau);

// Unit invertibility for the substitude adjunction: the canonical comparison
// s -> subst_end(subst_free(s)) is an isomorphism on every multihom whose
// profile fits within the bound.
CheckReport subst_unit_check(const opd::Substitude& s, int bound);

// The hereditary condition of a pinned SMC: for every pair of sequences the
// canonical map  sum_alpha prod_j M(fiber_j, y_j) -> M(x, y)  given by
// sym(sigma_alpha) followed by tensoring must be a bijection.
struct HereditaryOutcome {
  bool injective = true;
  bool surjective = true;
  json witness;  // first collision or unhit morphism
  Coverage coverage;
  bool verdict() const { return injective && surjective; }
};

HereditaryOutcome hereditary_core(const smc::PinnedSMC& tau);
CheckReport hereditary_check(const smc::PinnedSMC& tau);

// Hereditary and bijective-on-objects, cross-run against the Guitart
// exactness criterion; disagreement raises internal_error (the two are
// theorem-equivalent and may only diverge through an implementation bug).
CheckReport regular_pattern_check(const smc::PinnedSMC& tau);

// Pin category a groupoid, tau fully faithful on iso cores, hereditary.
CheckReport feynman_check(const smc::PinnedSMC& tau);

// Fully faithful on isomorphism cores (the equivalence S C_iso -> M_iso for
// identity-on-objects tau).
CheckReport iso_core_equivalence_check(const smc::PinnedSMC& tau);

// Kaufmann-Ward comma-category condition: w : S(M|C)_iso -> (M|M)_iso is an
// equivalence, checked directly (essentially surjective, full, faithful) and
// cross-run against the decomposition [epsilon injective, epsilon
// surjective, tau_iso fully faithful]; disagreement raises internal_error.
CheckReport comma_condition_check(const smc::PinnedSMC& tau);

// Aggregated round trips of the main theorems.
CheckReport roundtrip_substitude(const opd::Substitude& s, int bound);
CheckReport roundtrip_pinned(const smc::PinnedSMC& tau);

// Algebras of a substitude in a bounded SMC W.
struct AlgebraData {
  opd::Substitude phi;
  smc::SmcPtr target;               // W
  std::vector<int> carrier_obj;     // C object -> W colour
  std::vector<int> carrier_arrow;   // C arrow -> W morphism between singletons
  std::vector<int> action;          // P op -> W morphism (mapped profile -> singleton)
};

CheckReport validate_algebra(const AlgebraData& a);

// The strict monoidal functor F P -> W induced by an algebra:
// (alpha, (g_j)) |-> ((x)_j action(g_j)) o sym(sigma_alpha).
struct AlgebraFunctor {
  std::shared_ptr<const HermidaFree> free;
  smc::SmcPtr target;
  std::vector<int> object_map;
  std::vector<int> mor_map;
};

AlgebraFunctor algebra_functor(const AlgebraData& a, int bound);
CheckReport validate_algebra_functor(const AlgebraFunctor& f);

// Exhaustive correspondence at desk scale: raw action tables that satisfy
// the algebra axioms biject with strict monoidal functors extending the
// carrier; verified element-wise.
CheckReport algebra_correspondence_check(const opd::Substitude& phi, const smc::SmcPtr& W,
                                         const std::vector<int>& carrier_obj,
                                         const std::vector<int>& carrier_arrow, int bound);

}  // namespace opdkit::adj

#endif
