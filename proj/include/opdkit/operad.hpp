#ifndef OPDKIT_OPERAD_HPP
#define OPDKIT_OPERAD_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "opdkit/fincat.hpp"
#include "opdkit/perm.hpp"
#include "opdkit/report.hpp"
#include "opdkit/smc.hpp"

namespace opdkit::opd {

using Profile = std::vector<int>;  // colour indices

struct OperadOp {
  std::string name;
  Profile profile;
  int output = -1;
  int arity() const { return static_cast<int>(profile.size()); }
};

// A finite coloured symmetric operad with operations of arity <= arity_bound.
// Substitution whose result arity would exceed the bound is undefined.
// Symmetric action convention (right action): act(op, rho) has profile
// i |-> profile[rho(i)], and act(act(op,rho),rho2) = act(op, rho o rho2).
struct FinOperad {
  std::vector<std::string> colours;
  int arity_bound = 0;
  std::vector<OperadOp> ops;
  std::vector<int> unit;  // per colour

  int num_ops() const { return static_cast<int>(ops.size()); }

  int subst(int outer, const std::vector<int>& inners) const;
  int act(int op, const perm::Permutation& rho) const;
  const std::vector<int>& multihom(const Profile& profile, int output) const;
  int index_in_multihom(int op) const { return hom_pos_[static_cast<size_t>(op)]; }

  // Builders.
  void init(std::vector<std::string> colour_names, int bound);
  int add_op(std::string name, Profile profile, int output);
  void set_unit(int colour, int op) { unit[static_cast<size_t>(colour)] = op; }
  void set_subst(int outer, const std::vector<int>& inners, int result);
  void set_act(int op, const perm::Permutation& rho, int result);
  void freeze();

  int colour_index(const std::string& name) const;
  int op_index(const std::string& name) const;

  // All (profile, output) pairs with a nonempty operation set, in canonical
  // (insertion) order.
  const std::vector<std::pair<Profile, int>>& inhabited_multihoms() const { return keys_; }

  // Operations with the given output colour, grouped by arity (index =
  // arity); built by freeze().
  const std::vector<std::vector<int>>& ops_with_output(int colour) const {
    return by_output_[static_cast<size_t>(colour)];
  }

 private:
  std::vector<std::vector<std::vector<int>>> by_output_;
  std::map<std::pair<int, std::vector<int>>, int> subst_;
  std::map<std::pair<int, std::vector<int>>, int> act_;
  std::map<std::pair<Profile, int>, std::vector<int>> homs_;
  std::vector<std::pair<Profile, int>> keys_;
  std::vector<int> hom_pos_;
};

using OpdPtr = std::shared_ptr<const FinOperad>;

std::string profile_name(const Profile& p, const std::vector<std::string>& colours);

// Visits every tuple of operations with the given output colours whose total
// arity stays within `budget` (arity-pruned, so large closures stay cheap).
void for_each_inner_tuple(const FinOperad& p, const Profile& outputs, int budget,
                          const std::function<void(const std::vector<int>&, int total)>& visit);

// Number of unrestricted inner tuples (product of candidate counts,
// saturating at 2^63); the difference against the visited count is the
// skipped-by-bound statistic.
std::uint64_t count_all_inner_tuples(const FinOperad& p, const Profile& outputs);

// Unit laws, substitution associativity, the group action and both
// equivariance laws, within the arity bound; coverage counts skipped
// out-of-bound instances.
CheckReport validate_operad(const FinOperad& p);

// The terminal operad: one colour, one operation of each arity <= bound.
OpdPtr comm_operad(int arity_bound);

// A category as an operad with only unary operations.  The arity bound is a
// truncation parameter for the ambient constructions, not the maximal arity
// of an existing operation.
OpdPtr operad_of_category(const cat::CatPtr& c, int arity_bound = 1);

struct UnaryCores {
  cat::CatPtr p1;           // category of all unary operations
  cat::CatPtr p1_iso;       // its groupoid core
  std::vector<int> p1_arrow_to_op;      // P1 arrow -> operad op
  std::vector<int> p1_iso_arrow_to_op;  // P1_iso arrow -> operad op
};

UnaryCores unary_cores(const OpdPtr& p);

// Endomorphism operad of a bounded SMC: ops (x1..xn) -> y are the morphisms
// (x1..xn) -> (y); substitution composes tensors, the action precomposes
// with symmetries.  Arity bound = the SMC bound.
struct EndOperad {
  OpdPtr operad;
  smc::SmcPtr base;
  std::vector<int> mor_of_op;  // op -> SMC morphism
  std::vector<int> op_of_mor;  // SMC morphism -> op or -1
};

EndOperad end_operad(const smc::SmcPtr& m);

struct OperadMap {
  OpdPtr source;
  OpdPtr target;
  std::vector<int> colour_map;
  std::vector<int> op_map;

  int on_colour(int c) const { return colour_map[static_cast<size_t>(c)]; }
  int on_op(int o) const { return op_map[static_cast<size_t>(o)]; }
};

OperadMap identity_operad_map(const OpdPtr& p);
OperadMap compose_operad_maps(const OperadMap& g, const OperadMap& f);
CheckReport validate_operad_map(const OperadMap& f);
bool operad_map_fully_faithful(const OperadMap& f);

struct OperadTwoCell {
  OperadMap f, g;               // parallel
  std::vector<int> components;  // colour of source -> unary op of target
};

CheckReport validate_operad_two_cell(const OperadTwoCell& t);

// An operad equipped with a map from a category regarded as a unary operad.
struct PinnedOperad {
  cat::CatPtr pins;             // C
  OpdPtr body;                  // P
  std::vector<int> colour_map;  // object of C -> colour of P
  std::vector<int> arrow_map;   // arrow of C -> unary op of P
};

CheckReport validate_pinned_operad(const PinnedOperad& p);

// A substitude is a pinned operad whose structure map is identity on
// objects: the pin category's objects are exactly the body's colours.
using Substitude = PinnedOperad;
bool is_substitude(const PinnedOperad& p);

// Gabriel factorisation of an operad map: identity-on-colours followed by
// fully faithful; mid multihoms are target multihoms along f.
struct OperadGabriel {
  OperadMap io;
  OpdPtr mid;
  OperadMap ff;
};

OperadGabriel gabriel_factor_operad(const OperadMap& f);

// Coreflection of pinned operads into substitudes: Gabriel-factor the pin.
struct Coreflection {
  Substitude substitude;  // C -> P|C
  OperadMap counit;       // P|C -> P, fully faithful
};

Coreflection coreflect(const PinnedOperad& po);

// The three canonical pinnings of an operad.
struct Pinnings {
  Substitude discrete;
  Substitude groupoid;
  Substitude full;
};

Pinnings pinnings(const OpdPtr& p);

// True iff the pin is a bijection from the arrows of C onto all unary
// operations of the body.
bool normal_substitude_check(const Substitude& s);

}  // namespace opdkit::opd

#endif
