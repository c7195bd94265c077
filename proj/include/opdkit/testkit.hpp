#ifndef OPDKIT_TESTKIT_HPP
#define OPDKIT_TESTKIT_HPP

#include <cstdint>
#include <stdexcept>

#include "opdkit/fincat.hpp"
#include "opdkit/operad.hpp"
#include "opdkit/smc.hpp"

namespace opdkit::testkit {

struct generation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every generator is a deterministic function of the seed.
struct GenConfig {
  std::uint64_t seed = 0;
  int max_objects = 3;
  int max_arrows = 4;
  int max_colours = 3;
  int max_ops = 4;        // generator count of the free operad signature
  int arity_bound = 4;
  int sequence_bound = 4;
};

// Random finite category: a truncated path category over a random quiver
// (long composites collapse to absorbing arrows), optionally enriched with a
// cloned object to create non-identity isomorphisms.  Always validates.
cat::CatPtr gen_category(const GenConfig& cfg);

// Random finite operad: the free symmetric operad on a random signature of
// generators of arity >= 2 (finite once truncated at the arity bound),
// optionally enriched with a cloned colour to create invertible unary
// operations.  Always validates.
opd::OpdPtr gen_operad(const GenConfig& cfg);

// A valid pinning whose hereditary check fails, obtained from tau by either
// (a) adjoining an absorbing morphism family rooted at a length->=2 codomain
// or (b) identifying two previously distinct decomposable morphisms through
// a monoidal congruence.  The emission is re-validated and the hereditary
// flip is asserted; throws generation_error when no mutation site works.
smc::PinnedSMC mutate_break_hereditary(const smc::PinnedSMC& tau, std::uint64_t seed);

// A weak symmetric monoidal instance for the strictification suite: a strict
// Z/2-labelled skeleton transported along a seeded family of coherence
// twists, together with the strong monoidal functor from the free source and
// its untwisted counterpart.
struct TwistedInstance {
  std::shared_ptr<const smc::WeakSMC> weak;
  smc::StrongMonoidalFunctor twisted;  // into `weak`
  smc::StrongMonoidalFunctor plain;    // same data with identity twists
};

TwistedInstance gen_twisted_weak(std::uint64_t seed, int bound);

}  // namespace opdkit::testkit

#endif
