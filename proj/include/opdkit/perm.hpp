#ifndef OPDKIT_PERM_HPP
#define OPDKIT_PERM_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "opdkit/report.hpp"

namespace opdkit::perm {

// Conventions used throughout the library:
//  - indices are 1-based, matching the external text format;
//  - composition is (g `after` f)(i) = g(f(i));
//  - a permutation rho acts on a sequence x by (rho . x)_j = x_{rho^-1(j)},
//    so rho moves the entry at position i to position rho(i).

// A function between finite ordinals {1..m} -> {1..n}.
struct FinFunction {
  int domain_size = 0;
  int codomain_size = 0;
  std::vector<int> images;  // images[i-1] = value at i, each in 1..n

  FinFunction() = default;
  FinFunction(int m, int n, std::vector<int> imgs);

  int operator()(int i) const { return images[static_cast<size_t>(i) - 1]; }
  bool is_monotone() const;
  std::vector<int> fiber(int j) const;  // indices i with images(i) = j, increasing
  bool operator==(const FinFunction&) const = default;
};

// A bijection of {1..n}.
struct Permutation {
  std::vector<int> images;

  Permutation() = default;
  explicit Permutation(std::vector<int> imgs);
  static Permutation id(int n);

  int size() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images[static_cast<size_t>(i) - 1]; }
  Permutation inverse() const;
  bool is_identity() const;
  FinFunction as_function() const { return FinFunction(size(), size(), images); }
  bool operator==(const Permutation&) const = default;
  bool operator<(const Permutation& o) const { return images < o.images; }
};

// after(g, f)(i) = g(f(i)).
Permutation after(const Permutation& g, const Permutation& f);
FinFunction after(const FinFunction& g, const FinFunction& f);

// Direct sum: blocks of sizes |ps[k]| permuted within themselves.
Permutation block_sum(const std::vector<Permutation>& ps);

// The permutation of Sum(sizes) that moves whole blocks the way rho moves
// sequence entries: applying it to the concatenation of blocks B_1..B_n
// yields B_{rho^-1(1)} .. B_{rho^-1(n)}.
Permutation block_perm(const Permutation& rho, const std::vector<int>& sizes);

// Unique factorisation alpha = lambda o sigma with lambda monotone and
// sigma a permutation that is monotone on every fiber of alpha.
struct PermMonotoneFactorisation {
  Permutation sigma;
  FinFunction lambda;
};
PermMonotoneFactorisation perm_monotone_factor(const FinFunction& alpha);

// Entries x_i with alpha(i) = j, in increasing order of i.
template <typename T>
std::vector<T> fiber_subsequence(const FinFunction& alpha, int j, const std::vector<T>& xs) {
  if (static_cast<int>(xs.size()) != alpha.domain_size)
    throw input_error("fiber_subsequence: sequence length does not match the function domain");
  if (j < 1 || j > alpha.codomain_size)
    throw input_error("fiber_subsequence: index outside the codomain");
  std::vector<T> out;
  for (int i = 1; i <= alpha.domain_size; ++i)
    if (alpha(i) == j) out.push_back(xs[static_cast<size_t>(i) - 1]);
  return out;
}

// Apply rho to a sequence: result[j-1] = xs[rho^-1(j)-1].
template <typename T>
std::vector<T> act_on_sequence(const Permutation& rho, const std::vector<T>& xs) {
  std::vector<T> out(xs.size());
  for (int i = 1; i <= rho.size(); ++i) out[static_cast<size_t>(rho(i)) - 1] = xs[static_cast<size_t>(i) - 1];
  return out;
}

// All n^m functions {1..m} -> {1..n}, lexicographic in the image sequence.
void enumerate_functions(int m, int n, const std::function<void(const FinFunction&)>& visit);
std::vector<FinFunction> all_functions(int m, int n);

// All permutations of {1..n}, lexicographic.
const std::vector<Permutation>& all_permutations(int n);

std::string to_string(const FinFunction& f);
std::string to_string(const Permutation& p);  // "perm 3 1 2"

}  // namespace opdkit::perm

#endif
