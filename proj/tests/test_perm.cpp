#include <doctest.h>

#include <optional>

#include "opdkit/perm.hpp"

using namespace opdkit;
using namespace opdkit::perm;

namespace {

// Brute-force oracle: search all of Sigma_m for the permutation-monotone
// factorisation, independent of the production routine.
std::optional<std::pair<Permutation, FinFunction>> factor_by_search(const FinFunction& alpha) {
  std::optional<std::pair<Permutation, FinFunction>> found;
  for (const auto& sigma : all_permutations(alpha.domain_size)) {
    // lambda = alpha o sigma^-1 must be monotone.
    const FinFunction lambda = after(alpha, sigma.inverse().as_function());
    if (!lambda.is_monotone()) continue;
    bool fiber_monotone = true;
    for (int j = 1; j <= alpha.codomain_size && fiber_monotone; ++j) {
      const auto fiber = alpha.fiber(j);
      for (size_t k = 1; k < fiber.size(); ++k)
        if (sigma(fiber[k - 1]) > sigma(fiber[k])) {
          fiber_monotone = false;
          break;
        }
    }
    if (!fiber_monotone) continue;
    if (found) return std::nullopt;  // not unique: signal trouble
    found = {sigma, lambda};
  }
  return found;
}

}  // namespace

TEST_CASE("perm_monotone_factor on the spec instances") {
  // Identity on 3.
  {
    const auto [sigma, lambda] = perm_monotone_factor(FinFunction(3, 3, {1, 2, 3}));
    CHECK(sigma.is_identity());
    CHECK(lambda.images == std::vector<int>{1, 2, 3});
  }
  // alpha : 3 -> 2 with images (2,1,1); unique solution found by brute force.
  {
    const FinFunction alpha(3, 2, {2, 1, 1});
    const auto expected = factor_by_search(alpha);
    REQUIRE(expected.has_value());
    CHECK(expected->first.images == std::vector<int>{3, 1, 2});
    CHECK(expected->second.images == std::vector<int>{1, 1, 2});
    const auto [sigma, lambda] = perm_monotone_factor(alpha);
    CHECK(sigma.images == expected->first.images);
    CHECK(lambda.images == expected->second.images);
  }
  // Constant alpha is already monotone.
  {
    const FinFunction alpha(2, 1, {1, 1});
    const auto [sigma, lambda] = perm_monotone_factor(alpha);
    CHECK(sigma.is_identity());
    CHECK(lambda.images == alpha.images);
  }
}

TEST_CASE("perm_monotone_factor matches exhaustive search for all m,n <= 5") {
  for (int m = 0; m <= 5; ++m) {
    for (int n = 0; n <= 5; ++n) {
      enumerate_functions(m, n, [&](const FinFunction& alpha) {
        const auto expected = factor_by_search(alpha);
        REQUIRE_MESSAGE(expected.has_value(), "non-unique factorisation for ", to_string(alpha));
        const auto [sigma, lambda] = perm_monotone_factor(alpha);
        CHECK(sigma.images == expected->first.images);
        CHECK(lambda.images == expected->second.images);
        CHECK(after(lambda, sigma.as_function()).images == alpha.images);
        // lambda has the same fiber cardinalities as alpha.
        for (int j = 1; j <= n; ++j) CHECK(lambda.fiber(j).size() == alpha.fiber(j).size());
      });
    }
  }
}

TEST_CASE("fiber_subsequence") {
  const FinFunction alpha(3, 2, {2, 1, 1});
  const std::vector<std::string> xs{"a", "b", "c"};
  CHECK(fiber_subsequence(alpha, 1, xs) == std::vector<std::string>{"b", "c"});
  CHECK(fiber_subsequence(alpha, 2, xs) == std::vector<std::string>{"a"});
  const FinFunction beta(2, 3, {1, 1});
  CHECK(fiber_subsequence(beta, 3, std::vector<std::string>{"a", "b"}).empty());
  CHECK_THROWS_AS(fiber_subsequence(alpha, 1, std::vector<std::string>{"a"}), input_error);
  CHECK_THROWS_AS(fiber_subsequence(alpha, 5, xs), input_error);
}

TEST_CASE("fiber concatenation rearranges by sigma inverse") {
  for (int m = 0; m <= 4; ++m) {
    for (int n = 0; n <= 4; ++n) {
      enumerate_functions(m, n, [&](const FinFunction& alpha) {
        std::vector<int> xs;
        for (int i = 1; i <= m; ++i) xs.push_back(100 + i);
        const auto [sigma, lambda] = perm_monotone_factor(alpha);
        std::vector<int> concat;
        for (int j = 1; j <= n; ++j)
          for (int v : fiber_subsequence(alpha, j, xs)) concat.push_back(v);
        CHECK(concat == act_on_sequence(sigma, xs));
        (void)lambda;
      });
    }
  }
}

TEST_CASE("enumerate_functions counts and order") {
  CHECK(all_functions(2, 2).size() == 4);
  CHECK(all_functions(0, 5).size() == 1);
  CHECK(all_functions(3, 1).size() == 1);
  CHECK(all_functions(2, 0).empty());
  for (int m = 0; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) {
      const auto fs = all_functions(m, n);
      std::uint64_t expected = 1;
      for (int i = 0; i < m; ++i) expected *= static_cast<std::uint64_t>(n);
      CHECK(fs.size() == expected);
      for (size_t i = 1; i < fs.size(); ++i) CHECK(fs[i - 1].images < fs[i].images);
    }
}

TEST_CASE("permutation algebra") {
  const Permutation s({2, 3, 1});
  CHECK(after(s, s.inverse()).is_identity());
  CHECK(after(s.inverse(), s).is_identity());
  CHECK(to_string(Permutation({3, 1, 2})) == "perm 3 1 2");

  // Composition convention: (g after f)(i) = g(f(i)).
  const Permutation f({2, 1, 3});
  const Permutation g({1, 3, 2});
  const Permutation gf = after(g, f);
  for (int i = 1; i <= 3; ++i) CHECK(gf(i) == g(f(i)));

  CHECK_THROWS_AS(Permutation({1, 1, 3}), input_error);
  CHECK_THROWS_AS(Permutation({1, 4, 2}), input_error);
}

TEST_CASE("sequence action and block permutations") {
  // (rho . x)_j = x_{rho^-1 j}: rho moves position i to position rho(i).
  const Permutation rho({2, 3, 1});
  CHECK(act_on_sequence(rho, std::vector<std::string>{"a", "b", "c"}) ==
        std::vector<std::string>{"c", "a", "b"});

  // block_perm moves whole blocks the way rho moves entries.
  const std::vector<int> sizes{2, 0, 3};
  const std::vector<std::vector<int>> blocks{{1, 2}, {}, {3, 4, 5}};
  for (const auto& r : all_permutations(3)) {
    const Permutation bp = block_perm(r, sizes);
    std::vector<int> flat;
    for (const auto& b : blocks) flat.insert(flat.end(), b.begin(), b.end());
    const auto moved = act_on_sequence(bp, flat);
    const auto moved_blocks = act_on_sequence(r, blocks);
    std::vector<int> expected;
    for (const auto& b : moved_blocks) expected.insert(expected.end(), b.begin(), b.end());
    CHECK(moved == expected);
  }

  // block_sum is tensoring of permutations.
  const Permutation a({2, 1});
  const Permutation b({1, 3, 2});
  CHECK(block_sum({a, b}).images == std::vector<int>{2, 1, 3, 5, 4});
}
