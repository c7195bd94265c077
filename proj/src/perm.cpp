#include "opdkit/perm.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace opdkit {

std::uint64_t max_enum() {
  static const std::uint64_t limit = [] {
    if (const char* env = std::getenv("OPDKIT_MAX_ENUM")) {
      const auto v = static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
      if (v > 0) return v;
    }
    return std::uint64_t{1000000};
  }();
  return limit;
}

void check_enum_budget(std::uint64_t size, const std::string& what) {
  if (size > max_enum())
    throw enum_limit_error("enumeration of " + what + " exceeds OPDKIT_MAX_ENUM (" +
                           std::to_string(size) + " > " + std::to_string(max_enum()) + ")");
}

}  // namespace opdkit

namespace opdkit::perm {

FinFunction::FinFunction(int m, int n, std::vector<int> imgs)
    : domain_size(m), codomain_size(n), images(std::move(imgs)) {
  if (static_cast<int>(images.size()) != m)
    throw input_error("FinFunction: expected " + std::to_string(m) + " images, got " +
                      std::to_string(images.size()));
  for (int v : images)
    if (v < 1 || v > n)
      throw input_error("FinFunction: image " + std::to_string(v) + " outside 1.." + std::to_string(n));
}

bool FinFunction::is_monotone() const {
  for (size_t i = 1; i < images.size(); ++i)
    if (images[i - 1] > images[i]) return false;
  return true;
}

std::vector<int> FinFunction::fiber(int j) const {
  std::vector<int> out;
  for (int i = 1; i <= domain_size; ++i)
    if ((*this)(i) == j) out.push_back(i);
  return out;
}

Permutation::Permutation(std::vector<int> imgs) : images(std::move(imgs)) {
  const int n = size();
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int v : images) {
    if (v < 1 || v > n || seen[static_cast<size_t>(v) - 1])
      throw input_error("Permutation: images are not a bijection of 1.." + std::to_string(n));
    seen[static_cast<size_t>(v) - 1] = true;
  }
}

Permutation Permutation::id(int n) {
  std::vector<int> v(static_cast<size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  Permutation p;
  p.images = std::move(v);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images.size());
  for (int i = 1; i <= size(); ++i) inv[static_cast<size_t>((*this)(i)) - 1] = i;
  Permutation p;
  p.images = std::move(inv);
  return p;
}

bool Permutation::is_identity() const {
  for (int i = 1; i <= size(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

Permutation after(const Permutation& g, const Permutation& f) {
  if (g.size() != f.size()) throw input_error("permutation composition: size mismatch");
  std::vector<int> v(f.images.size());
  for (int i = 1; i <= f.size(); ++i) v[static_cast<size_t>(i) - 1] = g(f(i));
  Permutation p;
  p.images = std::move(v);
  return p;
}

FinFunction after(const FinFunction& g, const FinFunction& f) {
  if (g.domain_size != f.codomain_size) throw input_error("function composition: size mismatch");
  std::vector<int> v(static_cast<size_t>(f.domain_size));
  for (int i = 1; i <= f.domain_size; ++i) v[static_cast<size_t>(i) - 1] = g(f(i));
  return FinFunction(f.domain_size, g.codomain_size, std::move(v));
}

Permutation block_sum(const std::vector<Permutation>& ps) {
  std::vector<int> v;
  int offset = 0;
  for (const auto& p : ps) {
    for (int i = 1; i <= p.size(); ++i) v.push_back(offset + p(i));
    offset += p.size();
  }
  Permutation out;
  out.images = std::move(v);
  return out;
}

Permutation block_perm(const Permutation& rho, const std::vector<int>& sizes) {
  const int n = rho.size();
  if (static_cast<int>(sizes.size()) != n) throw input_error("block_perm: size list does not match rho");
  // Offsets of each slot in the rho-permuted arrangement B_{rho^-1(1)}..B_{rho^-1(n)}.
  const Permutation inv = rho.inverse();
  int acc = 0;
  std::vector<int> offset_at_slot(static_cast<size_t>(n), 0);
  for (int j = 1; j <= n; ++j) {
    offset_at_slot[static_cast<size_t>(j) - 1] = acc;
    acc += sizes[static_cast<size_t>(inv(j)) - 1];
  }
  std::vector<int> v;
  v.reserve(static_cast<size_t>(acc));
  for (int i = 1; i <= n; ++i) {
    const int slot = rho(i);  // block i lands in slot rho(i)
    const int base = offset_at_slot[static_cast<size_t>(slot) - 1];
    for (int t = 1; t <= sizes[static_cast<size_t>(i) - 1]; ++t) v.push_back(base + t);
  }
  Permutation out;
  out.images = std::move(v);
  return out;
}

PermMonotoneFactorisation perm_monotone_factor(const FinFunction& alpha) {
  const int m = alpha.domain_size;
  const int n = alpha.codomain_size;
  std::vector<int> fiber_size(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= m; ++i) ++fiber_size[static_cast<size_t>(alpha(i))];
  std::vector<int> offset(static_cast<size_t>(n) + 1, 0);
  for (int j = 1; j <= n; ++j) offset[static_cast<size_t>(j)] = offset[static_cast<size_t>(j) - 1] + fiber_size[static_cast<size_t>(j) - 1];

  std::vector<int> lambda_images;
  lambda_images.reserve(static_cast<size_t>(m));
  for (int j = 1; j <= n; ++j)
    for (int t = 0; t < fiber_size[static_cast<size_t>(j)]; ++t) lambda_images.push_back(j);

  std::vector<int> sigma_images(static_cast<size_t>(m));
  std::vector<int> used(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= m; ++i) {
    const int j = alpha(i);
    sigma_images[static_cast<size_t>(i) - 1] = offset[static_cast<size_t>(j)] + ++used[static_cast<size_t>(j)];
  }

  PermMonotoneFactorisation out;
  out.sigma.images = std::move(sigma_images);
  out.lambda = FinFunction(m, n, std::move(lambda_images));
  return out;
}

void enumerate_functions(int m, int n, const std::function<void(const FinFunction&)>& visit) {
  if (m < 0 || n < 0) throw input_error("enumerate_functions: negative sizes");
  if (m == 0) {
    visit(FinFunction(0, n, {}));
    return;
  }
  if (n == 0) return;
  std::vector<int> images(static_cast<size_t>(m), 1);
  for (;;) {
    visit(FinFunction(m, n, images));
    int pos = m - 1;
    while (pos >= 0 && images[static_cast<size_t>(pos)] == n) {
      images[static_cast<size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) return;
    ++images[static_cast<size_t>(pos)];
  }
}

std::vector<FinFunction> all_functions(int m, int n) {
  std::vector<FinFunction> out;
  enumerate_functions(m, n, [&](const FinFunction& f) { out.push_back(f); });
  return out;
}

const std::vector<Permutation>& all_permutations(int n) {
  static std::mutex mtx;
  static std::map<int, std::vector<Permutation>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<int> v(static_cast<size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> perms;
  do {
    Permutation p;
    p.images = v;
    perms.push_back(std::move(p));
  } while (std::next_permutation(v.begin(), v.end()));
  return cache.emplace(n, std::move(perms)).first->second;
}

std::string to_string(const FinFunction& f) {
  std::ostringstream os;
  os << "fun " << f.domain_size << "->" << f.codomain_size << " [";
  for (int i = 1; i <= f.domain_size; ++i) os << (i > 1 ? " " : "") << f(i);
  os << "]";
  return os.str();
}

std::string to_string(const Permutation& p) {
  std::ostringstream os;
  os << "perm";
  for (int v : p.images) os << ' ' << v;
  return os.str();
}

}  // namespace opdkit::perm
