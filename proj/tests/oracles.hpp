// oracles.hpp
// Slow, obviously-correct reference implementations for tests. Nothing
// here touches the sieve tables.

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

inline std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline int mu(std::uint64_t n) {
  int s = 1;
  for (const auto& [p, k] : factor(n)) {
    if (k > 1) return 0;
    s = -s;
  }
  return s;
}

inline std::uint64_t phi(std::uint64_t n) {
  std::uint64_t r = 0;
  for (std::uint64_t k = 1; k <= n; ++k) r += std::gcd(k, n) == 1;
  return r;
}

inline double lambda(std::uint64_t n) {
  const auto f = factor(n);
  return f.size() == 1 ? std::log(static_cast<double>(f[0].first)) : 0.0;
}

inline std::uint64_t divisors(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t d = 1; d <= n; ++d) c += n % d == 0;
  return c;
}

// Largest prime factor, 1 for n = 1.
inline std::uint64_t lpf(std::uint64_t n) {
  const auto f = factor(n);
  return f.empty() ? 1 : f.back().first;
}

inline std::uint64_t spf(std::uint64_t n) {
  const auto f = factor(n);
  return f.empty() ? 1 : f.front().first;
}

// Sum of doubles in binary128, rounded once.
inline double exact_sum(const std::vector<double>& v) {
  __float128 s = 0;
  for (const double x : v) s += static_cast<__float128>(x);
  return static_cast<double>(s);
}

}  // namespace oracle
