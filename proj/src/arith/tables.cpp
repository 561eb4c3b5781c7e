#include "bvw/arith/tables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bvw/errors.hpp"
#include "bvw/util/parallel.hpp"

namespace bvw {

namespace {

std::vector<std::uint32_t> small_primes_upto(std::uint64_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

FunctionTables::FunctionTables(std::uint64_t limit, unsigned workers, std::uint64_t memory_cap) {
  if (limit < 2) throw DomainError("table limit must be at least 2");
  if (limit >= std::uint64_t{0xFFFFFFFF}) {
    throw CapacityError("table limit must fit 32-bit smallest prime factors");
  }
  if ((limit + 1) * sizeof(std::uint32_t) > memory_cap) {
    throw CapacityError("table limit " + std::to_string(limit) + " exceeds memory cap of " +
                        std::to_string(memory_cap) + " bytes");
  }
  limit_ = limit;
  spf_.assign(limit + 1, 0);
  spf_[1] = 1;

  const std::vector<std::uint32_t> base = small_primes_upto(isqrt(limit));
  const auto segments = split_range(2, limit + 1, kSegmentLength);

  // Segments write disjoint slices, so the result is independent of the
  // worker count.
  parallel_map(segments.size(), workers, [&](std::size_t s) {
    const auto [lo, hi] = segments[s];
    for (const std::uint32_t p : base) {
      const std::uint64_t pp = std::uint64_t{p} * p;
      if (pp >= hi) break;
      std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
      for (std::uint64_t m = start; m < hi; m += p) {
        if (spf_[m] == 0) spf_[m] = p;
      }
    }
    for (std::uint64_t n = lo; n < hi; ++n) {
      if (spf_[n] == 0) spf_[n] = static_cast<std::uint32_t>(n);
    }
    return 0;
  });
  collect_primes();
}

FunctionTables FunctionTables::from_spf(std::vector<std::uint32_t> spf) {
  if (spf.size() < 3 || spf[1] != 1) throw UsageError("malformed spf array");
  FunctionTables t;
  t.limit_ = spf.size() - 1;
  t.spf_ = std::move(spf);
  for (std::uint64_t n = 2; n <= t.limit_; ++n) {
    const std::uint32_t p = t.spf_[n];
    if (p < 2 || n % p != 0) throw UsageError("malformed spf array at n=" + std::to_string(n));
  }
  t.collect_primes();
  return t;
}

void FunctionTables::collect_primes() {
  primes_.clear();
  for (std::uint64_t n = 2; n <= limit_; ++n) {
    if (spf_[n] == n) primes_.push_back(static_cast<std::uint32_t>(n));
  }
}

int FunctionTables::mu(std::uint64_t n) const {
  int sign = 1;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return sign;
}

std::uint64_t FunctionTables::phi(std::uint64_t n) const {
  std::uint64_t result = n;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    result = result / p * (p - 1);
    while (n % p == 0) n /= p;
  }
  return result;
}

std::uint64_t FunctionTables::prime_power_base(std::uint64_t n) const {
  if (n < 2) return 0;
  const std::uint32_t p = spf_[n];
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

double FunctionTables::von_mangoldt(std::uint64_t n) const {
  const std::uint64_t p = prime_power_base(n);
  return p == 0 ? 0.0 : std::log(static_cast<double>(p));
}

std::uint64_t FunctionTables::divisor_count(std::uint64_t n) const {
  std::uint64_t d = 1;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    d *= e + 1;
  }
  return d;
}

unsigned FunctionTables::omega(std::uint64_t n) const {
  unsigned w = 0;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    while (n % p == 0) n /= p;
    ++w;
  }
  return w;
}

std::uint64_t FunctionTables::radical(std::uint64_t n) const {
  std::uint64_t r = 1;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    while (n % p == 0) n /= p;
    r *= p;
  }
  return r;
}

std::vector<PrimePower> FunctionTables::factor(std::uint64_t n) const {
  std::vector<PrimePower> out;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

std::uint64_t FunctionTables::prime_count(std::uint64_t n) const {
  require_covers(n, "prime_count");
  return static_cast<std::uint64_t>(
      std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin());
}

void FunctionTables::require_covers(std::uint64_t n, const char* what) const {
  if (n > limit_) {
    throw CapacityError(std::string(what) + ": argument " + std::to_string(n) +
                        " exceeds table limit " + std::to_string(limit_));
  }
}

}  // namespace bvw
