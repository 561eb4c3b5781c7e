// tables.hpp
// Smallest-prime-factor table built by a segmented sieve, with derived
// accessors for the classical multiplicative functions.
//
// Every accessor walks the spf chain of n, so it costs O(number of prime
// factors of n) and allocates nothing. The table is immutable after
// construction and may be read from any number of threads.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bvw {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
};

class FunctionTables {
 public:
  static constexpr std::uint64_t kSegmentLength = std::uint64_t{1} << 22;
  // 2 GiB of spf entries.
  static constexpr std::uint64_t kDefaultMemoryCap = std::uint64_t{1} << 31;

  // Sieves [0, limit]. Throws CapacityError when the spf array would exceed
  // memory_cap bytes and DomainError when limit < 2.
  explicit FunctionTables(std::uint64_t limit, unsigned workers = 1,
                          std::uint64_t memory_cap = kDefaultMemoryCap);

  // Adopts a ready spf array (used by the on-disk cache). Validated lightly.
  static FunctionTables from_spf(std::vector<std::uint32_t> spf);

  std::uint64_t limit() const { return limit_; }

  // spf(1) == 1 and spf(0) == 0 by convention.
  std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }
  std::span<const std::uint32_t> spf_array() const { return spf_; }
  std::span<const std::uint32_t> primes() const { return primes_; }

  bool is_prime(std::uint64_t n) const { return n >= 2 && spf_[n] == n; }
  int mu(std::uint64_t n) const;
  std::uint64_t phi(std::uint64_t n) const;
  // Natural-log scale.
  double von_mangoldt(std::uint64_t n) const;
  std::uint64_t divisor_count(std::uint64_t n) const;
  unsigned omega(std::uint64_t n) const;
  std::uint64_t radical(std::uint64_t n) const;
  bool is_squarefree(std::uint64_t n) const { return mu(n) != 0; }
  // Prime p with n == p^k (k >= 1), or 0 when n is not a prime power.
  std::uint64_t prime_power_base(std::uint64_t n) const;
  std::vector<PrimePower> factor(std::uint64_t n) const;

  // g(n) for the roughness weight at threshold z: 1 iff n == 1 or every prime
  // factor of n exceeds z. Totally multiplicative.
  bool is_rough(std::uint64_t n, std::uint64_t z) const { return n == 1 || spf_[n] > z; }

  // pi(n) by binary search over the prime list.
  std::uint64_t prime_count(std::uint64_t n) const;

  // Throws CapacityError when n > limit().
  void require_covers(std::uint64_t n, const char* what) const;

 private:
  FunctionTables() = default;
  void collect_primes();

  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

}  // namespace bvw
