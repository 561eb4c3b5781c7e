// characters.hpp
// The full character group mod q, built from the prime-power components of
// (Z/q)^*. Odd p^k is cyclic on a primitive root; 2^k for k >= 3 is split as
// <-1> x <5>. A character is an exponent vector over these cyclic factors and
// its values are kept as exact exponents k of e^{2 pi i k / N}, N being the
// group exponent.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace bvw {

struct CyclicFactor {
  std::uint64_t prime = 0;
  unsigned power = 0;
  std::uint64_t prime_power = 0;  // p^k the factor lives in
  std::uint64_t order = 0;
  std::uint64_t generator = 0;    // as a residue mod p^k
};

struct DirichletCharacter {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> exponents;  // one per cyclic factor
  std::uint64_t conductor = 1;
  bool is_principal = false;
  bool is_primitive = false;
  bool is_real = false;
  std::uint64_t order = 1;  // multiplicative order of the character
};

class CharacterGroup {
 public:
  static constexpr std::uint64_t kDefaultCap = 10'000;

  // CapacityError when q > cap; DomainError when q == 0.
  explicit CharacterGroup(std::uint64_t q, std::uint64_t cap = kDefaultCap);

  std::uint64_t modulus() const { return q_; }
  std::uint64_t order() const { return phi_; }
  // N with every value an N-th root of unity.
  std::uint64_t exponent() const { return exponent_; }
  const std::vector<CyclicFactor>& factors() const { return factors_; }
  const std::vector<DirichletCharacter>& characters() const { return chars_; }
  std::size_t size() const { return chars_.size(); }
  const DirichletCharacter& operator[](std::size_t i) const { return chars_[i]; }

  bool is_unit(std::uint64_t n) const { return unit_[n % q_] != 0; }
  // k with chi(n) = e^{2 pi i k / N}, or -1 when gcd(n, q) > 1.
  std::int64_t value_exponent(const DirichletCharacter& chi, std::uint64_t n) const;
  std::complex<double> value(const DirichletCharacter& chi, std::uint64_t n) const;
  // e^{2 pi i k / N}; exact at multiples of N/4.
  const std::complex<double>& root(std::uint64_t k) const { return roots_[k % exponent_]; }
  // Discrete logs of n on each cyclic factor; empty when n is not a unit.
  std::vector<std::uint64_t> logs(std::uint64_t n) const;

  // Index of the principal character (always 0).
  static constexpr std::size_t principal_index() { return 0; }

 private:
  std::uint64_t conductor_of(const std::vector<std::uint64_t>& exponents) const;

  std::uint64_t q_ = 1;
  std::uint64_t phi_ = 1;
  std::uint64_t exponent_ = 1;
  std::vector<CyclicFactor> factors_;
  // Flat table: logs_[r * factors_.size() + i], valid when unit_[r].
  std::vector<std::uint32_t> logs_;
  std::vector<std::uint8_t> unit_;
  std::vector<std::complex<double>> roots_;
  std::vector<DirichletCharacter> chars_;
};

}  // namespace bvw
