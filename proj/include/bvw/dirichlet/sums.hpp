// sums.hpp
// Chebyshev-type sums in progressions and over characters, the
// conductor-truncated decomposition F^(R), and z-rough counts.
//
// Real arguments x are floored: every sum runs over integers n <= x.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "bvw/arith/functions.hpp"
#include "bvw/arith/tables.hpp"
#include "bvw/dirichlet/characters.hpp"

namespace bvw {

enum class Weight { von_mangoldt, g_log };

// f(n) for the chosen weight; z only matters for g_log (g(n) log n).
double weight_value(const FunctionTables& tables, Weight w, std::uint64_t n, std::uint64_t z);

// S[r] = sum_{n <= x, n = r mod q} f(n) for every residue r, compensated.
std::vector<double> class_sums(const FunctionTables& tables, std::uint64_t x, std::uint64_t q,
                               Weight w, std::uint64_t z = 0);

// sum_{n <= x} Lambda(n) chi(n), directly over prime powers.
std::complex<double> psi_chi(const FunctionTables& tables, std::uint64_t x,
                             const CharacterGroup& group, const DirichletCharacter& chi);

// sum_{n <= x} f(n) chi(n) from precomputed class sums.
std::complex<double> character_sum(const CharacterGroup& group, const DirichletCharacter& chi,
                                   const std::vector<double>& sums);

struct ProgressionSums {
  std::uint64_t x = 0;
  std::uint64_t q = 1;
  std::uint64_t a = 1;
  double psi = 0.0;
  double g = 0.0;   // G(x; q, a)
  double g1 = 0.0;  // G(x; q, a) - G(x) / phi(q)
  double discrepancy = 0.0;  // |psi - x / phi(q)|
};

// DomainError unless gcd(a, q) == 1; CapacityError beyond the tables.
ProgressionSums psi_progression(const FunctionTables& tables, std::uint64_t x, std::uint64_t q,
                                std::uint64_t a);
// Fills the G parts (threshold z) as well as psi.
ProgressionSums g_weighted_sums(const FunctionTables& tables, std::uint64_t x, std::uint64_t q,
                                std::uint64_t a, std::uint64_t z);

// sum_{n <= x} g(n) log n over all n.
double g_total(const FunctionTables& tables, std::uint64_t x, std::uint64_t z);

struct FRDecomposition {
  double by_definition = 0.0;  // F - (1/phi) sum_{cond <= R} conj(chi(a)) sum f chi
  double by_characters = 0.0;  // (1/phi) sum_{cond > R} conj(chi(a)) sum f chi
  double imaginary_residue = 0.0;
  double value() const { return by_characters; }
};

inline constexpr double kDecompositionTolerance = 1e-9;

// ConsistencyError when the two paths differ by more than the tolerance
// (relative to the size of the terms involved). z defaults to R^2 for g_log.
FRDecomposition f_r_decomposition(const FunctionTables& tables, std::uint64_t x,
                                  const CharacterGroup& group, std::uint64_t a, double r,
                                  Weight w, std::uint64_t z = 0);
// Same, from class sums already computed for this modulus.
FRDecomposition f_r_from_sums(const CharacterGroup& group, std::uint64_t a, double r,
                              const std::vector<double>& sums);

// (1/phi(q)) sum_{cond(chi) = r} conj(chi(a)) sum_{n <= x} f(n) chi(n), keyed by r.
std::map<std::uint64_t, std::complex<double>> conductor_contributions(
    const CharacterGroup& group, std::uint64_t a, const std::vector<double>& sums);

// Default threshold for the g_log weight: floor(R^2).
std::uint64_t default_rough_threshold(double r);

// #{n <= y : n = a mod q, g(n) = 1}; n = 1 counts when a = 1 mod q.
std::uint64_t rough_count(const FunctionTables& tables, std::uint64_t y, std::uint64_t z,
                          std::uint64_t q, std::uint64_t a);

// int_1^y N(t, z; q, a) / t dt as the exact sum over the jump points of N.
double rough_count_integral(const FunctionTables& tables, std::uint64_t y, std::uint64_t z,
                            std::uint64_t q, std::uint64_t a);

// log y * N(y) - int_1^y N(t)/t dt, which equals G(y; q, a).
double g_by_partial_summation(const FunctionTables& tables, std::uint64_t y, std::uint64_t z,
                              std::uint64_t q, std::uint64_t a);

// q prod_{p | q, p > z} (1 - 1/p), exact.
Rational phi_partial(std::uint64_t q, std::uint64_t z);

}  // namespace bvw
