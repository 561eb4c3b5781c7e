// large_sieve.hpp
// Randomised checks of the large-sieve inequality
//
//   sum_{q <= Q} q/phi(q) sum*_{chi mod q} |sum_{n <= N} a_n chi(n)|^2 <= (N + Q^2) sum |a_n|^2
//
// and an exploratory probe of the bilinear character-sum bound over
// characters of conductor >= R.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "bvw/boundlab/report.hpp"
#include "bvw/dirichlet/characters.hpp"
#include "bvw/rigor/constants.hpp"

namespace bvw {

// Uniform on the closed unit disk by rejection from the square, using the
// top 53 bits of each 64-bit draw.
std::complex<double> unit_disk_sample(std::mt19937_64& rng);
std::vector<std::complex<double>> unit_disk_vector(std::mt19937_64& rng, std::size_t n);

// Character groups for every modulus 1..q_max.
std::vector<CharacterGroup> character_groups_upto(std::uint64_t q_max,
                                                  std::uint64_t cap = CharacterGroup::kDefaultCap);

struct LargeSieveValue {
  double lhs = 0.0;
  double rhs = 0.0;  // (N + Q^2) sum |a_n|^2
};

// a[i] is the coefficient of n = i + 1.
LargeSieveValue large_sieve_value(const std::vector<CharacterGroup>& groups,
                                  const std::vector<std::complex<double>>& a);

BoundCheckReport large_sieve_test(std::uint64_t q, std::uint64_t n, unsigned trials,
                                  std::uint64_t seed, unsigned workers = 1);

enum class CoefficientKind { ones, random };

struct BilinearOptions {
  std::uint64_t x = 0;  // m runs over X+1 .. X+M
  std::uint64_t m = 10;
  std::uint64_t y = 0;  // n runs over Y+1 .. Y+N
  std::uint64_t n = 10;
  CoefficientKind kind = CoefficientKind::ones;
  bool share_coefficients = false;  // b = a (needs M = N)
  double alpha1 = 3.24;
  double q0 = kDefaultQ0;
  std::uint64_t cutoff = 1'000'000;
};

struct BilinearProbe {
  double lhs = 0.0;
  double lhs_swapped = 0.0;  // roles of (a, X, M) and (b, Y, N) exchanged
  double norm_a = 0.0;
  double norm_b = 0.0;
  std::uint64_t characters = 0;  // characters of conductor >= R counted
  // Upper ends of the statement form (alpha^3 / (alpha-1) C5 Q) and the
  // form reached at the end of the argument (alpha / (alpha-1) C5 Q,
  // alpha^2 / (alpha-1) C4). NaN when Q < 3.
  double rhs_statement = 0.0;
  double rhs_proof = 0.0;
  BoundCheckReport report;  // observational: no pass/fail
};

BilinearProbe bilinear_lemma_probe(std::uint64_t q, double r, std::uint64_t seed,
                                   const BilinearOptions& o = {});

}  // namespace bvw
