// lemma_sweeps.hpp
// Brute-force sweeps of the explicit elementary inequalities over integer
// ranges. Sums are step functions and right-hand sides are monotone, so
// integer points (plus left limits where the side decreases) are the
// extremal positions.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bvw/arith/tables.hpp"
#include "bvw/boundlab/report.hpp"
#include "bvw/rigor/constants.hpp"
#include "bvw/rigor/interval.hpp"

namespace bvw {

struct SweepOptions {
  unsigned workers = 1;
  double q0 = kDefaultQ0;
  std::uint64_t cutoff = 1'000'000;  // Euler-product cutoff for C2, C5
};

struct SweepConstants {
  Interval c2;
  Interval c5;
  Interval zeta2;
  Interval b5;
};
// Cached per cutoff.
const SweepConstants& sweep_constants(std::uint64_t cutoff);

inline constexpr std::uint64_t kMuOverPhiStart = 7920;
inline constexpr std::uint64_t kProdRatioMaxY = 1000;

// prod_{y <= p < z} p/(p-1) < 2 log z / log y, primes y <= 1000, z -> p+.
BoundCheckReport check_prod_ratio(const FunctionTables& t, std::uint64_t n,
                                  const SweepOptions& o = {});
// q/phi(q) < C3 log log q; primorials beyond Q0 are in domain.
BoundCheckReport check_q_over_phi(const FunctionTables& t, std::uint64_t n,
                                  const SweepOptions& o = {});
// sum_{n <= x} 1/phi(n) < C2 (1 + log x).
BoundCheckReport check_reciprocal_phi(const FunctionTables& t, std::uint64_t n,
                                      const SweepOptions& o = {});
// sum_{n <= u} mu^2(n) n / phi(n)^2 <= C4 log u, domain u > Q0.
BoundCheckReport check_mu2_n_over_phi2(const FunctionTables& t, std::uint64_t n,
                                       const SweepOptions& o = {});
// Same sum <= C2 log x + 89/16 - C2 log 6 for all x > 1.
BoundCheckReport check_mu2_n_over_phi2_intermediate(const FunctionTables& t, std::uint64_t n,
                                                    const SweepOptions& o = {});
// sum_{n <= x} mu^2(n) / phi(n)^2 < C5.
BoundCheckReport check_mu2_over_phi2(const FunctionTables& t, std::uint64_t n,
                                     const SweepOptions& o = {});
// pi(x) < 2x / log x for x >= 2.
BoundCheckReport check_pi_bound(const FunctionTables& t, std::uint64_t n,
                                const SweepOptions& o = {});

// The six lemma bounds followed by the intermediate 89/16 claim.
std::vector<BoundCheckReport> check_lemma0_suite(const FunctionTables& t, std::uint64_t n,
                                                 const SweepOptions& o = {});

// sum_{n <= x} mu^2(n)/phi(n) <= C11 + log x for 7920 <= x <= n. DomainError
// when n < 7920. Points below 7920 are reported in `extra` only.
BoundCheckReport check_mu_over_phi(const FunctionTables& t, std::uint64_t n,
                                   const SweepOptions& o = {});

// |Q(x) - x/zeta(2)| <= 2 sqrt x.
BoundCheckReport check_squarefree_count_bound(const FunctionTables& t, std::uint64_t n,
                                              const SweepOptions& o = {});
// d(l) < l^{1.06602 / log log l}, l >= 3, plus primorials past the table.
BoundCheckReport check_divisor_bound(const FunctionTables& t, std::uint64_t n,
                                     const SweepOptions& o = {});
// omega(n) < 1.3841 log n / log log n, n >= 3, plus primorials.
BoundCheckReport check_omega_bound(const FunctionTables& t, std::uint64_t n,
                                   const SweepOptions& o = {});
// V(z) < e^{-gamma} (1 + 1/(8 log^2 R)) / (2 log R) with z = R^2.
BoundCheckReport check_mertens_product(const FunctionTables& t, std::uint64_t n,
                                       const SweepOptions& o = {});

// divisor, omega, Mertens product, squarefree count.
std::vector<BoundCheckReport> check_misc_bounds(const FunctionTables& t, std::uint64_t n,
                                                const SweepOptions& o = {});

}  // namespace bvw
