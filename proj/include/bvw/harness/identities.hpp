// identities.hpp
// Structural checks of the proof pipeline at desk scale: the psi^(R) sums,
// the exact conductor partition behind them, the Dirichlet convolution that
// produces c_n, and the trivial truncation estimate.

#pragma once

#include <cstdint>
#include <vector>

#include "bvw/arith/tables.hpp"
#include "bvw/boundlab/report.hpp"

namespace bvw {

struct PsiRTerm {
  std::uint64_t q = 0;
  double value = 0.0;  // psi^(R)(x; q, a)
  bool skipped = false;  // gcd(a, q) > 1
};

struct PsiRSum {
  std::uint64_t x = 0;
  std::uint64_t q_max = 0;
  double r = 0.0;
  std::uint64_t a = 1;
  double total = 0.0;  // sum_q |psi^(R)(x; q, a)|
  std::vector<PsiRTerm> terms;
};

// Moduli with gcd(a, q) > 1 are skipped. CapacityError past the character
// cap or the tables.
PsiRSum psi_r_sum(const FunctionTables& t, std::uint64_t x, std::uint64_t q, double r,
                  std::uint64_t a = 1, unsigned workers = 1);

struct PartitionCheck {
  double psi = 0.0;          // psi(x; q, a)
  double psi_1 = 0.0;        // psi^(1)
  double psi_r = 0.0;        // psi^(R)
  double principal = 0.0;    // conductor-1 contribution
  double middle = 0.0;       // conductors in (1, R]
  double error_principal = 0.0;  // |psi - psi^(1) - principal| / scale
  double error_middle = 0.0;     // |psi^(R) + middle - psi^(1)| / scale
};

// psi = psi^(1) + principal part and psi^(R) + (conductors in (1, R]) = psi^(1).
PartitionCheck conductor_partition_check(const FunctionTables& t, std::uint64_t x,
                                         std::uint64_t q, std::uint64_t a, double r);

// Sum_{q <= Q, gcd(a,q)=1} of both relative errors, as a report with
// tolerance 1e-9.
BoundCheckReport conductor_partition_report(const FunctionTables& t, std::uint64_t x,
                                            std::uint64_t q_max, std::uint64_t a, double r,
                                            unsigned workers = 1);

// c_u = sum_{mn = u} a_m b_n with a_n = g(n) mu(n) (a_1 = 0), b_m = g(m) log m
// and g at threshold floor(R^2); compared with g(u)(Lambda(u) - log u) to
// 1e-12 log u. CapacityError when x > 10^5 or beyond the tables.
inline constexpr std::uint64_t kConvolutionMax = 100'000;
BoundCheckReport convolution_identity_check(const FunctionTables& t, std::uint64_t x, double r);

// sum_{n <= x} |Lambda(n) - g(n) Lambda(n)| <= pi(R^2) log x.
BoundCheckReport truncation_estimate_check(const FunctionTables& t, std::uint64_t x, double r);

}  // namespace bvw
