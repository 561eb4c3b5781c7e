// theorem.hpp
// Assembly of the headline coefficients from the tabulated constants.
// C8 and C10 are only known to lie below e^{-2000}; they are carried as
// [0, smallest subnormal], which contains that range.

#pragma once

#include <optional>

#include "bvw/rigor/interval.hpp"

namespace bvw {

struct CoefficientRow {
  int a = 0;
  Interval alpha;
  Interval c6;
  Interval c7;
  Interval c9;
  Interval c1;
  Interval c12;
  Interval c1_prime;
};

// Catalog fixtures for one A; DomainError unless 2 <= a <= 7.
CoefficientRow coefficient_row(int a);

Interval tiny_constant();  // enclosure of C8 and C10

// (C6+C7+C8)/L + C9 + C10 + (A+3)(C0+e^{-100}) C2^2 with L = log log x.
Interval theorem_coefficient(int a, double loglog_x, double c0);
Interval theorem_coefficient(int a, double loglog_x, double c0, const Interval& c2);

// (C6+C7+C8)/L + C12 + C10 + (A+3)(C0+e^{-100}) C13, with C13 taken at
// log log x0 (defaulting to L).
Interval squarefree_coefficient(int a, double loglog_x, double c0,
                                std::optional<double> loglog_x0 = std::nullopt);

// Only the C1 part: (C6+C7+C8)/L + C9 + C10, resp. with C12 for the
// squarefree table.
Interval leading_coefficient(int a, double loglog_x);
Interval leading_squarefree_coefficient(int a, double loglog_x);

struct ImpliedThreshold {
  Interval enclosure;  // (C6+C7+C8) / (C1 - C9 - C10)
  double value = 0.0;  // upper end: the inequality holds for all L >= value
};

ImpliedThreshold implied_threshold(int a);
ImpliedThreshold implied_squarefree_threshold(int a);

}  // namespace bvw
