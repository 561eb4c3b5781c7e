// lemma3.hpp
// Parameter calculus for the rough-number sieve step: D, s, b, eps1, eps2,
// the two side conditions, the threshold inequality in c, and the
// exceptional-zero terms. Everything takes log x rather than x, since the
// interesting x are far beyond double range.

#pragma once

#include "bvw/rigor/interval.hpp"

namespace bvw {

struct Lemma3Params {
  int a = 0;
  double log_x = 0.0;
  Interval log_d;   // log D = log x / 2 + log log x
  Interval log_r;   // log R = (A+3) log log x
  Interval s;
  Interval b;
  Interval eps1;
  Interval eps2;
  bool side_b = false;  // 1 - e^{1+1/b}/b > 1/e
  bool side_s = false;  // s > b + 1
};

// 2 <= a <= 7 and log_x > e, otherwise DomainError.
Lemma3Params lemma3_params(int a, double log_x);

struct ThresholdCheck {
  int a = 0;
  double t = 0.0;
  Interval lhs;
  Interval rhs;
  bool holds = false;  // lhs certainly greater than rhs
  double margin() const { return lhs.mid() - rhs.mid(); }
};

// Evaluates
//   c(1-eps1)(1-eps2)A^2 log A / (4(A+3)) + 2 log log R - log(1 + 8/log^2 R)
//     > (A+3) log(cA^2 log A)
// with T = cA^2 log A taken as log x.
ThresholdCheck lemma3_threshold_check(int a, double t);
bool lemma3_threshold_holds(int a, double t);

// Smallest integer T in [lo, hi] at which the check holds (the check is
// increasing in T); 0 when none does.
long lemma3_minimal_threshold(int a, long lo = 100, long hi = 1'000'000);

struct ExceptionalTerms {
  Interval siegel_term;          // x^{-b0}/(1-b0) + x^{b0-1}/b0
  Interval siegel_term_variant;  // x^{b0}/(1-b0) + x^{b0-1}/b0
  Interval liu_wang_exponent;    // -4 pi / (9 * 0.4923 L^{1/4} (log L)^2)
  Interval liu_wang_term;        // x^{exponent} / (1 + exponent)
};

// 0 < beta0 < 1 and log_x > 1, otherwise DomainError.
ExceptionalTerms exceptional_terms(double log_x, double beta0);

}  // namespace bvw
