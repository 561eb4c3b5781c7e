#include "bvw/rigor/lemma3.hpp"

#include <cmath>

#include <fmt/format.h>

#include "bvw/errors.hpp"

namespace bvw {

namespace {

void require_a(int a) {
  if (a < 2 || a > 7) throw DomainError(fmt::format("A must lie in [2, 7], got {}", a));
}

Interval eps2_of(const Interval& s) {
  const Interval two_s = Interval(2.0) * s;
  const Interval log_2s = log(two_s);
  const Interval inner = Interval(2.0) * (Interval(4.0) + s / log_2s);
  const Interval numer = s * (Interval(3.0) + log(Interval::ln2())) + log_2s +
                         Interval(5.0) * log(inner);
  return numer / (s * log(s));
}

}  // namespace

Lemma3Params lemma3_params(int a, double log_x) {
  require_a(a);
  if (!(log_x > std::exp(1.0))) {
    throw DomainError(fmt::format("log x must exceed e, got {}", log_x));
  }
  Lemma3Params p;
  p.a = a;
  p.log_x = log_x;
  const Interval big_l(log_x);
  const Interval loglog = log(big_l);
  const Interval a3(static_cast<double>(a + 3));
  p.log_d = big_l / 2.0 + loglog;
  p.log_r = a3 * loglog;
  p.s = p.log_d / (Interval(2.0) * p.log_r);
  p.b = Interval(4.0) + p.s / log(Interval(2.0) * p.s);
  p.eps1 = Interval(1.0) - Interval(4.0) * a3 * p.s * log(p.s) / big_l;
  p.eps2 = eps2_of(p.s);

  const Interval side = Interval(1.0) - exp(Interval(1.0) + Interval(1.0) / p.b) / p.b;
  p.side_b = exp(Interval(-1.0)).certainly_less(side);
  p.side_s = (p.b + 1.0).certainly_less(p.s);
  return p;
}

ThresholdCheck lemma3_threshold_check(int a, double t) {
  const Lemma3Params p = lemma3_params(a, t);
  const Interval a3(static_cast<double>(a + 3));
  // c A^2 log A = T, so the leading term is T (1-eps1)(1-eps2) / (4(A+3)).
  const Interval lead =
      Interval(t) * (Interval(1.0) - p.eps1) * (Interval(1.0) - p.eps2) / (Interval(4.0) * a3);
  const Interval lhs = lead + Interval(2.0) * log(p.log_r) -
                       log1p(Interval(8.0) / square(p.log_r));
  const Interval rhs = a3 * log(Interval(t));
  return {a, t, lhs, rhs, rhs.certainly_less(lhs)};
}

bool lemma3_threshold_holds(int a, double t) { return lemma3_threshold_check(a, t).holds; }

long lemma3_minimal_threshold(int a, long lo, long hi) {
  require_a(a);
  if (!lemma3_threshold_holds(a, static_cast<double>(hi))) return 0;
  if (lemma3_threshold_holds(a, static_cast<double>(lo))) return lo;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (lemma3_threshold_holds(a, static_cast<double>(mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ExceptionalTerms exceptional_terms(double log_x, double beta0) {
  if (!(beta0 > 0.0 && beta0 < 1.0)) {
    throw DomainError(fmt::format("beta0 must lie in (0, 1), got {}", beta0));
  }
  if (!(log_x > 1.0)) throw DomainError(fmt::format("log x must exceed 1, got {}", log_x));
  const Interval big_l(log_x);
  const Interval b0(beta0);
  const Interval one(1.0);
  ExceptionalTerms out;
  const Interval second = exp((b0 - one) * big_l) / b0;
  out.siegel_term = exp(-b0 * big_l) / (one - b0) + second;
  out.siegel_term_variant = exp(b0 * big_l) / (one - b0) + second;

  const Interval loglog = log(big_l);
  const Interval theta = Interval(4.0) * Interval::pi() /
                         (Interval(9.0) * Interval::from_decimal("0.4923") *
                          pow(big_l, Interval(0.25)) * square(loglog));
  out.liu_wang_exponent = -theta;
  out.liu_wang_term = exp(-theta * big_l) / (one - theta);
  return out;
}

}  // namespace bvw
