#include "bvw/rigor/theorem.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "bvw/errors.hpp"
#include "bvw/rigor/catalog.hpp"
#include "bvw/rigor/constants.hpp"

namespace bvw {

namespace {

void require_a(int a) {
  if (a < 2 || a > 7) throw DomainError(fmt::format("A must lie in [2, 7], got {}", a));
}

void require_positive(double loglog_x) {
  if (!(loglog_x > 0.0)) throw DomainError("log log x must be positive");
}

const Interval& c2_default() {
  static const Interval c2 = constant_value(ConstantId::C2).value;
  return c2;
}

Interval exceptional_part(int a, double c0, const Interval& factor) {
  if (!(c0 >= 0.0)) throw DomainError("C0 must be non-negative");
  const Interval e100 = exp(Interval(-100.0));
  return Interval(static_cast<double>(a + 3)) * (Interval(c0) + e100) * factor;
}

Interval ratio_threshold(const CoefficientRow& row, const Interval& base, const Interval& c1) {
  const Interval tiny = tiny_constant();
  const Interval gap = c1 - base - tiny;
  if (!gap.strictly_positive()) {
    throw ConsistencyError(fmt::format("coefficient table row A={} leaves no room below C1", row.a));
  }
  return (row.c6 + row.c7 + tiny) / gap;
}

}  // namespace

Interval tiny_constant() {
  return {0.0, std::numeric_limits<double>::denorm_min()};
}

CoefficientRow coefficient_row(int a) {
  require_a(a);
  const Catalog& cat = Catalog::standard();
  const std::string key = params_for_a(a);
  return {a,
          cat.value("alpha", key),
          cat.value("C6", key),
          cat.value("C7", key),
          cat.value("C9", key),
          cat.value("C1", key),
          cat.value("C12", key),
          cat.value("C1prime", key)};
}

Interval leading_coefficient(int a, double loglog_x) {
  require_positive(loglog_x);
  const CoefficientRow row = coefficient_row(a);
  const Interval tiny = tiny_constant();
  return (row.c6 + row.c7 + tiny) / Interval(loglog_x) + row.c9 + tiny;
}

Interval leading_squarefree_coefficient(int a, double loglog_x) {
  require_positive(loglog_x);
  const CoefficientRow row = coefficient_row(a);
  const Interval tiny = tiny_constant();
  return (row.c6 + row.c7 + tiny) / Interval(loglog_x) + row.c12 + tiny;
}

Interval theorem_coefficient(int a, double loglog_x, double c0, const Interval& c2) {
  return leading_coefficient(a, loglog_x) + exceptional_part(a, c0, square(c2));
}

Interval theorem_coefficient(int a, double loglog_x, double c0) {
  return theorem_coefficient(a, loglog_x, c0, c2_default());
}

Interval squarefree_coefficient(int a, double loglog_x, double c0,
                                std::optional<double> loglog_x0) {
  const Interval c13 = c13_constant(a, loglog_x0.value_or(loglog_x));
  return leading_squarefree_coefficient(a, loglog_x) + exceptional_part(a, c0, c13);
}

ImpliedThreshold implied_threshold(int a) {
  const CoefficientRow row = coefficient_row(a);
  const Interval t = ratio_threshold(row, row.c9, row.c1);
  return {t, t.hi()};
}

ImpliedThreshold implied_squarefree_threshold(int a) {
  const CoefficientRow row = coefficient_row(a);
  const Interval t = ratio_threshold(row, row.c12, row.c1_prime);
  return {t, t.hi()};
}

}  // namespace bvw
