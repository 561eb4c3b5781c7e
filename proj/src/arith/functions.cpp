#include "bvw/arith/functions.hpp"

#include <cmath>

#include "bvw/errors.hpp"
#include "bvw/util/summation.hpp"

namespace bvw {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational h2(const FunctionTables& tables, std::uint64_t n) {
  if (n == 0) throw DomainError("h2 requires n >= 1");
  tables.require_covers(n, "h2");
  Rational result = 1;
  for (const auto& [p, e] : tables.factor(n)) {
    const boost::multiprecision::cpp_int p2 = boost::multiprecision::cpp_int(p) * p;
    result *= Rational(p2, p2 - 1);
  }
  return result;
}

int rough_indicator(const FunctionTables& tables, std::uint64_t n, std::uint64_t z) {
  if (n == 0) throw DomainError("rough_indicator requires n >= 1");
  if (n == 1) return 1;
  if (n <= tables.limit()) return tables.spf(n) > z ? 1 : 0;
  for (std::uint64_t p = 2; p <= z && p * p <= n; ++p) {
    if (n % p == 0) return 0;
  }
  // No factor <= min(z, sqrt n): n is z-rough unless n itself is <= z.
  return n > z ? 1 : 0;
}

double rough_von_mangoldt(const FunctionTables& tables, std::uint64_t n, std::uint64_t z) {
  if (n == 0) throw DomainError("rough_von_mangoldt requires n >= 1");
  tables.require_covers(n, "rough_von_mangoldt");
  return tables.is_rough(n, z) ? tables.von_mangoldt(n) : 0.0;
}

std::uint64_t squarefree_count(const FunctionTables& tables, std::uint64_t x) {
  if (x == 0) throw DomainError("squarefree_count requires x >= 1");
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (root * root > x) --root;
  while ((root + 1) * (root + 1) <= x) ++root;
  tables.require_covers(root, "squarefree_count");
  std::int64_t total = 0;
  for (std::uint64_t m = 1; m <= root; ++m) {
    const int mu = tables.mu(m);
    if (mu != 0) total += mu * static_cast<std::int64_t>(x / (m * m));
  }
  return static_cast<std::uint64_t>(total);
}

double squarefree_reciprocal_sum(const FunctionTables& tables, std::uint64_t m, double x1,
                                 double x) {
  if (m == 0) throw DomainError("squarefree_reciprocal_sum requires m >= 1");
  if (!(x1 >= 0.0) || x1 > x) throw DomainError("squarefree_reciprocal_sum requires 0 <= x1 <= x");
  const auto first = static_cast<std::uint64_t>(std::floor(x1)) + 1;
  const auto last = static_cast<std::uint64_t>(std::floor(x));
  tables.require_covers(last, "squarefree_reciprocal_sum");
  CompensatedSum sum;
  for (std::uint64_t n = first; n <= last; ++n) {
    if (tables.mu(n) != 0 && gcd(n, m) == 1) sum.add(1.0 / static_cast<double>(n));
  }
  return sum.value();
}

}  // namespace bvw
