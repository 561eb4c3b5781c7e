// functions.hpp
// Table-driven arithmetic functions that go beyond single-n accessors:
// exact rationals (h2), squarefree counts and reciprocal
// sums over ranges.

#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "bvw/arith/tables.hpp"

namespace bvw {

using Rational = boost::multiprecision::cpp_rational;

// prod_{p | n} (1 - p^-2)^-1, exact.
Rational h2(const FunctionTables& tables, std::uint64_t n);

// g(n) at threshold z. Falls back to trial division when n is beyond the
// table limit.
int rough_indicator(const FunctionTables& tables, std::uint64_t n, std::uint64_t z);

// Lambda supported on z-rough prime powers: g(n) * Lambda(n).
double rough_von_mangoldt(const FunctionTables& tables, std::uint64_t n, std::uint64_t z);

// Number of squarefree n <= x, via sum_{m <= sqrt x} mu(m) floor(x / m^2).
// Needs the tables to cover sqrt(x) only.
std::uint64_t squarefree_count(const FunctionTables& tables, std::uint64_t x);

// sum_{x1 < n <= x, gcd(n, m) = 1} mu^2(n) / n, compensated.
double squarefree_reciprocal_sum(const FunctionTables& tables, std::uint64_t m, double x1,
                                 double x);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

}  // namespace bvw
