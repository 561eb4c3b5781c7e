// trend.hpp
// Normalised mean-value totals over a list of x. Qualitative only: desk-scale
// x is nowhere near the range where the explicit bound applies.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bvw/arith/tables.hpp"

namespace bvw {

struct TrendRow {
  std::uint64_t x = 0;
  std::uint64_t q = 0;
  double total = 0.0;
  double normalized = 0.0;
  bool degenerate = false;  // log^{A+3} x > sqrt x, so Q collapses to 1
};

struct TrendOptions {
  int a = 2;
  // Q = sqrt(x) / divisor instead of sqrt(x) / log^{A+3} x.
  std::optional<double> sqrt_divisor;
  unsigned workers = 1;
};

// max(1, floor(sqrt x / log^{A+3} x)), capped at x.
std::uint64_t trend_modulus(std::uint64_t x, int a, std::optional<double> sqrt_divisor = {});

std::vector<TrendRow> trend_report(const FunctionTables& t, const std::vector<std::uint64_t>& xs,
                                   const TrendOptions& o = {});

nlohmann::json to_json(const std::vector<TrendRow>& rows, const TrendOptions& o);
std::string to_csv(const std::vector<TrendRow>& rows);

}  // namespace bvw
