#include "bvw/harness/trend.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "bvw/boundlab/report.hpp"
#include "bvw/errors.hpp"
#include "bvw/harness/bv_sums.hpp"

namespace bvw {

std::uint64_t trend_modulus(std::uint64_t x, int a, std::optional<double> sqrt_divisor) {
  if (x < 3) throw DomainError("trend_report needs x >= 3");
  const double root = std::sqrt(static_cast<double>(x));
  double div;
  if (sqrt_divisor) {
    if (!(*sqrt_divisor > 0.0)) throw DomainError("Q divisor must be positive");
    div = *sqrt_divisor;
  } else {
    div = std::pow(std::log(static_cast<double>(x)), a + 3);
  }
  const double q = std::floor(root / div);
  if (!(q >= 1.0)) return 1;
  return std::min<std::uint64_t>(static_cast<std::uint64_t>(q), x);
}

std::vector<TrendRow> trend_report(const FunctionTables& t, const std::vector<std::uint64_t>& xs,
                                   const TrendOptions& o) {
  std::vector<TrendRow> rows;
  rows.reserve(xs.size());
  for (const std::uint64_t x : xs) {
    TrendRow row;
    row.x = x;
    row.q = trend_modulus(x, o.a, o.sqrt_divisor);
    const double lx = std::log(static_cast<double>(x));
    row.degenerate = std::pow(lx, o.a + 3) > std::sqrt(static_cast<double>(x));
    BVOptions bo;
    bo.a = o.a;
    bo.workers = o.workers;
    const auto r = bv_discrepancy_sum(t, x, row.q, bo);
    row.total = r.total;
    row.normalized = r.normalized;
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json to_json(const std::vector<TrendRow>& rows, const TrendOptions& o) {
  nlohmann::json j;
  j["A"] = o.a;
  j["q_rule"] = o.sqrt_divisor ? fmt::format("sqrt(x)/{}", fmt_real(*o.sqrt_divisor))
                               : std::string("sqrt(x)/log^(A+3)(x)");
  j["note"] = "normalized = total log^A x / (x (log log x)^2); trend only, no pass/fail";
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"x", r.x},
                         {"Q", r.q},
                         {"total", round10(r.total)},
                         {"normalized", round10(r.normalized)},
                         {"degenerate", r.degenerate}});
  }
  return j;
}

std::string to_csv(const std::vector<TrendRow>& rows) {
  std::string out = "x,Q,total,normalized,degenerate\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{}\n", r.x, r.q, fmt_real(r.total), fmt_real(r.normalized),
                       r.degenerate ? "true" : "false");
  }
  return out;
}

}  // namespace bvw
