// report.hpp
// Outcome of an inequality sweep, plus the helpers every sweep shares:
// margin tracking with a capped violation list, fixed-layout parallel
// prefix sweeps, and JSON/CSV output.

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bvw/util/summation.hpp"

namespace bvw {

struct Violation {
  double point = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string note;
};

// Margins are rhs - lhs. A strict check (lhs < rhs) counts margin <= 0 as a
// violation, a non-strict one only margin < 0.
class MarginTracker {
 public:
  static constexpr std::size_t kMaxStoredViolations = 100;

  void observe(double point, double lhs, double rhs, bool strict, const char* note = "");
  void merge(const MarginTracker& other);

  std::uint64_t points() const { return points_; }
  std::uint64_t violation_count() const { return violation_count_; }
  const std::vector<Violation>& violations() const { return violations_; }
  double worst_margin() const { return worst_margin_; }
  double worst_point() const { return worst_point_; }
  bool empty() const { return points_ == 0; }

 private:
  std::uint64_t points_ = 0;
  std::uint64_t violation_count_ = 0;
  std::vector<Violation> violations_;
  double worst_margin_ = std::numeric_limits<double>::infinity();
  double worst_point_ = 0.0;
};

using ParamList = std::vector<std::pair<std::string, std::string>>;

struct BoundCheckReport {
  std::string check_id;
  ParamList params;
  std::string domain;
  // Observational checks run below their stated domain: margins are
  // recorded, violations are not failures.
  bool observational = false;
  std::uint64_t points = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;
  double worst_margin = std::numeric_limits<double>::infinity();
  double worst_point = 0.0;
  ParamList extra;  // check-specific findings, in insertion order
  std::string note;
  double runtime_ms = -1.0;  // negative: not measured

  void absorb(const MarginTracker& t);
  bool passed() const { return observational || violation_count == 0; }
  bool has_violations() const { return violation_count != 0; }
};

// Formats a real with 10 significant digits.
std::string fmt_real(double v);
std::string fmt_uint(std::uint64_t v);
// Rounds to 10 significant digits so that JSON output carries no more.
double round10(double v);
// Ten-digit decimals rounded toward -inf / +inf, for printing enclosures.
std::string fmt_real_down(double v);
std::string fmt_real_up(double v);

nlohmann::json to_json(const BoundCheckReport& r, bool with_runtime = false);
nlohmann::json to_json(const std::vector<BoundCheckReport>& rs, bool with_runtime = false);
std::string csv_header();
std::string to_csv_row(const BoundCheckReport& r, bool with_runtime = false);
std::string to_csv(const std::vector<BoundCheckReport>& rs, bool with_runtime = false);

// Runs visit(n, prefix) for n in [lo, hi] where prefix is the compensated
// running sum of term(1..n) (terms below lo are accumulated too). The range
// is split into fixed blocks; block totals are reduced in order, so results
// do not depend on the worker count. Each block gets its own tracker; they
// are merged in block order.
MarginTracker prefix_sweep(std::uint64_t lo, std::uint64_t hi, unsigned workers,
                           const std::function<double(std::uint64_t)>& term,
                           const std::function<void(std::uint64_t, double, MarginTracker&)>& visit);

// Same without a running sum.
MarginTracker point_sweep(std::uint64_t lo, std::uint64_t hi, unsigned workers,
                          const std::function<void(std::uint64_t, MarginTracker&)>& visit);

inline constexpr std::uint64_t kSweepBlock = std::uint64_t{1} << 18;

}  // namespace bvw
