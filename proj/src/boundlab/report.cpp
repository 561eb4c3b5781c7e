#include "bvw/boundlab/report.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "bvw/util/parallel.hpp"

namespace bvw {

void MarginTracker::observe(double point, double lhs, double rhs, bool strict, const char* note) {
  ++points_;
  const double margin = rhs - lhs;
  if (margin < worst_margin_ || std::isnan(margin)) {
    worst_margin_ = margin;
    worst_point_ = point;
  }
  const bool bad = std::isnan(margin) || margin < 0.0 || (strict && margin == 0.0);
  if (!bad) return;
  ++violation_count_;
  if (violations_.size() < kMaxStoredViolations) violations_.push_back({point, lhs, rhs, note});
}

void MarginTracker::merge(const MarginTracker& other) {
  points_ += other.points_;
  violation_count_ += other.violation_count_;
  for (const auto& v : other.violations_) {
    if (violations_.size() >= kMaxStoredViolations) break;
    violations_.push_back(v);
  }
  if (other.worst_margin_ < worst_margin_) {
    worst_margin_ = other.worst_margin_;
    worst_point_ = other.worst_point_;
  }
}

void BoundCheckReport::absorb(const MarginTracker& t) {
  points += t.points();
  violation_count += t.violation_count();
  for (const auto& v : t.violations()) {
    if (violations.size() >= MarginTracker::kMaxStoredViolations) break;
    violations.push_back(v);
  }
  if (t.worst_margin() < worst_margin) {
    worst_margin = t.worst_margin();
    worst_point = t.worst_point();
  }
}

std::string fmt_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.10g}", v);
}

std::string fmt_uint(std::uint64_t v) { return fmt::format("{}", v); }

double round10(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(fmt::format("{:.10g}", v));
}

namespace {

// Steps the tenth significant digit when the nearest decimal landed on the
// wrong side of v.
std::string fmt_directed(double v, bool up) {
  if (!std::isfinite(v)) return fmt_real(v);
  const std::string near = fmt::format("{:.9e}", v);
  const double back = std::stod(near);
  if (back == v || (back > v) == up) return fmt_real(back);
  const auto epos = near.find('e');
  std::string digits;
  for (std::size_t i = 0; i < epos; ++i) {
    if (near[i] != '.' && near[i] != '-') digits += near[i];
  }
  const int exp10 = std::stoi(near.substr(epos + 1)) - 9;
  long long m = std::stoll(digits);
  if (v < 0) m = -m;
  m += up ? 1 : -1;
  return fmt_real(std::stod(fmt::format("{}e{}", m, exp10)));
}

}  // namespace

std::string fmt_real_down(double v) { return fmt_directed(v, false); }
std::string fmt_real_up(double v) { return fmt_directed(v, true); }

namespace {

nlohmann::json real_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round10(v);
}

nlohmann::json params_json(const ParamList& ps) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [k, v] : ps) out[k] = v;
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string params_text(const ParamList& ps) {
  std::string out;
  for (const auto& [k, v] : ps) {
    if (!out.empty()) out += ';';
    out += k + '=' + v;
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const BoundCheckReport& r, bool with_runtime) {
  nlohmann::json j;
  j["check_id"] = r.check_id;
  j["params"] = params_json(r.params);
  j["domain"] = r.domain;
  j["observational"] = r.observational;
  j["points"] = r.points;
  j["violation_count"] = r.violation_count;
  j["worst_margin"] = real_json(r.worst_margin);
  j["worst_point"] = real_json(r.worst_point);
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : r.violations) {
    nlohmann::json e;
    e["point"] = real_json(v.point);
    e["lhs"] = real_json(v.lhs);
    e["rhs"] = real_json(v.rhs);
    if (!v.note.empty()) e["note"] = v.note;
    vs.push_back(std::move(e));
  }
  j["violations"] = std::move(vs);
  if (!r.extra.empty()) j["extra"] = params_json(r.extra);
  if (!r.note.empty()) j["note"] = r.note;
  if (with_runtime && r.runtime_ms >= 0.0) j["runtime_ms"] = round10(r.runtime_ms);
  return j;
}

nlohmann::json to_json(const std::vector<BoundCheckReport>& rs, bool with_runtime) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rs) out.push_back(to_json(r, with_runtime));
  return out;
}

std::string csv_header() {
  return "check_id,params,domain,observational,points,violation_count,worst_margin,worst_point,"
         "passed";
}

std::string to_csv_row(const BoundCheckReport& r, bool with_runtime) {
  std::string row = fmt::format("{},{},{},{},{},{},{},{},{}", csv_escape(r.check_id),
                                csv_escape(params_text(r.params)), csv_escape(r.domain),
                                r.observational ? 1 : 0, r.points, r.violation_count,
                                fmt_real(r.worst_margin), fmt_real(r.worst_point),
                                r.passed() ? 1 : 0);
  if (with_runtime) row += "," + fmt_real(r.runtime_ms);
  return row;
}

std::string to_csv(const std::vector<BoundCheckReport>& rs, bool with_runtime) {
  std::string out = csv_header();
  if (with_runtime) out += ",runtime_ms";
  out += '\n';
  for (const auto& r : rs) out += to_csv_row(r, with_runtime) + '\n';
  return out;
}

MarginTracker prefix_sweep(std::uint64_t lo, std::uint64_t hi, unsigned workers,
                           const std::function<double(std::uint64_t)>& term,
                           const std::function<void(std::uint64_t, double, MarginTracker&)>& visit) {
  MarginTracker total;
  if (hi < 1 || lo > hi) return total;
  const auto blocks = split_range(1, hi + 1, kSweepBlock);
  // Pass 1: block totals.
  const auto totals = parallel_map(blocks.size(), workers, [&](std::size_t b) {
    CompensatedSum s;
    for (std::uint64_t n = blocks[b].begin; n < blocks[b].end; ++n) s.add(term(n));
    return s;
  });
  std::vector<CompensatedSum> starts(blocks.size());
  CompensatedSum running;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    starts[b] = running;
    running.merge(totals[b]);
  }
  // Pass 2: rescan each block from its start state.
  const auto trackers = parallel_map(blocks.size(), workers, [&](std::size_t b) {
    MarginTracker t;
    CompensatedSum s = starts[b];
    for (std::uint64_t n = blocks[b].begin; n < blocks[b].end; ++n) {
      s.add(term(n));
      if (n >= lo) visit(n, s.value(), t);
    }
    return t;
  });
  for (const auto& t : trackers) total.merge(t);
  return total;
}

MarginTracker point_sweep(std::uint64_t lo, std::uint64_t hi, unsigned workers,
                          const std::function<void(std::uint64_t, MarginTracker&)>& visit) {
  MarginTracker total;
  if (lo > hi) return total;
  const auto blocks = split_range(lo, hi + 1, kSweepBlock);
  const auto trackers = parallel_map(blocks.size(), workers, [&](std::size_t b) {
    MarginTracker t;
    for (std::uint64_t n = blocks[b].begin; n < blocks[b].end; ++n) visit(n, t);
    return t;
  });
  for (const auto& t : trackers) total.merge(t);
  return total;
}

}  // namespace bvw
