#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "bvw/arith/functions.hpp"
#include "bvw/arith/table_cache.hpp"
#include "bvw/boundlab/large_sieve.hpp"
#include "bvw/boundlab/lemma_sweeps.hpp"
#include "bvw/boundlab/partition.hpp"
#include "bvw/boundlab/report.hpp"
#include "bvw/boundlab/squarefree.hpp"
#include "bvw/dirichlet/characters.hpp"
#include "bvw/dirichlet/sums.hpp"
#include "bvw/errors.hpp"
#include "bvw/harness/bv_sums.hpp"
#include "bvw/harness/identities.hpp"
#include "bvw/harness/trend.hpp"
#include "bvw/rigor/catalog.hpp"
#include "bvw/rigor/constants.hpp"
#include "bvw/rigor/lemma3.hpp"
#include "bvw/rigor/theorem.hpp"

namespace bvw::cli {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(fmt::format("{}: '{}' is not a number", what, text));
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw UsageError(fmt::format("{}: '{}' is not a finite number", what, text));
  }
  return v;
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  throw UsageError(fmt::format("output format must be json or csv, got '{}'", text));
}

json interval_json(const Interval& v) {
  return {{"lo", std::stod(fmt_real_down(v.lo()))},
          {"hi", std::stod(fmt_real_up(v.hi()))},
          {"width", round10(v.width())}};
}

json real(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round10(v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Everything a command needs besides its own options.
struct Context {
  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;

  FunctionTables tables(std::uint64_t need) const {
    if (need > cfg.tables_limit) {
      throw CapacityError(
          fmt::format("x={} exceeds tables_limit={}", need, cfg.tables_limit));
    }
    return load_or_build_tables(std::max<std::uint64_t>(need, 16), cfg.worker_count,
                                cfg.cache_dir);
  }

  void emit(const json& j) const { out << j.dump(2) << '\n'; }
};

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---- constants -----------------------------------------------------------

struct ConstantsArgs {
  std::vector<std::string> ids;
  std::string cutoff = "1e6";
  std::optional<std::string> l;
  std::optional<std::string> q0;
  int a = 2;
  std::optional<double> loglog_x0;
  int order = kDefaultAccelerationOrder;
};

std::string valid_constant_ids() {
  std::string s;
  for (const auto id : all_constant_ids()) {
    if (!s.empty()) s += ", ";
    s += constant_name(id);
  }
  return s;
}

int cmd_constants(const Context& ctx, const ConstantsArgs& args) {
  std::vector<ConstantId> ids;
  if (args.ids.empty() || (args.ids.size() == 1 && args.ids[0] == "all")) {
    ids = all_constant_ids();
  } else {
    for (const auto& name : args.ids) {
      const auto id = parse_constant_id(name);
      if (!id) {
        throw UsageError(
            fmt::format("unknown constant '{}'; valid ids: all, {}", name, valid_constant_ids()));
      }
      ids.push_back(*id);
    }
  }
  ConstantParams p;
  p.cutoff = parse_count(args.cutoff, "--cutoff");
  p.acceleration_order = args.order;
  p.l = args.l ? parse_count(*args.l, "--l") : 1;
  p.q0 = args.q0 ? parse_real(*args.q0, "--q0") : kDefaultQ0;
  p.a = args.a;
  // C13 defaults to x0 at the tabulated threshold for this A.
  if (args.loglog_x0) {
    p.loglog_x0 = *args.loglog_x0;
  } else if (args.a >= 2 && args.a <= 7) {
    p.loglog_x0 = std::log(Catalog::standard().value("lemma3_T", params_for_a(args.a)).mid());
  }

  std::vector<ConstantValue> values;
  for (const auto id : ids) values.push_back(constant_value(id, p));

  const double target = ctx.cfg.precision_target;
  if (ctx.cfg.output_format == Format::csv) {
    ctx.out << "id,lo,hi,width,cutoff,within_target,definition\n";
    for (const auto& v : values) {
      ctx.out << fmt::format("{},{},{},{},{},{},{}\n", constant_name(v.id),
                             fmt_real_down(v.value.lo()), fmt_real_up(v.value.hi()),
                             fmt_real(v.value.width()), v.cutoff,
                             v.value.width() <= target ? "true" : "false",
                             csv_field(v.definition));
    }
    return kOk;
  }
  json j;
  j["precision_target"] = target;
  j["params"] = {{"l", *p.l}, {"q0", *p.q0}, {"A", *p.a}, {"cutoff", p.cutoff},
                 {"acceleration_order", p.acceleration_order}};
  if (p.loglog_x0) j["params"]["loglog_x0"] = round10(*p.loglog_x0);
  j["constants"] = json::array();
  for (const auto& v : values) {
    json c = interval_json(v.value);
    c["id"] = constant_name(v.id);
    c["definition"] = v.definition;
    c["cutoff"] = v.cutoff;
    c["within_target"] = v.value.width() <= target;
    j["constants"].push_back(c);
  }
  ctx.emit(j);
  return kOk;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> checks;
  std::optional<std::string> n;
  std::string x_box = "1024";
  std::string y_box = "1024";
  unsigned k = 8;
  std::string q = "30";
  unsigned trials = 100;
  double r = 3.0;
  std::string x = "1e4";
  std::string a = "1";
  std::string m = "10";
  std::optional<std::string> q0;
  std::string cutoff = "1e6";
};

using SweepFn = BoundCheckReport (*)(const FunctionTables&, std::uint64_t, const SweepOptions&);

const std::map<std::string, SweepFn>& sweep_checks() {
  static const std::map<std::string, SweepFn> m = {
      {"prod_ratio", &check_prod_ratio},
      {"q_over_phi", &check_q_over_phi},
      {"reciprocal_phi", &check_reciprocal_phi},
      {"mu2_n_over_phi2", &check_mu2_n_over_phi2},
      {"mu2_n_over_phi2_intermediate", &check_mu2_n_over_phi2_intermediate},
      {"mu2_over_phi2", &check_mu2_over_phi2},
      {"pi_bound", &check_pi_bound},
      {"mu_over_phi", &check_mu_over_phi},
      {"squarefree_count", &check_squarefree_count_bound},
      {"divisor", &check_divisor_bound},
      {"omega", &check_omega_bound},
      {"mertens", &check_mertens_product},
  };
  return m;
}

const std::vector<std::string>& other_checks() {
  static const std::vector<std::string> v = {
      "suite",       "lemma0",      "misc",          "partition",           "large_sieve",
      "bilinear",    "squarefree_remainders",        "convolution",         "truncation",
      "conductor_partition"};
  return v;
}

std::string valid_check_ids() {
  std::string s;
  for (const auto& id : other_checks()) s += (s.empty() ? "" : ", ") + id;
  for (const auto& [id, fn] : sweep_checks()) s += ", " + id;
  return s;
}

int cmd_verify(const Context& ctx, const VerifyArgs& args) {
  std::vector<std::string> checks = args.checks.empty() ? std::vector<std::string>{"suite"}
                                                        : args.checks;
  for (const auto& c : checks) {
    if (!sweep_checks().count(c) &&
        std::find(other_checks().begin(), other_checks().end(), c) == other_checks().end()) {
      throw UsageError(fmt::format("unknown check '{}'; valid ids: {}", c, valid_check_ids()));
    }
  }

  SweepOptions so;
  so.workers = ctx.cfg.worker_count;
  so.q0 = args.q0 ? parse_real(*args.q0, "--q0") : kDefaultQ0;
  so.cutoff = parse_count(args.cutoff, "--cutoff");
  const std::uint64_t sweep_n = args.n ? parse_count(*args.n, "--N") : 1'000'000;
  const std::uint64_t x = parse_count(args.x, "--x");

  // One table covers every requested check.
  std::uint64_t need = 0;
  for (const auto& c : checks) {
    if (sweep_checks().count(c) || c == "suite" || c == "lemma0" || c == "misc") {
      need = std::max(need, sweep_n);
    } else if (c == "squarefree_remainders") {
      need = std::max<std::uint64_t>(need, 100'000);
    } else if (c == "convolution" || c == "truncation" || c == "conductor_partition") {
      need = std::max(need, x);
    }
  }
  std::optional<FunctionTables> tables;
  if (need > 0) tables.emplace(ctx.tables(need));

  std::vector<BoundCheckReport> reports;
  auto timed = [&](auto&& fn) {
    const Stopwatch sw;
    auto out = fn();
    const double ms = sw.ms();
    if constexpr (std::is_same_v<decltype(out), BoundCheckReport>) {
      out.runtime_ms = ms;
      reports.push_back(std::move(out));
    } else {
      for (auto& r : out) {
        r.runtime_ms = ms / static_cast<double>(out.size());
        reports.push_back(std::move(r));
      }
    }
  };

  for (const auto& c : checks) {
    if (const auto it = sweep_checks().find(c); it != sweep_checks().end()) {
      timed([&] { return it->second(*tables, sweep_n, so); });
    } else if (c == "suite" || c == "lemma0") {
      timed([&] { return check_lemma0_suite(*tables, sweep_n, so); });
      if (c == "suite") {
        if (sweep_n >= kMuOverPhiStart) timed([&] { return check_mu_over_phi(*tables, sweep_n, so); });
        timed([&] { return check_misc_bounds(*tables, sweep_n, so); });
      }
    } else if (c == "misc") {
      timed([&] { return check_misc_bounds(*tables, sweep_n, so); });
    } else if (c == "partition") {
      const auto bx = parse_count(args.x_box, "--X");
      const auto by = parse_count(args.y_box, "--Y");
      timed([&] { return dyadic_partition_sums(bx, by, args.k).report; });
    } else if (c == "large_sieve") {
      const auto q = parse_count(args.q, "--Q");
      const std::uint64_t len = args.n ? sweep_n : 2000;
      timed([&] { return large_sieve_test(q, len, args.trials, ctx.cfg.seed, so.workers); });
    } else if (c == "bilinear") {
      BilinearOptions bo;
      bo.x = parse_count(args.x_box, "--X");
      bo.y = parse_count(args.y_box, "--Y");
      bo.m = parse_count(args.m, "--M");
      bo.n = args.n ? sweep_n : 10;
      bo.q0 = so.q0;
      bo.cutoff = so.cutoff;
      const auto q = parse_count(args.q, "--Q");
      timed([&] { return bilinear_lemma_probe(q, args.r, ctx.cfg.seed, bo).report; });
    } else if (c == "squarefree_remainders") {
      timed([&] { return check_squarefree_remainder_grid(*tables, so); });
    } else if (c == "convolution") {
      timed([&] { return convolution_identity_check(*tables, x, args.r); });
    } else if (c == "truncation") {
      timed([&] { return truncation_estimate_check(*tables, x, args.r); });
    } else if (c == "conductor_partition") {
      const auto q = parse_count(args.q, "--Q");
      const auto a = parse_count(args.a, "--a");
      timed([&] {
        return conductor_partition_report(*tables, x, q, a, args.r, so.workers);
      });
    }
  }

  if (ctx.cfg.output_format == Format::csv) {
    ctx.out << to_csv(reports, ctx.cfg.timing);
  } else {
    ctx.emit(to_json(reports, ctx.cfg.timing));
  }

  bool failed = false;
  for (const auto& r : reports) {
    if (r.passed()) continue;
    failed = true;
    ctx.err << fmt::format("violation: {} has {} in-domain violation(s)\n", r.check_id,
                           r.violation_count);
    const std::size_t shown = std::min<std::size_t>(r.violations.size(), 5);
    for (std::size_t i = 0; i < shown; ++i) {
      const auto& v = r.violations[i];
      ctx.err << fmt::format("  at {}: lhs={} rhs={}{}\n", fmt_real(v.point), fmt_real(v.lhs),
                             fmt_real(v.rhs), v.note.empty() ? "" : " (" + v.note + ")");
    }
  }
  return failed ? kViolation : kOk;
}

// ---- bv ------------------------------------------------------------------

struct BVArgs {
  std::string x;
  std::string q;
  bool squarefree = false;
  std::optional<std::string> exclude_q0;
  std::string y_mode = "fixed";
  int a = 2;
};

int cmd_bv(const Context& ctx, const BVArgs& args) {
  const auto x = parse_count(args.x, "--x");
  const auto q = parse_count(args.q, "--Q");
  BVOptions o;
  o.squarefree_only = args.squarefree;
  if (args.exclude_q0) o.exclude_q0 = parse_count(*args.exclude_q0, "--exclude-q0");
  if (args.y_mode == "fixed") {
    o.y_mode = YMode::fixed;
  } else if (args.y_mode == "grid") {
    o.y_mode = YMode::grid;
  } else {
    throw UsageError(fmt::format("--y-mode must be fixed or grid, got '{}'", args.y_mode));
  }
  o.a = args.a;
  o.workers = ctx.cfg.worker_count;
  if (q > x) throw DomainError(fmt::format("--Q={} exceeds --x={}", q, x));
  const auto t = ctx.tables(x);
  const Stopwatch sw;
  const auto r = bv_discrepancy_sum(t, x, q, o);
  if (ctx.cfg.output_format == Format::csv) {
    ctx.out << to_csv(r);
  } else {
    json j = to_json(r);
    if (ctx.cfg.timing) j["runtime_ms"] = round10(sw.ms());
    ctx.emit(j);
  }
  return kOk;
}

void emit_rows_csv(std::ostream& out, const json& rows);

// ---- psi -----------------------------------------------------------------

struct PsiArgs {
  std::string x;
  std::string q;
  std::string a = "1";
  std::optional<double> r;
  std::string weight = "vonMangoldt";
  std::optional<std::string> z;
};

int cmd_psi(const Context& ctx, const PsiArgs& args) {
  const auto x = parse_count(args.x, "--x");
  const auto q = parse_count(args.q, "--q");
  const auto a = parse_count(args.a, "--a");
  if (q == 0) throw DomainError("--q must be at least 1");
  Weight w;
  if (args.weight == "vonMangoldt") {
    w = Weight::von_mangoldt;
  } else if (args.weight == "gLog") {
    w = Weight::g_log;
  } else {
    throw UsageError(fmt::format("--weight must be vonMangoldt or gLog, got '{}'", args.weight));
  }
  const auto t = ctx.tables(x);
  std::uint64_t z = 0;
  if (args.z) {
    z = parse_count(*args.z, "--z");
  } else if (args.r) {
    z = default_rough_threshold(*args.r);
  }
  if (gcd(a % q, q) != 1) {
    throw DomainError(fmt::format("--a={} is not coprime to --q={}", a, q));
  }
  const auto s = w == Weight::g_log ? g_weighted_sums(t, x, q, a, z) : psi_progression(t, x, q, a);
  json j;
  j["x"] = x;
  j["q"] = q;
  j["a"] = a;
  j["weight"] = args.weight;
  j["psi"] = real(s.psi);
  j["main_term"] = real(static_cast<double>(x) / static_cast<double>(t.phi(q)));
  j["discrepancy"] = real(s.discrepancy);
  if (w == Weight::g_log) {
    j["z"] = z;
    j["G"] = real(s.g);
    j["G1"] = real(s.g1);
  }
  if (args.r) {
    const CharacterGroup g(q, ctx.cfg.character_cap);
    const auto d = f_r_decomposition(t, x, g, a, *args.r, w, z);
    j["R"] = real(*args.r);
    j["F_R"] = {{"by_definition", real(d.by_definition)},
                {"by_characters", real(d.by_characters)},
                {"imaginary_residue", real(d.imaginary_residue)}};
  }
  if (ctx.cfg.output_format == Format::csv) {
    emit_rows_csv(ctx.out, json::array({j}));
  } else {
    ctx.emit(j);
  }
  return kOk;
}

// ---- chars ---------------------------------------------------------------

int cmd_chars(const Context& ctx, const std::string& q_text) {
  const auto q = parse_count(q_text, "--q");
  const CharacterGroup g(q, ctx.cfg.character_cap);
  auto exps = [](const DirichletCharacter& c) {
    std::string s;
    for (const auto e : c.exponents) s += (s.empty() ? "" : " ") + std::to_string(e);
    return s;
  };
  if (ctx.cfg.output_format == Format::csv) {
    ctx.out << "index,conductor,order,principal,primitive,real,exponents\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& c = g[i];
      ctx.out << fmt::format("{},{},{},{},{},{},{}\n", i, c.conductor, c.order, c.is_principal,
                             c.is_primitive, c.is_real, exps(c));
    }
    return kOk;
  }
  json j;
  j["q"] = q;
  j["phi"] = g.order();
  j["exponent"] = g.exponent();
  j["factors"] = json::array();
  for (const auto& f : g.factors()) {
    j["factors"].push_back({{"prime_power", f.prime_power},
                            {"order", f.order},
                            {"generator", f.generator}});
  }
  j["characters"] = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& c = g[i];
    j["characters"].push_back({{"index", i},
                               {"exponents", c.exponents},
                               {"conductor", c.conductor},
                               {"order", c.order},
                               {"principal", c.is_principal},
                               {"primitive", c.is_primitive},
                               {"real", c.is_real}});
  }
  ctx.emit(j);
  return kOk;
}

// ---- report --------------------------------------------------------------

struct ReportArgs {
  std::string name;
  std::string xs = "1e4,1e5,1e6";
  int a = 2;
  std::optional<double> q_divisor;
  std::string x = "1e4";
  std::string q = "30";
  std::string res = "1";
  double r = 3.0;
  double log_x = 6978.0;
  double beta0 = 0.9;
};

json lemma3_rows(bool& all_hold) {
  json rows = json::array();
  all_hold = true;
  for (int a = 2; a <= 7; ++a) {
    const double t = Catalog::standard().value("lemma3_T", params_for_a(a)).mid();
    const auto chk = lemma3_threshold_check(a, t);
    const auto p = lemma3_params(a, t);
    const long minimal = lemma3_minimal_threshold(a);
    all_hold = all_hold && chk.holds && p.side_b && p.side_s;
    rows.push_back({{"A", a},
                    {"T", t},
                    {"lhs", interval_json(chk.lhs)},
                    {"rhs", interval_json(chk.rhs)},
                    {"margin", real(chk.margin())},
                    {"holds", chk.holds},
                    {"side_b", p.side_b},
                    {"side_s", p.side_s},
                    {"s", interval_json(p.s)},
                    {"b", interval_json(p.b)},
                    {"minimal_T", minimal}});
  }
  return rows;
}

json coefficient_rows(bool& all_hold) {
  json rows = json::array();
  all_hold = true;
  for (int a = 2; a <= 7; ++a) {
    const auto row = coefficient_row(a);
    json r;
    r["A"] = a;
    try {
      const auto th = implied_threshold(a);
      const double l = th.value + 1e-6;
      const auto lead = leading_coefficient(a, l);
      const bool ok = lead.certainly_leq(row.c1);
      r["implied_threshold"] = interval_json(th.enclosure);
      r["coefficient_at_threshold"] = interval_json(lead);
      r["holds"] = ok;
      all_hold = all_hold && ok;
    } catch (const ConsistencyError& e) {
      r["implied_threshold"] = nullptr;
      r["holds"] = false;
      r["error"] = e.what();
      all_hold = false;
    }
    try {
      const auto th = implied_squarefree_threshold(a);
      const double l = th.value + 1e-6;
      const auto lead = leading_squarefree_coefficient(a, l);
      const bool ok = lead.certainly_leq(row.c1_prime);
      r["implied_squarefree_threshold"] = interval_json(th.enclosure);
      r["squarefree_coefficient_at_threshold"] = interval_json(lead);
      r["squarefree_holds"] = ok;
      all_hold = all_hold && ok;
    } catch (const ConsistencyError& e) {
      r["implied_squarefree_threshold"] = nullptr;
      r["squarefree_holds"] = false;
      r["squarefree_error"] = e.what();
      all_hold = false;
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<std::uint64_t> parse_count_list(const std::string& text, const char* what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_count(item, what));
  }
  return out;
}

// Flattens a list of flat-ish objects into CSV: nested objects become
// dotted columns.
void emit_rows_csv(std::ostream& out, const json& rows) {
  std::vector<std::string> cols;
  std::vector<std::map<std::string, std::string>> flat;
  for (const auto& row : rows) {
    std::map<std::string, std::string> f;
    for (const auto& [k, v] : row.items()) {
      if (v.is_object()) {
        for (const auto& [k2, v2] : v.items()) f[k + "." + k2] = v2.dump();
      } else {
        f[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
    for (const auto& [k, v] : f) {
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
    flat.push_back(std::move(f));
  }
  std::string line;
  for (const auto& c : cols) line += (line.empty() ? "" : ",") + c;
  out << line << '\n';
  for (const auto& f : flat) {
    line.clear();
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) line += ',';
      if (const auto it = f.find(cols[i]); it != f.end()) line += csv_field(it->second);
    }
    out << line << '\n';
  }
}

int cmd_report(const Context& ctx, const ReportArgs& args) {
  const Stopwatch sw;
  json j;
  json rows;
  int code = kOk;
  j["report"] = args.name;
  if (args.name == "lemma3") {
    bool ok = true;
    rows = lemma3_rows(ok);
    j["all_hold"] = ok;
    if (!ok) code = kViolation;
  } else if (args.name == "coefficients") {
    bool ok = true;
    rows = coefficient_rows(ok);
    j["all_hold"] = ok;
    if (!ok) code = kViolation;
  } else if (args.name == "trend") {
    const auto xs = parse_count_list(args.xs, "--xs");
    TrendOptions o;
    o.a = args.a;
    o.sqrt_divisor = args.q_divisor;
    o.workers = ctx.cfg.worker_count;
    std::uint64_t need = 0;
    for (const auto x : xs) need = std::max(need, x);
    std::vector<TrendRow> tr;
    if (!xs.empty()) tr = trend_report(ctx.tables(need), xs, o);
    j = to_json(tr, o);
    j["report"] = args.name;
    rows = j["rows"];
  } else if (args.name == "identities") {
    const auto x = parse_count(args.x, "--x");
    const auto q = parse_count(args.q, "--Q");
    const auto a = parse_count(args.res, "--a");
    const auto t = ctx.tables(x);
    std::vector<BoundCheckReport> reps;
    if (x <= kConvolutionMax) reps.push_back(convolution_identity_check(t, x, args.r));
    reps.push_back(truncation_estimate_check(t, x, args.r));
    reps.push_back(conductor_partition_report(t, x, q, a, args.r, ctx.cfg.worker_count));
    const auto psi_r = psi_r_sum(t, x, q, args.r, a, ctx.cfg.worker_count);
    for (const auto& r : reps) {
      if (!r.passed()) code = kViolation;
    }
    if (ctx.cfg.output_format == Format::csv) {
      ctx.out << to_csv(reps, false);
      return code;
    }
    j["checks"] = to_json(reps, false);
    j["psi_R_sum"] = {{"x", x}, {"Q", q}, {"R", real(args.r)}, {"a", a},
                      {"total", real(psi_r.total)}};
    if (ctx.cfg.timing) j["runtime_ms"] = round10(sw.ms());
    ctx.emit(j);
    return code;
  } else if (args.name == "exceptional") {
    const auto e = exceptional_terms(args.log_x, args.beta0);
    rows = json::array({{{"log_x", real(args.log_x)},
                         {"beta0", real(args.beta0)},
                         {"siegel_term", interval_json(e.siegel_term)},
                         {"siegel_term_variant", interval_json(e.siegel_term_variant)},
                         {"liu_wang_exponent", interval_json(e.liu_wang_exponent)},
                         {"liu_wang_term", interval_json(e.liu_wang_term)}}});
    j["note"] = "the x^{beta0} variant is offered alongside the literal term; neither is asserted";
  } else {
    throw UsageError(fmt::format(
        "unknown report '{}'; valid: lemma3, coefficients, trend, identities, exceptional",
        args.name));
  }
  if (ctx.cfg.output_format == Format::csv) {
    emit_rows_csv(ctx.out, rows);
    return code;
  }
  j["rows"] = rows;
  if (ctx.cfg.timing) j["runtime_ms"] = round10(sw.ms());
  ctx.emit(j);
  return code;
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.tables_limit < 10'000) {
    throw UsageError(fmt::format("tables_limit must be at least 10000, got {}", c.tables_limit));
  }
  if (!(c.precision_target >= 1e-15 && c.precision_target <= 1e-6)) {
    throw UsageError(fmt::format("precision_target must lie in [1e-15, 1e-6], got {}",
                                 fmt_real(c.precision_target)));
  }
  if (c.character_cap < 1) throw UsageError("character_cap must be positive");
}

std::uint64_t parse_count(const std::string& raw, const char* what) {
  const std::string text = trim(raw);
  if (!text.empty() && std::all_of(text.begin(), text.end(), ::isdigit)) {
    try {
      return std::stoull(text);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("{}: '{}' is out of range", what, text));
    }
  }
  const double v = parse_real(text, what);
  if (v < 0.0 || v != std::floor(v) || v >= 0x1p63) {
    throw UsageError(fmt::format("{}: '{}' is not a non-negative integer", what, text));
  }
  return static_cast<std::uint64_t>(v);
}

void apply_config_text(const std::string& text, RunConfig& c) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(fmt::format("config line {}: expected key=value", lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "tables_limit") {
      c.tables_limit = parse_count(val, "tables_limit");
    } else if (key == "character_cap") {
      c.character_cap = parse_count(val, "character_cap");
    } else if (key == "precision_target") {
      c.precision_target = parse_real(val, "precision_target");
    } else if (key == "worker_count") {
      c.worker_count = static_cast<unsigned>(parse_count(val, "worker_count"));
    } else if (key == "seed") {
      c.seed = parse_count(val, "seed");
    } else if (key == "output_format") {
      c.output_format = parse_format(val);
    } else if (key == "cache_dir") {
      c.cache_dir = val;
    } else {
      throw UsageError(fmt::format("config line {}: unknown key '{}'", lineno, key));
    }
  }
}

void apply_config_file(const std::filesystem::path& file, RunConfig& c) {
  std::ifstream in(file);
  if (!in) throw UsageError(fmt::format("cannot read config file {}", file.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(ss.str(), c);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bvw: explicit mean-value workbench"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::string workers, seed, format, limit;
  bool timing = false;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--workers", workers, "worker threads (0 = all cores)");
  app.add_option("--seed", seed, "seed for randomised checks");
  app.add_option("--format", format, "json or csv");
  app.add_option("--limit", limit, "largest x the sieve tables may cover");
  app.add_flag("--timing", timing, "add runtime_ms to reports");

  ConstantsArgs ca;
  auto* constants = app.add_subcommand("constants", "print constant enclosures");
  constants->add_option("ids", ca.ids, "constant ids or 'all'");
  constants->add_option("--cutoff", ca.cutoff, "Euler-product cutoff");
  constants->add_option("--l", ca.l, "l for B1, B2");
  constants->add_option("--q0", ca.q0, "Q0 for C3, C4");
  constants->add_option("--A", ca.a, "A for C13");
  constants->add_option("--loglog-x0", ca.loglog_x0, "log log x0 for C13");
  constants->add_option("--order", ca.order, "zeta-peeling order (0 = plain product)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run inequality sweeps and identity checks");
  verify->add_option("checks", va.checks, "check ids or 'suite'");
  verify->add_option("--N", va.n, "sweep limit (sequence length for large_sieve)");
  verify->add_option("--X", va.x_box, "X for partition and bilinear");
  verify->add_option("--Y", va.y_box, "Y for partition and bilinear");
  verify->add_option("--K", va.k, "partition depth");
  verify->add_option("--Q", va.q, "modulus bound");
  verify->add_option("--trials", va.trials, "large-sieve trials");
  verify->add_option("--R", va.r, "conductor cutoff R");
  verify->add_option("--x", va.x, "x for identity checks");
  verify->add_option("--a", va.a, "residue for conductor_partition");
  verify->add_option("--M", va.m, "M for bilinear");
  verify->add_option("--q0", va.q0, "Q0 used by the C3/C4 checks");
  verify->add_option("--cutoff", va.cutoff, "Euler-product cutoff for C2, C5");

  BVArgs ba;
  auto* bv = app.add_subcommand("bv", "mean-value discrepancy sum");
  bv->add_option("--x", ba.x, "x")->required();
  bv->add_option("--Q", ba.q, "modulus bound")->required();
  bv->add_flag("--squarefree", ba.squarefree, "squarefree moduli only");
  bv->add_option("--exclude-q0", ba.exclude_q0, "drop moduli divisible by this q0");
  bv->add_option("--y-mode", ba.y_mode, "fixed (y = x) or grid (32 points in [sqrt x, x])");
  bv->add_option("--A", ba.a, "A in the normalisation");

  PsiArgs pa;
  auto* psi = app.add_subcommand("psi", "psi(x; q, a) and its conductor split");
  psi->add_option("--x", pa.x, "x")->required();
  psi->add_option("--q", pa.q, "modulus")->required();
  psi->add_option("--a", pa.a, "residue");
  psi->add_option("--R", pa.r, "conductor cutoff");
  psi->add_option("--weight", pa.weight, "vonMangoldt or gLog");
  psi->add_option("--z", pa.z, "roughness threshold for gLog (default R^2)");

  std::string chars_q;
  auto* chars = app.add_subcommand("chars", "list the characters mod q");
  chars->add_option("--q", chars_q, "modulus")->required();

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "emit a named report");
  report->add_option("name", ra.name, "lemma3, coefficients, trend, identities, exceptional")
      ->required();
  report->add_option("--xs", ra.xs, "comma-separated x list for trend");
  report->add_option("--A", ra.a, "A for trend");
  report->add_option("--q-divisor", ra.q_divisor, "trend: Q = sqrt(x)/divisor");
  report->add_option("--x", ra.x, "x for identities");
  report->add_option("--Q", ra.q, "Q for identities");
  report->add_option("--a", ra.res, "residue for identities");
  report->add_option("--R", ra.r, "R for identities");
  report->add_option("--log-x", ra.log_x, "log x for exceptional");
  report->add_option("--beta0", ra.beta0, "beta0 for exceptional");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    if (!workers.empty()) cfg.worker_count = static_cast<unsigned>(parse_count(workers, "--workers"));
    if (!seed.empty()) cfg.seed = parse_count(seed, "--seed");
    if (!format.empty()) cfg.output_format = parse_format(format);
    if (!limit.empty()) cfg.tables_limit = parse_count(limit, "--limit");
    cfg.timing = timing;
    validate(cfg);
    const Context ctx{cfg, out, err};

    if (*constants) return cmd_constants(ctx, ca);
    if (*verify) return cmd_verify(ctx, va);
    if (*bv) return cmd_bv(ctx, ba);
    if (*psi) return cmd_psi(ctx, pa);
    if (*chars) return cmd_chars(ctx, chars_q);
    if (*report) return cmd_report(ctx, ra);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kViolation;
  }
  return kUsage;
}

}  // namespace bvw::cli
