#include "bvw/harness/bv_sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <fmt/format.h>

#include "bvw/arith/functions.hpp"
#include "bvw/boundlab/report.hpp"
#include "bvw/errors.hpp"
#include "bvw/util/parallel.hpp"
#include "bvw/util/summation.hpp"

namespace bvw {

namespace {

struct PrimePowerTerm {
  std::uint64_t n;
  double weight;
};

// All p^k <= x with log p, in increasing n.
std::vector<PrimePowerTerm> sorted_prime_powers(const FunctionTables& t, std::uint64_t x) {
  std::vector<PrimePowerTerm> out;
  for (const std::uint32_t p : t.primes()) {
    if (p > x) break;
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t pk = p; pk <= x; pk *= p) {
      out.push_back({pk, lp});
      if (pk > x / p) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  return out;
}

// |psi - y/phi| rounded once. The class sums are Neumaier pairs over terms
// log p >= log 2, so every rounding error is a multiple of 2^-53 and the pair
// is the exact sum; binary128 then carries the subtraction without loss.
double rounded_deviation(const CompensatedSum& psi, std::uint64_t y, std::uint64_t phi) {
  using Quad = boost::multiprecision::cpp_bin_float_quad;
  const Quad d = Quad(psi.head()) + Quad(psi.tail()) - Quad(y) / Quad(phi);
  return static_cast<double>(abs(d));
}

DiscrepancyRecord grid_discrepancy(const FunctionTables& t, const std::vector<PrimePowerTerm>& terms,
                                   const std::vector<std::uint64_t>& ys, std::uint64_t q) {
  DiscrepancyRecord rec;
  rec.q = q;
  const std::uint64_t phi = t.phi(q);
  std::vector<CompensatedSum> acc(q);
  std::size_t i = 0;
  rec.discrepancy = -1.0;
  for (const std::uint64_t y : ys) {
    for (; i < terms.size() && terms[i].n <= y; ++i) acc[terms[i].n % q].add(terms[i].weight);
    for (std::uint64_t a = 0; a < q; ++a) {
      if (gcd(a, q) != 1) continue;
      const double dev = rounded_deviation(acc[a], y, phi);
      if (dev > rec.discrepancy) {
        rec.discrepancy = dev;
        rec.a_star = a;
        rec.y_star = y;
      }
    }
  }
  return rec;
}

}  // namespace

std::vector<std::uint64_t> y_grid(std::uint64_t x) {
  std::vector<std::uint64_t> ys;
  const double lo = 0.5 * std::log(static_cast<double>(x));
  const double hi = std::log(static_cast<double>(x));
  for (unsigned i = 0; i < kYGridPoints; ++i) {
    const double v = lo + (hi - lo) * i / (kYGridPoints - 1);
    auto y = static_cast<std::uint64_t>(std::floor(std::exp(v)));
    y = std::clamp<std::uint64_t>(y, 1, x);
    if (i + 1 == kYGridPoints) y = x;
    if (ys.empty() || y > ys.back()) ys.push_back(y);
  }
  return ys;
}

DiscrepancyRecord max_discrepancy(const FunctionTables& t, std::uint64_t x, std::uint64_t q) {
  t.require_covers(x, "max_discrepancy");
  std::vector<CompensatedSum> acc(q);
  for (const std::uint32_t p : t.primes()) {
    if (p > x) break;
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t pk = p; pk <= x; pk *= p) {
      acc[pk % q].add(lp);
      if (pk > x / p) break;
    }
  }
  const std::uint64_t phi = t.phi(q);
  DiscrepancyRecord rec;
  rec.q = q;
  rec.y_star = x;
  rec.discrepancy = -1.0;
  for (std::uint64_t a = 0; a < q; ++a) {
    if (gcd(a, q) != 1) continue;
    const double dev = rounded_deviation(acc[a], x, phi);
    if (dev > rec.discrepancy) {
      rec.discrepancy = dev;
      rec.a_star = a;
    }
  }
  // q = 1: the single class is a = 0 = 1 mod 1; report it as a = 1.
  if (q == 1) rec.a_star = 1;
  return rec;
}

double normalize_total(double total, std::uint64_t x, int a) {
  const double lx = std::log(static_cast<double>(x));
  const double llx = std::log(lx);
  if (!(llx > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return total * std::pow(lx, a) / (static_cast<double>(x) * llx * llx);
}

BVSumResult bv_discrepancy_sum(const FunctionTables& t, std::uint64_t x, std::uint64_t q,
                               const BVOptions& o) {
  if (q < 1) throw DomainError("Q must be at least 1");
  if (q > x) throw DomainError(fmt::format("Q={} exceeds x={}", q, x));
  if (o.exclude_q0 && *o.exclude_q0 < 2) throw DomainError("excluded q0 must be at least 2");
  t.require_covers(x, "bv_discrepancy_sum");
  BVSumResult res;
  res.x = x;
  res.q_max = q;
  res.mode = o.y_mode;
  res.squarefree_only = o.squarefree_only;
  res.exclude_q0 = o.exclude_q0;
  res.a = o.a;

  std::vector<PrimePowerTerm> terms;
  std::vector<std::uint64_t> ys;
  if (o.y_mode == YMode::grid) {
    terms = sorted_prime_powers(t, x);
    ys = y_grid(x);
  }
  res.records = parallel_map(q, o.workers, [&](std::size_t i) {
    const std::uint64_t m = i + 1;
    DiscrepancyRecord rec = o.y_mode == YMode::fixed ? max_discrepancy(t, x, m)
                                                     : grid_discrepancy(t, terms, ys, m);
    if (m == 1) rec.a_star = 1;
    rec.squarefree = t.mu(m) != 0;
    rec.excluded = o.exclude_q0 && m % *o.exclude_q0 == 0;
    rec.included = !rec.excluded && (!o.squarefree_only || rec.squarefree);
    return rec;
  });
  CompensatedSum total;
  for (const auto& rec : res.records) {
    if (rec.included) total.add(rec.discrepancy);
  }
  res.total = total.value();
  res.normalized = normalize_total(res.total, x, o.a);
  return res;
}

std::string y_mode_name(YMode m) { return m == YMode::fixed ? "y-fixed" : "y-sup-grid"; }

nlohmann::json to_json(const BVSumResult& r) {
  auto real = [](double v) -> nlohmann::json {
    if (!std::isfinite(v)) return nullptr;
    return round10(v);
  };
  nlohmann::json j;
  j["x"] = r.x;
  j["Q"] = r.q_max;
  j["mode"] = y_mode_name(r.mode);
  j["A"] = r.a;
  j["squarefree_only"] = r.squarefree_only;
  j["exclude_q0"] = r.exclude_q0 ? nlohmann::json(*r.exclude_q0) : nlohmann::json(nullptr);
  j["total"] = real(r.total);
  j["normalized"] = real(r.normalized);
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& rec : r.records) {
    nlohmann::json e;
    e["q"] = rec.q;
    e["a_star"] = rec.a_star;
    e["y_star"] = rec.y_star;
    e["discrepancy"] = real(rec.discrepancy);
    e["flags"] = {{"squarefree", rec.squarefree},
                  {"excluded", rec.excluded},
                  {"included", rec.included}};
    recs.push_back(std::move(e));
  }
  j["records"] = std::move(recs);
  return j;
}

std::string to_csv(const BVSumResult& r) {
  std::string out = "x,Q,mode,q,a_star,y_star,discrepancy,squarefree,excluded,included\n";
  for (const auto& rec : r.records) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.x, r.q_max, y_mode_name(r.mode), rec.q,
                       rec.a_star, rec.y_star, fmt_real(rec.discrepancy), rec.squarefree ? 1 : 0,
                       rec.excluded ? 1 : 0, rec.included ? 1 : 0);
  }
  out += fmt::format("total,,,,,,{},,,\n", fmt_real(r.total));
  return out;
}

}  // namespace bvw
