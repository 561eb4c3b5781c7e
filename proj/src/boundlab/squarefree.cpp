#include "bvw/boundlab/squarefree.hpp"

#include <cmath>

#include <fmt/format.h>

#include "bvw/arith/functions.hpp"
#include "bvw/errors.hpp"
#include "bvw/rigor/constants.hpp"
#include "bvw/util/parallel.hpp"

namespace bvw {

namespace {

struct RemainderOutcome {
  MarginTracker tracker;
  double theta_phi = 0.0;
  double theta_qm = 0.0;
};

RemainderOutcome evaluate(const FunctionTables& t, std::uint64_t l, double x1, double x,
                          const SweepOptions& o) {
  if (l == 0) throw DomainError("l must be positive");
  if (!(x1 >= 1.0 && x1 <= x)) throw DomainError(fmt::format("need 1 <= x1 <= x, got x1={} x={}", x1, x));
  const auto top = static_cast<std::uint64_t>(std::floor(x));
  const auto bottom = static_cast<std::uint64_t>(std::floor(x1));
  t.require_covers(top, "squarefree_remainders");

  CompensatedSum lhs_acc;
  for (std::uint64_t q = bottom + 1; q <= top; ++q) {
    if (t.mu(q) == 0 || gcd(q, l) != 1) continue;
    lhs_acc.add(1.0 / static_cast<double>(t.phi(q)));
  }
  const double lhs = lhs_acc.value();

  Interval phi_ratio(1.0);  // phi(l)/l
  const std::vector<std::uint64_t> ps = distinct_prime_divisors(l);
  for (const std::uint64_t p : ps) {
    phi_ratio *= Interval(static_cast<double>(p - 1)) / static_cast<double>(p);
  }
  const Interval xi(x);
  const Interval log_ratio = log(xi / Interval(x1));
  const Interval root = sqrt(xi);
  const Interval main = phi_ratio * log_ratio;
  const Interval b1 = b1_constant(l);
  const Interval b2 = b2_constant(l, sweep_constants(o.cutoff).b5);
  const Interval envelope =
      b1 * log_ratio / root + b2 * (root / Interval(x1) + Interval(1.0) / root);
  const Interval dev = Interval(lhs) - main;
  const double dev_hi = std::max(std::fabs(dev.lo()), std::fabs(dev.hi()));

  RemainderOutcome out;
  out.tracker.observe(x, dev_hi, envelope.lo(), false, "phi form");
  out.theta_phi = dev.mid() / envelope.mid();

  // Q_m form with m = l.
  const double qm = squarefree_reciprocal_sum(t, l, x1, x);
  const auto k_max = static_cast<std::uint64_t>(std::floor(std::sqrt(x)));
  CompensatedSum k_acc;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const int m = t.mu(k);
    if (m == 0 || gcd(k, l) != 1) continue;
    const double kk = static_cast<double>(k);
    k_acc.add(m / (kk * kk));
  }
  const Interval k_sum = Interval(k_acc.value()).padded(4);
  const Interval qm_main = log_ratio * phi_ratio * k_sum;
  const double d_rad = std::ldexp(1.0, static_cast<int>(ps.size()));
  const Interval qm_env = Interval(d_rad) * root * (Interval(1.0) / Interval(x1) + Interval(1.0) / xi);
  const Interval qm_dev = Interval(qm) - qm_main;
  out.tracker.observe(x, std::max(std::fabs(qm_dev.lo()), std::fabs(qm_dev.hi())), qm_env.lo(),
                      false, "reciprocal form");
  out.theta_qm = qm_dev.mid() / qm_env.mid();
  return out;
}

}  // namespace

std::vector<RemainderTriple> standard_remainder_grid() {
  std::vector<RemainderTriple> grid;
  for (const std::uint64_t l : {1, 2, 3, 5, 6, 30}) {
    for (const double x1 : {1.0, 2.0, 5.0, 7.0, 9.0}) {
      for (int k = 0; k <= 6; ++k) {
        grid.push_back({l, x1, std::pow(10.0, 1.0 + 4.0 * k / 6.0)});
      }
    }
  }
  return grid;
}

BoundCheckReport check_squarefree_remainders(const FunctionTables& t, std::uint64_t l, double x1,
                                             double x, const SweepOptions& o) {
  BoundCheckReport r;
  r.check_id = "squarefree_remainders";
  r.params = {{"l", fmt_uint(l)}, {"x1", fmt_real(x1)}, {"x", fmt_real(x)}};
  r.domain = "x1 < q <= x, gcd(q, l) = 1";
  const RemainderOutcome out = evaluate(t, l, x1, x, o);
  r.absorb(out.tracker);
  r.extra.emplace_back("theta_phi_form", fmt_real(out.theta_phi));
  r.extra.emplace_back("theta_reciprocal_form", fmt_real(out.theta_qm));
  return r;
}

BoundCheckReport check_squarefree_remainder_grid(const FunctionTables& t, const SweepOptions& o) {
  BoundCheckReport r;
  r.check_id = "squarefree_remainder_grid";
  const auto grid = standard_remainder_grid();
  r.params = {{"triples", fmt_uint(grid.size())}};
  r.domain = "l in {1,2,3,5,6,30}, x1 in {1,2,5,7,9}, x = 10^(1+4k/6), k = 0..6";
  const auto outcomes = parallel_map(grid.size(), o.workers, [&](std::size_t i) {
    return evaluate(t, grid[i].l, grid[i].x1, grid[i].x, o);
  });
  double max_theta_phi = 0.0;
  double max_theta_qm = 0.0;
  for (const auto& out : outcomes) {
    r.absorb(out.tracker);
    max_theta_phi = std::max(max_theta_phi, std::fabs(out.theta_phi));
    max_theta_qm = std::max(max_theta_qm, std::fabs(out.theta_qm));
  }
  r.extra.emplace_back("max_abs_theta_phi_form", fmt_real(max_theta_phi));
  r.extra.emplace_back("max_abs_theta_reciprocal_form", fmt_real(max_theta_qm));
  return r;
}

}  // namespace bvw
