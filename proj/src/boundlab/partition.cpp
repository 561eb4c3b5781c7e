#include "bvw/boundlab/partition.hpp"

#include <cmath>

#include <fmt/format.h>

#include "bvw/errors.hpp"
#include "bvw/rigor/interval.hpp"
#include "bvw/util/summation.hpp"

namespace bvw {

namespace {

constexpr std::array<const char*, 4> kSumNames = {"sum_sqrtMN", "sum_MsqrtN", "sum_sqrtMN2",
                                                  "sum_MN"};

// Upper ends of the four closed forms, in interval arithmetic.
std::array<double, 4> closed_form_bounds(double xd, double yd) {
  const Interval x(xd);
  const Interval y(yd);
  const Interval one(1.0);
  const Interval two(2.0);
  const Interval r2 = sqrt(two);
  const Interval ln2 = Interval::ln2();
  const Interval log_x = log(x);
  const Interval sx = sqrt(x);
  const Interval sy = sqrt(y);
  const Interval sxy = sqrt(x * y);
  const Interval c_a = one / (two - r2);            // 1/(2 - sqrt 2)
  const Interval c_b = one / (two * (r2 - one));    // 1/(2(sqrt 2 - 1))
  const Interval c_c = one / (Interval(4.0) - r2);  // 1/(4 - sqrt 2)

  const Interval b0 = sxy * log_x / ln2 + c_a * (x + sxy) + x;
  const Interval b1 = c_b * x * sy + c_a * (sxy + x * sx / (two * sy)) + c_c * x * sx / y;
  const Interval b2 = c_b * sx * y + c_a * (x + y / two) + c_c * x;
  const Interval b3 = x * y / two + (x + y) * log_x / (two * ln2) + x;
  // The lower end keeps the comparison conservative.
  return {b0.lo(), b1.lo(), b2.lo(), b3.lo()};
}

}  // namespace

DyadicPartitionResult dyadic_partition_sums(std::uint64_t x, std::uint64_t y, unsigned k) {
  if (x < 2 || y < 2) throw DomainError("X and Y must be at least 2");
  if (k < 1 || k > kMaxPartitionDepth) {
    throw DomainError(fmt::format("K must lie in [1, {}], got {}", kMaxPartitionDepth, k));
  }
  DyadicPartitionResult out;
  out.x = x;
  out.y = y;
  out.k = k;
  std::array<CompensatedSum, 4> acc;
  for (unsigned kk = 1; kk <= k; ++kk) {
    const std::uint64_t pk = std::uint64_t{1} << kk;
    for (std::uint64_t j = 0; j < pk / 2; ++j) {
      // Integers m in (lo, hi] number floor(hi) - floor(lo).
      const std::uint64_t m_lo = (pk + 2 * j) * x / pk;
      const std::uint64_t m_hi = std::min(pk + 2 * j + 1, 2 * pk) * x / pk;
      const std::uint64_t n_lo = y * pk / (pk + 2 * j + 2);
      const std::uint64_t n_hi = y * pk / (pk + 2 * j + 1);
      const double m = static_cast<double>(m_hi - m_lo);
      const double n = static_cast<double>(n_hi - n_lo);
      ++out.interval_count;
      // M <= X/2^k + 1, N <= Y/2^k + 1, compared exactly as M 2^k <= X + 2^k.
      if ((m_hi - m_lo) * pk > x + pk || (n_hi - n_lo) * pk > y + pk) ++out.size_violations;
      acc[0].add(std::sqrt(m * n));
      acc[1].add(m * std::sqrt(n));
      acc[2].add(std::sqrt(m) * n);
      acc[3].add(m * n);
    }
  }
  out.bounds = closed_form_bounds(static_cast<double>(x), static_cast<double>(y));
  MarginTracker tr;
  for (std::size_t i = 0; i < 4; ++i) {
    out.sums[i] = acc[i].value();
    // The sums are rounded once per term; a relative 1e-12 covers that.
    tr.observe(static_cast<double>(i), out.sums[i] * (1.0 + 1e-12), out.bounds[i], true,
               kSumNames[i]);
  }
  BoundCheckReport& r = out.report;
  r.check_id = "partition";
  r.params = {{"X", fmt_uint(x)}, {"Y", fmt_uint(y)}, {"K", fmt_uint(k)}};
  r.domain = "all boxes I_{j,k}, 0 <= j < 2^(k-1), 1 <= k <= K";
  r.absorb(tr);
  if (out.size_violations > 0) {
    r.violation_count += out.size_violations;
    r.violations.push_back({-1.0, static_cast<double>(out.size_violations), 0.0,
                            "boxes exceeding the side-length bound"});
  }
  r.extra.emplace_back("interval_count", fmt_uint(out.interval_count));
  for (std::size_t i = 0; i < 4; ++i) {
    r.extra.emplace_back(kSumNames[i], fmt_real(out.sums[i]));
    r.extra.emplace_back(std::string(kSumNames[i]) + "_bound", fmt_real(out.bounds[i]));
  }
  return out;
}

}  // namespace bvw
