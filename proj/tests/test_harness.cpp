#include <doctest.h>

#include <cmath>

#include "bvw/arith/tables.hpp"
#include "bvw/errors.hpp"
#include "bvw/harness/bv_sums.hpp"
#include "bvw/harness/identities.hpp"
#include "bvw/harness/trend.hpp"
#include "oracles.hpp"

using namespace bvw;

namespace {

const FunctionTables& tables() {
  static const FunctionTables t(200'000);
  return t;
}

using Quad = __float128;

// Lambda(n) by trial division for n <= x.
const std::vector<double>& lambdas(std::uint64_t x) {
  static std::vector<double> v;
  if (v.size() <= x) {
    v.assign(x + 1, 0.0);
    for (std::uint64_t n = 2; n <= x; ++n) v[n] = oracle::lambda(n);
  }
  return v;
}

// psi(y; q, a) in binary128.
Quad psi_quad(std::uint64_t y, std::uint64_t q, std::uint64_t a) {
  const auto& l = lambdas(y);
  Quad s = 0;
  for (std::uint64_t n = a % q == 0 ? q : a % q; n <= y; n += q) s += l[n];
  return s;
}

// The sums of doubles above are exact in binary128, so this is the correctly
// rounded discrepancy.
double max_dev(std::uint64_t y, std::uint64_t q) {
  Quad best = 0;
  for (std::uint64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    Quad d = psi_quad(y, q, a) - static_cast<Quad>(y) / static_cast<Quad>(oracle::phi(q));
    if (d < 0) d = -d;
    if (d > best) best = d;
  }
  return static_cast<double>(best);
}

}  // namespace

TEST_CASE("discrepancy sum against a per-modulus brute force") {
  const std::uint64_t x = 100'000;
  const auto r = bv_discrepancy_sum(tables(), x, 30);
  REQUIRE(r.records.size() == 30);
  Quad total = 0;
  for (std::uint64_t q = 1; q <= 30; ++q) {
    CAPTURE(q);
    const double want = max_dev(x, q);
    CHECK(r.records[q - 1].discrepancy == want);
    total += want;
  }
  CHECK(r.total == static_cast<double>(total));
  const double lx = std::log(1e5);
  CHECK(r.normalized == doctest::Approx(r.total * lx * lx / (1e5 * std::log(lx) * std::log(lx))));

  const auto one = bv_discrepancy_sum(tables(), x, 1);
  CHECK(one.total == doctest::Approx(std::fabs(static_cast<double>(psi_quad(x, 1, 1)) - 1e5)));
  CHECK(one.records[0].a_star == 1);
}

TEST_CASE("filters") {
  const std::uint64_t x = 20'000;
  const auto all = bv_discrepancy_sum(tables(), x, 40);
  BVOptions sf;
  sf.squarefree_only = true;
  const auto s = bv_discrepancy_sum(tables(), x, 40, sf);
  CHECK(s.total <= all.total);
  double want = 0.0;
  for (const auto& rec : all.records) {
    if (oracle::mu(rec.q) != 0) want += rec.discrepancy;
  }
  CHECK(s.total == doctest::Approx(want).epsilon(1e-13));
  CHECK_FALSE(s.records[3].included);

  BVOptions ex;
  ex.exclude_q0 = 6;
  const auto e = bv_discrepancy_sum(tables(), x, 40, ex);
  double dropped = 0.0;
  for (const std::uint64_t q : {6, 12, 18, 24, 30, 36}) {
    CHECK(e.records[q - 1].excluded);
    dropped += all.records[q - 1].discrepancy;
  }
  CHECK(e.total + dropped == doctest::Approx(all.total).epsilon(1e-13));

  CHECK_THROWS_AS(bv_discrepancy_sum(tables(), 100, 101), DomainError);
  CHECK_THROWS_AS(bv_discrepancy_sum(tables(), 100, 0), DomainError);
  CHECK_THROWS_AS(bv_discrepancy_sum(tables(), 300'000, 10), CapacityError);
}

TEST_CASE("grid mode") {
  const std::uint64_t x = 50'000;
  const auto ys = y_grid(x);
  CHECK(ys.size() <= kYGridPoints);
  CHECK(ys.back() == x);
  CHECK(ys.front() == static_cast<std::uint64_t>(std::floor(std::sqrt(50'000.0))));
  CHECK(std::is_sorted(ys.begin(), ys.end()));
  BVOptions g;
  g.y_mode = YMode::grid;
  const auto r = bv_discrepancy_sum(tables(), x, 12, g);
  const auto fixed = bv_discrepancy_sum(tables(), x, 12);
  for (std::uint64_t q = 1; q <= 12; ++q) {
    CAPTURE(q);
    double want = 0.0;
    for (const auto y : ys) want = std::max(want, max_dev(y, q));
    CHECK(r.records[q - 1].discrepancy == want);
    CHECK(r.records[q - 1].discrepancy >= fixed.records[q - 1].discrepancy - 1e-9);
  }
  g.workers = 3;
  CHECK(to_json(bv_discrepancy_sum(tables(), x, 12, g)).dump() == to_json(r).dump());
}

TEST_CASE("psi^(R) sums") {
  const std::uint64_t x = 10'000;
  // Every conductor is at most q <= R, so nothing survives.
  const auto none = psi_r_sum(tables(), x, 20, 20.0);
  CHECK(none.total == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));

  // R = 1 keeps every non-principal character:
  // psi(x; q, a) - (1/phi(q)) sum_{(n, q) = 1} Lambda(n).
  const auto r1 = psi_r_sum(tables(), x, 20, 1.0, 1);
  const auto& l = lambdas(x);
  for (std::uint64_t q = 1; q <= 20; ++q) {
    CAPTURE(q);
    Quad coprime = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
      if (std::gcd(n, q) == 1) coprime += l[n];
    }
    const Quad want = psi_quad(x, q, 1) - coprime / static_cast<Quad>(oracle::phi(q));
    CHECK(r1.terms[q - 1].value ==
          doctest::Approx(static_cast<double>(want)).scale(1.0).epsilon(1e-9));
  }

  const auto a2 = psi_r_sum(tables(), x, 10, 1.0, 2);
  CHECK(a2.terms[1].skipped);
  CHECK(a2.terms[3].skipped);
  CHECK_FALSE(a2.terms[2].skipped);
  CHECK_THROWS_AS(psi_r_sum(tables(), x, 20'000, 1.0), CapacityError);
}

TEST_CASE("conductor partition") {
  const auto rep = conductor_partition_report(tables(), 20'000, 60, 1, 4.0);
  CHECK(rep.passed());
  CHECK(rep.points == 2 * 60);
  const auto c = conductor_partition_check(tables(), 20'000, 12, 5, 4.0);
  CHECK(c.psi == doctest::Approx(static_cast<double>(psi_quad(20'000, 12, 5))));
  CHECK(c.error_principal <= 1e-12);
  CHECK(c.error_middle <= 1e-12);
}

TEST_CASE("convolution identity") {
  for (const double r : {1.0, 3.0, 10.0}) {
    CAPTURE(r);
    const auto rep = convolution_identity_check(tables(), 10'000, r);
    CHECK(rep.passed());
    CHECK(rep.points == 10'000);
  }
  // Hand examples at z = 9: u = 11 gives -log 11 + log 11 = 0 from the
  // single term m = 11, n = 1; u = 121 gives mu(11) log 11 = -log 11.
  const double l11 = std::log(11.0);
  CHECK(oracle::lambda(121) - std::log(121.0) == doctest::Approx(-l11));
  CHECK_THROWS_AS(convolution_identity_check(tables(), 100'001, 3.0), CapacityError);
}

TEST_CASE("truncation estimate") {
  const auto r1 = truncation_estimate_check(tables(), 100'000, 1.0);
  CHECK(r1.passed());
  CHECK(r1.extra[0].second == "0");

  const auto r3 = truncation_estimate_check(tables(), 100'000, 3.0);
  CHECK(r3.passed());
  // z = 9: prime powers of 2, 3, 5, 7 up to 10^5.
  double lhs = 0.0;
  for (const double p : {2.0, 3.0, 5.0, 7.0}) {
    lhs += std::floor(std::log(1e5) / std::log(p) + 1e-12) * std::log(p);
  }
  CHECK(std::stod(r3.extra[0].second) == doctest::Approx(lhs).epsilon(1e-9));
  CHECK(std::stod(r3.extra[1].second) == doctest::Approx(4.0 * std::log(1e5)).epsilon(1e-9));
  CHECK_THROWS_AS(truncation_estimate_check(tables(), 1, 3.0), DomainError);
}

TEST_CASE("trend") {
  CHECK(trend_modulus(1000, 2) == 1);
  CHECK(trend_modulus(1000, 2, 2.0) == 15);
  CHECK_THROWS_AS(trend_modulus(2, 2), DomainError);
  TrendOptions o;
  const auto rows = trend_report(tables(), {1000, 100'000}, o);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].degenerate);
  CHECK(rows[0].q == 1);
  CHECK(rows[1].total == doctest::Approx(std::fabs(static_cast<double>(psi_quad(100'000, 1, 1)) - 1e5)));
  o.sqrt_divisor = 10.0;
  const auto over = trend_report(tables(), {100'000}, o);
  CHECK(over[0].q == 31);
  CHECK(trend_report(tables(), {}, o).empty());
  CHECK(to_json({}, o)["rows"].empty());
  CHECK(to_csv(rows).rfind("x,Q,total,normalized,degenerate\n", 0) == 0);
}
