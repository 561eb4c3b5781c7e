#include "bvw/harness/identities.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "bvw/dirichlet/characters.hpp"
#include "bvw/dirichlet/sums.hpp"
#include "bvw/errors.hpp"
#include "bvw/util/parallel.hpp"
#include "bvw/util/summation.hpp"

namespace bvw {

namespace {

constexpr double kPartitionTolerance = 1e-9;

}  // namespace

PsiRSum psi_r_sum(const FunctionTables& t, std::uint64_t x, std::uint64_t q, double r,
                  std::uint64_t a, unsigned workers) {
  if (q < 1) throw DomainError("Q must be at least 1");
  if (q > CharacterGroup::kDefaultCap) {
    throw CapacityError(fmt::format("Q={} exceeds the character cap", q));
  }
  t.require_covers(x, "psi_r_sum");
  PsiRSum out;
  out.x = x;
  out.q_max = q;
  out.r = r;
  out.a = a;
  out.terms = parallel_map(q, workers, [&](std::size_t i) {
    const std::uint64_t m = i + 1;
    PsiRTerm term;
    term.q = m;
    if (gcd(a % m, m) != 1) {
      term.skipped = true;
      return term;
    }
    const CharacterGroup g(m);
    const auto sums = class_sums(t, x, m, Weight::von_mangoldt);
    term.value = f_r_from_sums(g, a, r, sums).value();
    return term;
  });
  CompensatedSum total;
  for (const auto& term : out.terms) {
    if (!term.skipped) total.add(std::fabs(term.value));
  }
  out.total = total.value();
  return out;
}

PartitionCheck conductor_partition_check(const FunctionTables& t, std::uint64_t x,
                                         std::uint64_t q, std::uint64_t a, double r) {
  const CharacterGroup g(q);
  const auto sums = class_sums(t, x, q, Weight::von_mangoldt);
  const auto contrib = conductor_contributions(g, a, sums);
  PartitionCheck out;
  out.psi = sums[a % q];
  out.psi_1 = f_r_from_sums(g, a, 1.0, sums).value();
  out.psi_r = f_r_from_sums(g, a, r, sums).value();
  CompensatedSum middle;
  double magnitude = 0.0;
  for (const auto& [cond, c] : contrib) {
    magnitude += std::abs(c);
    if (cond == 1) {
      out.principal = c.real();
    } else if (static_cast<double>(cond) <= r) {
      middle.add(c.real());
    }
  }
  out.middle = middle.value();
  const double scale = std::max({1.0, std::fabs(out.psi), magnitude});
  out.error_principal = std::fabs(out.psi - out.psi_1 - out.principal) / scale;
  out.error_middle = std::fabs(out.psi_r + out.middle - out.psi_1) / scale;
  return out;
}

BoundCheckReport conductor_partition_report(const FunctionTables& t, std::uint64_t x,
                                            std::uint64_t q_max, std::uint64_t a, double r,
                                            unsigned workers) {
  const auto checks = parallel_map(q_max, workers, [&](std::size_t i) {
    const std::uint64_t q = i + 1;
    if (gcd(a % q, q) != 1) return PartitionCheck{};
    return conductor_partition_check(t, x, q, a, r);
  });
  MarginTracker tr;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::uint64_t q = i + 1;
    if (gcd(a % q, q) != 1) continue;
    tr.observe(static_cast<double>(q), checks[i].error_principal, kPartitionTolerance, false,
               "principal split");
    tr.observe(static_cast<double>(q), checks[i].error_middle, kPartitionTolerance, false,
               "conductors in (1, R]");
  }
  BoundCheckReport rep;
  rep.check_id = "conductor_partition";
  rep.params = {{"x", fmt_uint(x)}, {"Q", fmt_uint(q_max)}, {"a", fmt_uint(a)}, {"R", fmt_real(r)}};
  rep.domain = "q <= Q with gcd(a, q) = 1; relative tolerance 1e-9";
  rep.absorb(tr);
  return rep;
}

BoundCheckReport convolution_identity_check(const FunctionTables& t, std::uint64_t x, double r) {
  if (x > kConvolutionMax) {
    throw CapacityError(fmt::format("convolution check limited to x <= {}", kConvolutionMax));
  }
  if (x < 1) throw DomainError("x must be at least 1");
  t.require_covers(x, "convolution_identity_check");
  const std::uint64_t z = default_rough_threshold(r);
  std::vector<double> b(x + 1, 0.0);
  for (std::uint64_t m = 2; m <= x; ++m) {
    if (t.is_rough(m, z)) b[m] = std::log(static_cast<double>(m));
  }
  std::vector<CompensatedSum> c(x + 1);
  for (std::uint64_t m = 2; m <= x; ++m) {
    if (!t.is_rough(m, z)) continue;
    const int mu = t.mu(m);
    if (mu == 0) continue;
    for (std::uint64_t n = 1; n * m <= x; ++n) {
      if (b[n] != 0.0) c[m * n].add(mu * b[n]);
    }
  }
  MarginTracker tr;
  for (std::uint64_t u = 1; u <= x; ++u) {
    const double expected =
        t.is_rough(u, z) ? t.von_mangoldt(u) - std::log(static_cast<double>(u)) : 0.0;
    const double diff = std::fabs(c[u].value() - expected);
    tr.observe(static_cast<double>(u), diff, 1e-12 * std::log(static_cast<double>(u)), false);
  }
  BoundCheckReport rep;
  rep.check_id = "convolution_identity";
  rep.params = {{"x", fmt_uint(x)}, {"R", fmt_real(r)}, {"z", fmt_uint(z)}};
  rep.domain = "1 <= u <= x; tolerance 1e-12 log u";
  rep.absorb(tr);
  return rep;
}

BoundCheckReport truncation_estimate_check(const FunctionTables& t, std::uint64_t x, double r) {
  if (x < 2) throw DomainError("x must be at least 2");
  t.require_covers(x, "truncation_estimate_check");
  const std::uint64_t z = default_rough_threshold(r);
  CompensatedSum lhs;
  for (const std::uint32_t p : t.primes()) {
    if (p > z || p > x) break;
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t pk = p; pk <= x; pk *= p) {
      lhs.add(lp);
      if (pk > x / p) break;
    }
  }
  const std::uint64_t pi_z = z >= 2 ? t.prime_count(std::min(z, t.limit())) : 0;
  if (z > t.limit()) t.require_covers(z, "truncation_estimate_check");
  const double rhs = static_cast<double>(pi_z) * std::log(static_cast<double>(x));
  MarginTracker tr;
  tr.observe(static_cast<double>(x), lhs.value() * (1.0 + 1e-12), rhs, false);
  BoundCheckReport rep;
  rep.check_id = "truncation_estimate";
  rep.params = {{"x", fmt_uint(x)}, {"R", fmt_real(r)}, {"z", fmt_uint(z)}};
  rep.domain = "n <= x";
  rep.absorb(tr);
  rep.extra = {{"lhs", fmt_real(lhs.value())},
               {"rhs", fmt_real(rhs)},
               {"looseness", lhs.value() > 0.0 ? fmt_real(rhs / lhs.value()) : "inf"}};
  return rep;
}

}  // namespace bvw
