#include "bvw/dirichlet/sums.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "bvw/errors.hpp"
#include "bvw/util/summation.hpp"

namespace bvw {

namespace {

void require_unit(std::uint64_t q, std::uint64_t a) {
  if (gcd(a % q, q) != 1) {
    throw DomainError(fmt::format("residue a={} is not coprime to q={}", a, q));
  }
}

// First n >= 1 with n = a mod q.
std::uint64_t first_in_class(std::uint64_t q, std::uint64_t a) {
  const std::uint64_t r = a % q;
  return r == 0 ? q : r;
}

}  // namespace

double weight_value(const FunctionTables& tables, Weight w, std::uint64_t n, std::uint64_t z) {
  switch (w) {
    case Weight::von_mangoldt:
      return tables.von_mangoldt(n);
    case Weight::g_log:
      return n > 1 && tables.is_rough(n, z) ? std::log(static_cast<double>(n)) : 0.0;
  }
  return 0.0;
}

std::vector<double> class_sums(const FunctionTables& tables, std::uint64_t x, std::uint64_t q,
                               Weight w, std::uint64_t z) {
  if (q == 0) throw DomainError("modulus must be positive");
  tables.require_covers(x, "class_sums");
  std::vector<CompensatedSum> acc(q);
  if (w == Weight::von_mangoldt) {
    for (const std::uint32_t p : tables.primes()) {
      if (p > x) break;
      const double lp = std::log(static_cast<double>(p));
      for (std::uint64_t pk = p; pk <= x; pk *= p) {
        acc[pk % q].add(lp);
        if (pk > x / p) break;
      }
    }
  } else {
    for (std::uint64_t n = 2; n <= x; ++n) {
      if (tables.is_rough(n, z)) acc[n % q].add(std::log(static_cast<double>(n)));
    }
  }
  std::vector<double> out(q);
  for (std::uint64_t r = 0; r < q; ++r) out[r] = acc[r].value();
  return out;
}

std::complex<double> psi_chi(const FunctionTables& tables, std::uint64_t x,
                             const CharacterGroup& group, const DirichletCharacter& chi) {
  tables.require_covers(x, "psi_chi");
  CompensatedComplexSum acc;
  for (const std::uint32_t p : tables.primes()) {
    if (p > x) break;
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t pk = p; pk <= x; pk *= p) {
      acc.add_scaled(group.value(chi, pk), lp);
      if (pk > x / p) break;
    }
  }
  return acc.value();
}

std::complex<double> character_sum(const CharacterGroup& group, const DirichletCharacter& chi,
                                   const std::vector<double>& sums) {
  CompensatedComplexSum acc;
  for (std::uint64_t r = 0; r < group.modulus(); ++r) {
    if (!group.is_unit(r) || sums[r] == 0.0) continue;
    acc.add_scaled(group.value(chi, r), sums[r]);
  }
  return acc.value();
}

ProgressionSums psi_progression(const FunctionTables& tables, std::uint64_t x, std::uint64_t q,
                                std::uint64_t a) {
  if (q == 0) throw DomainError("modulus must be positive");
  require_unit(q, a);
  tables.require_covers(x, "psi_progression");
  ProgressionSums out;
  out.x = x;
  out.q = q;
  out.a = a % q;
  CompensatedSum acc;
  for (const std::uint32_t p : tables.primes()) {
    if (p > x) break;
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t pk = p; pk <= x; pk *= p) {
      if (pk % q == out.a) acc.add(lp);
      if (pk > x / p) break;
    }
  }
  out.psi = acc.value();
  out.discrepancy = std::fabs(out.psi - static_cast<double>(x) / static_cast<double>(tables.phi(q)));
  return out;
}

double g_total(const FunctionTables& tables, std::uint64_t x, std::uint64_t z) {
  tables.require_covers(x, "g_total");
  CompensatedSum acc;
  for (std::uint64_t n = 2; n <= x; ++n) {
    if (tables.is_rough(n, z)) acc.add(std::log(static_cast<double>(n)));
  }
  return acc.value();
}

ProgressionSums g_weighted_sums(const FunctionTables& tables, std::uint64_t x, std::uint64_t q,
                                std::uint64_t a, std::uint64_t z) {
  ProgressionSums out = psi_progression(tables, x, q, a);
  CompensatedSum acc;
  for (std::uint64_t n = first_in_class(q, a); n <= x; n += q) {
    if (n > 1 && tables.is_rough(n, z)) acc.add(std::log(static_cast<double>(n)));
  }
  out.g = acc.value();
  out.g1 = out.g - g_total(tables, x, z) / static_cast<double>(tables.phi(q));
  return out;
}

std::uint64_t default_rough_threshold(double r) {
  if (!(r >= 0.0)) throw DomainError("R must be non-negative");
  return static_cast<std::uint64_t>(std::floor(r * r));
}

std::map<std::uint64_t, std::complex<double>> conductor_contributions(
    const CharacterGroup& group, std::uint64_t a, const std::vector<double>& sums) {
  require_unit(group.modulus(), a);
  std::map<std::uint64_t, CompensatedComplexSum> acc;
  for (const auto& chi : group.characters()) {
    const std::complex<double> t = character_sum(group, chi, sums);
    acc[chi.conductor].add(std::conj(group.value(chi, a)) * t);
  }
  const double phi = static_cast<double>(group.order());
  std::map<std::uint64_t, std::complex<double>> out;
  for (const auto& [r, s] : acc) out[r] = s.value() / phi;
  return out;
}

FRDecomposition f_r_from_sums(const CharacterGroup& group, std::uint64_t a, double r,
                              const std::vector<double>& sums) {
  const std::uint64_t q = group.modulus();
  require_unit(q, a);
  CompensatedComplexSum small;
  CompensatedComplexSum large;
  CompensatedSum magnitude;
  for (const auto& chi : group.characters()) {
    const std::complex<double> c = std::conj(group.value(chi, a)) * character_sum(group, chi, sums);
    magnitude.add(std::abs(c));
    if (static_cast<double>(chi.conductor) <= r) {
      small.add(c);
    } else {
      large.add(c);
    }
  }
  const double phi = static_cast<double>(group.order());
  const double f = sums[a % q];
  FRDecomposition out;
  out.by_definition = f - small.value().real() / phi;
  out.by_characters = large.value().real() / phi;
  out.imaginary_residue = large.value().imag() / phi;
  const double scale = std::max({1.0, std::fabs(f), magnitude.value() / phi});
  if (std::fabs(out.by_definition - out.by_characters) > kDecompositionTolerance * scale) {
    throw ConsistencyError(fmt::format(
        "F^(R) paths disagree for q={} a={} R={}: {} vs {}", q, a, r, out.by_definition,
        out.by_characters));
  }
  return out;
}

FRDecomposition f_r_decomposition(const FunctionTables& tables, std::uint64_t x,
                                  const CharacterGroup& group, std::uint64_t a, double r,
                                  Weight w, std::uint64_t z) {
  if (w == Weight::g_log && z == 0) z = default_rough_threshold(r);
  const std::vector<double> sums = class_sums(tables, x, group.modulus(), w, z);
  return f_r_from_sums(group, a, r, sums);
}

std::uint64_t rough_count(const FunctionTables& tables, std::uint64_t y, std::uint64_t z,
                          std::uint64_t q, std::uint64_t a) {
  if (q == 0) throw DomainError("modulus must be positive");
  std::uint64_t count = 0;
  for (std::uint64_t n = first_in_class(q, a); n <= y; n += q) {
    count += static_cast<std::uint64_t>(rough_indicator(tables, n, z));
  }
  return count;
}

double rough_count_integral(const FunctionTables& tables, std::uint64_t y, std::uint64_t z,
                            std::uint64_t q, std::uint64_t a) {
  if (q == 0) throw DomainError("modulus must be positive");
  CompensatedSum acc;
  std::uint64_t count = 0;
  std::uint64_t last = 0;
  for (std::uint64_t n = first_in_class(q, a); n <= y; n += q) {
    if (!rough_indicator(tables, n, z)) continue;
    if (count > 0) {
      acc.add(static_cast<double>(count) *
              (std::log(static_cast<double>(n)) - std::log(static_cast<double>(last))));
    }
    ++count;
    last = n;
  }
  if (count > 0) {
    acc.add(static_cast<double>(count) *
            (std::log(static_cast<double>(y)) - std::log(static_cast<double>(last))));
  }
  return acc.value();
}

double g_by_partial_summation(const FunctionTables& tables, std::uint64_t y, std::uint64_t z,
                              std::uint64_t q, std::uint64_t a) {
  const double n = static_cast<double>(rough_count(tables, y, z, q, a));
  return std::log(static_cast<double>(y)) * n - rough_count_integral(tables, y, z, q, a);
}

Rational phi_partial(std::uint64_t q, std::uint64_t z) {
  if (q == 0) throw DomainError("phi_partial needs q >= 1");
  Rational out(q);
  std::uint64_t m = q;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    if (p > z) out *= Rational(p - 1, p);
  }
  if (m > 1 && m > z) out *= Rational(m - 1, m);
  return out;
}

}  // namespace bvw
