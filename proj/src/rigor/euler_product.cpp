#include "bvw/rigor/euler_product.hpp"

#include <algorithm>
#include <cmath>

#include "bvw/errors.hpp"
#include "bvw/rigor/zeta.hpp"

namespace bvw {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw ConsistencyError("polynomial coefficient overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw ConsistencyError("polynomial coefficient overflow");
  return r;
}

IntPoly multiply(const IntPoly& a, const IntPoly& b, std::size_t truncate = 0) {
  if (a.empty() || b.empty()) return {};
  std::size_t n = a.size() + b.size() - 1;
  if (truncate != 0) n = std::min(n, truncate);
  IntPoly out(n, 0);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
      out[i + j] = checked_add(out[i + j], checked_mul(a[i], b[j]));
    }
  }
  return out;
}

IntPoly one_minus_power(int k) {
  IntPoly p(k + 1, 0);
  p[0] = 1;
  p[k] = -1;
  return p;
}

// 1/(1 - a^k) truncated to `length` coefficients.
IntPoly geometric(int k, std::size_t length) {
  IntPoly p(length, 0);
  for (std::size_t i = 0; i < length; i += k) p[i] = 1;
  return p;
}

// Power series of num/den to `length` coefficients; den[0] must be 1.
IntPoly series_quotient(const IntPoly& num, const IntPoly& den, std::size_t length) {
  if (den.empty() || den[0] != 1) throw ConsistencyError("local factor denominator must start at 1");
  IntPoly q(length, 0);
  for (std::size_t i = 0; i < length; ++i) {
    std::int64_t v = i < num.size() ? num[i] : 0;
    for (std::size_t j = 1; j <= i && j < den.size(); ++j) {
      v = checked_add(v, -checked_mul(den[j], q[i - j]));
    }
    q[i] = v;
  }
  return q;
}

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Interval horner(const IntPoly& p, const Interval& a) {
  Interval acc(0.0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = acc * a + Interval(static_cast<double>(*it));
  }
  return acc;
}

// Pairwise interval summation keeps the rounding width near log2(n) ulps of
// the partial sums instead of n ulps of the total.
Interval pairwise_sum(std::vector<Interval>& terms) {
  if (terms.empty()) return Interval(0.0);
  while (terms.size() > 1) {
    std::vector<Interval> next;
    next.reserve((terms.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
    if (terms.size() % 2 == 1) next.push_back(terms.back());
    terms.swap(next);
  }
  return terms.front();
}

std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

std::string product_name(ProductId id) {
  switch (id) {
    case ProductId::C2: return "C2";
    case ProductId::C5: return "C5";
    case ProductId::B3: return "B3";
    case ProductId::B4: return "B4";
    case ProductId::B5: return "B5";
  }
  return "?";
}

LocalFactor local_factor(ProductId id) {
  switch (id) {
    // 1 + a^4/(1 - a^2)
    case ProductId::C2: return {{1, 0, -1, 0, 1}, {1, 0, -1}};
    // 1 + a^4/(1 - a^2)^2
    case ProductId::C5: return {{1, 0, -2, 0, 2}, {1, 0, -2, 0, 1}};
    // 1 + a^3/((1 - a^2)(1 + a^3))
    case ProductId::B3: return {{1, 0, -1, 2, 0, -1}, {1, 0, -1, 1, 0, -1}};
    // 1 + 2a^3/(1 - a^2) + 2a^3/(1 - a^2)^2
    case ProductId::B4: return {{1, 0, -2, 4, 1, -2}, {1, 0, -2, 0, 1}};
    // 1 + 2a^3/(1 - a^2)
    case ProductId::B5: return {{1, 0, -1, 2}, {1, 0, -1}};
  }
  throw UsageError("unknown product id");
}

PeeledFactor peel_zeta_factors(const LocalFactor& factor, int order) {
  PeeledFactor out;
  IntPoly num = factor.numerator;
  IntPoly den = factor.denominator;
  if (order > 0) {
    const auto length = static_cast<std::size_t>(order);
    IntPoly series = series_quotient(num, den, length);
    if (series[0] != 1) throw ConsistencyError("local factor must be 1 + O(a)");
    for (int k = 1; k < order; ++k) {
      const std::int64_t c = series[k];
      if (c == 0) continue;
      if (k < 3) {
        throw DomainError("local factor deviates from 1 at order a^" + std::to_string(k) +
                          "; the product diverges");
      }
      const IntPoly step = c > 0 ? one_minus_power(k) : geometric(k, length);
      for (std::int64_t i = 0; i < std::llabs(c); ++i) series = multiply(series, step, length);
      for (std::int64_t i = 0; i < std::llabs(c); ++i) {
        if (c > 0) {
          num = multiply(num, one_minus_power(k));
        } else {
          den = multiply(den, one_minus_power(k));
        }
      }
      out.zeta_factors.push_back({k, static_cast<int>(c)});
    }
  }
  out.corr_numerator = std::move(num);
  out.corr_denominator = std::move(den);
  return out;
}

EulerProductResult euler_product(ProductId id, const EulerProductOptions& options) {
  if (options.cutoff < 100) throw DomainError("Euler-product cutoff must be at least 100");
  if (options.acceleration_order < 0 || options.acceleration_order > 24) {
    throw DomainError("acceleration order must lie in [0, 24]");
  }
  const PeeledFactor peeled = peel_zeta_factors(local_factor(id), options.acceleration_order);
  const IntPoly& dcorr = peeled.corr_denominator;

  IntPoly diff(std::max(peeled.corr_numerator.size(), dcorr.size()), 0);
  for (std::size_t i = 0; i < diff.size(); ++i) {
    const std::int64_t n = i < peeled.corr_numerator.size() ? peeled.corr_numerator[i] : 0;
    const std::int64_t d = i < dcorr.size() ? dcorr[i] : 0;
    diff[i] = n - d;
  }
  trim(diff);
  int residual_order = 0;
  while (residual_order < static_cast<int>(diff.size()) && diff[residual_order] == 0) {
    ++residual_order;
  }
  if (diff.empty()) residual_order = 0;
  if (!diff.empty() && residual_order < 3) {
    throw ConsistencyError("residual of order < 3 cannot be summed over primes");
  }

  // Finite part: sum_{p <= P} log corr(p) = sum log1p(diff(a)/dcorr(a)).
  std::vector<Interval> logs;
  if (!diff.empty()) {
    const auto primes = primes_upto(options.cutoff);
    logs.reserve(primes.size());
    for (const std::uint64_t p : primes) {
      const Interval a = Interval(1.0) / sqrt(Interval(static_cast<double>(p)));
      logs.push_back(log1p(horner(diff, a) / horner(dcorr, a)));
    }
  }
  Interval log_value = pairwise_sum(logs);

  // Tail over p > P.
  double tail = 0.0;
  if (!diff.empty()) {
    const Interval big_p(static_cast<double>(options.cutoff));
    const Interval a_max = Interval(1.0) / sqrt(big_p);
    const Interval a_range(0.0, a_max.hi());
    const double d_min = horner(dcorr, a_range).lo();
    if (!(d_min > 0.0)) throw ConsistencyError("cannot bound the tail denominator away from zero");
    Interval coeff_sum(0.0);
    Interval a_pow(1.0);
    for (std::size_t i = residual_order; i < diff.size(); ++i) {
      coeff_sum += Interval(std::fabs(static_cast<double>(diff[i]))) * Interval(0.0, a_pow.hi());
      a_pow *= a_max;
    }
    const Interval k_const = coeff_sum / Interval(d_min);
    const Interval sigma = Interval(static_cast<double>(residual_order)) / 2.0;
    const Interval p_to_sigma = pow(big_p, sigma);
    const Interval delta_max = k_const / p_to_sigma;
    if (!(delta_max.hi() < 0.5)) throw DomainError("cutoff too small for the tail bound");
    // |log(1 + d)| <= |d|/(1 - |d|), and sum_{n>P} n^-sigma <= P^{1-sigma}/(sigma-1).
    const Interval t =
        k_const * big_p / p_to_sigma / (sigma - 1.0) / (Interval(1.0) - Interval(delta_max.hi()));
    tail = t.hi();
    log_value += Interval(-tail, tail);
  }

  for (const auto& f : peeled.zeta_factors) {
    const Interval z = zeta_euler_maclaurin(static_cast<double>(f.half_argument) / 2.0);
    log_value += Interval(static_cast<double>(f.exponent)) * log(z);
  }

  Interval value = exp(log_value);
  if (id == ProductId::B3) value *= zeta_value(1.5) / zeta_value(3.0);

  return {id, value, options.cutoff, options.acceleration_order, peeled.zeta_factors,
          residual_order, tail};
}

}  // namespace bvw
