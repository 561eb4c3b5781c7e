#include "bvw/rigor/zeta.hpp"

#include <array>
#include <cmath>
#include <string>

#include "bvw/errors.hpp"

namespace bvw {

namespace {

// B_2, B_4, ..., B_10 as exact numerator/denominator pairs.
constexpr std::array<std::array<double, 2>, 5> kBernoulli = {{
    {1.0, 6.0}, {-1.0, 30.0}, {1.0, 42.0}, {-1.0, 30.0}, {5.0, 66.0}}};

Interval factorial(int n) {
  Interval f(1.0);
  for (int i = 2; i <= n; ++i) f *= Interval(static_cast<double>(i));
  return f;
}

// n^-s for a positive integer n.
Interval inverse_power(double n, const Interval& s) { return exp(-(s * log(Interval(n)))); }

}  // namespace

Interval zeta_euler_maclaurin(double s, unsigned head_terms) {
  if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("zeta requires real s > 1");
  if (head_terms < 2) head_terms = 2;
  const Interval S(s);
  const double big_n = static_cast<double>(head_terms);

  Interval head(0.0);
  for (unsigned n = 1; n < head_terms; ++n) {
    head += n == 1 ? Interval(1.0) : inverse_power(static_cast<double>(n), S);
  }

  const Interval n_pow = inverse_power(big_n, S);  // N^-s
  Interval tail = n_pow * Interval(big_n) / (S - 1.0) + n_pow / 2.0;

  // rising = s(s+1)...(s+2k-2); n_shift = N^{-s-2k+1}
  Interval rising = S;
  Interval n_shift = n_pow / Interval(big_n);
  const Interval inv_n2 = Interval(1.0) / Interval(big_n * big_n);
  for (int k = 1; k <= kZetaCorrectionTerms; ++k) {
    const Interval bern = Interval(kBernoulli[k - 1][0]) / Interval(kBernoulli[k - 1][1]);
    tail += bern / factorial(2 * k) * rising * n_shift;
    rising *= (S + static_cast<double>(2 * k - 1)) * (S + static_cast<double>(2 * k));
    n_shift *= inv_n2;
  }
  // rising now holds s(s+1)...(s+8) and n_shift holds N^{-s-9}.
  const Interval b10 = Interval(kBernoulli[4][0]) / Interval(kBernoulli[4][1]);
  const Interval bound = Interval(2.0) * b10 / factorial(10) * rising * n_shift;
  const double r = bound.hi();
  return head + tail + Interval(-r, r);
}

Interval zeta_value(double s) {
  if (s != 1.5 && s != 2.0 && s != 3.0) {
    throw DomainError("zeta_value supports s in {3/2, 2, 3}; got " + std::to_string(s));
  }
  return zeta_euler_maclaurin(s);
}

}  // namespace bvw
