#include "bvw/rigor/interval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "bvw/errors.hpp"

namespace bvw {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_finite(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi)) throw DomainError("interval bound is NaN");
}
}  // namespace

double round_down(double v) { return std::nextafter(v, -kInf); }
double round_up(double v) { return std::nextafter(v, kInf); }

namespace {

// Directed results of a correctly rounded op r, given the sign of the exact
// error (true value minus r). A zero error leaves r untouched.
struct Directed {
  double lo;
  double hi;
};

Directed from_error(double r, double err) {
  if (!std::isfinite(r) || std::isnan(err)) return {round_down(r), round_up(r)};
  if (err > 0.0) return {r, round_up(r)};
  if (err < 0.0) return {round_down(r), r};
  return {r, r};
}

Directed add_dir(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return from_error(s, err);
}

// Below this the fma residual may itself underflow; fall back to stepping.
constexpr double kTiny = 0x1p-960;

Directed mul_dir(double a, double b) {
  if (a == 0.0 || b == 0.0) return {0.0, 0.0};
  const double p = a * b;
  if (std::fabs(p) < kTiny) return {round_down(p), round_up(p)};
  return from_error(p, std::fma(a, b, -p));
}

Directed div_dir(double a, double b) {
  if (a == 0.0) return {0.0, 0.0};
  const double r = a / b;
  if (std::fabs(r) < kTiny) return {round_down(r), round_up(r)};
  const double rem = std::fma(-r, b, a);  // a - r b, exact
  return from_error(r, b > 0.0 ? rem : -rem);
}

}  // namespace

Interval::Interval(double v) : lo_(v), hi_(v) { check_finite(v, v); }

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  check_finite(lo, hi);
  if (lo > hi) throw DomainError(fmt::format("empty interval [{}, {}]", lo, hi));
}

Interval Interval::from_decimal(std::string_view text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw UsageError("not a decimal number: " + std::string(text));
  }
  return {round_down(v), round_up(v)};
}

Interval Interval::exact_ratio(double num, double den) { return Interval(num) / Interval(den); }

Interval Interval::pi() {
  constexpr double p = 3.141592653589793238462643383279502884;
  return {round_down(p), round_up(p)};
}

Interval Interval::euler_gamma() {
  constexpr double g = 0.577215664901532860606512090082402431;
  return {round_down(g), round_up(g)};
}

Interval Interval::ln2() {
  constexpr double l = 0.693147180559945309417232121458176568;
  return {round_down(l), round_up(l)};
}

double Interval::magnitude() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }

Interval Interval::hull(const Interval& o) const {
  return {std::min(lo_, o.lo_), std::max(hi_, o.hi_)};
}

Interval Interval::padded(int ulps) const {
  double lo = lo_;
  double hi = hi_;
  for (int i = 0; i < ulps; ++i) {
    lo = round_down(lo);
    hi = round_up(hi);
  }
  return {lo, hi};
}

Interval& Interval::operator+=(const Interval& o) {
  lo_ = add_dir(lo_, o.lo_).lo;
  hi_ = add_dir(hi_, o.hi_).hi;
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  const double lo = add_dir(lo_, -o.hi_).lo;
  hi_ = add_dir(hi_, -o.lo_).hi;
  lo_ = lo;
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  const Directed p[4] = {mul_dir(lo_, o.lo_), mul_dir(lo_, o.hi_), mul_dir(hi_, o.lo_),
                         mul_dir(hi_, o.hi_)};
  double lo = p[0].lo;
  double hi = p[0].hi;
  for (const auto& d : p) {
    lo = std::min(lo, d.lo);
    hi = std::max(hi, d.hi);
  }
  lo_ = lo;
  hi_ = hi;
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (o.lo_ <= 0.0 && o.hi_ >= 0.0) {
    throw DomainError("division by an interval containing zero");
  }
  const Directed p[4] = {div_dir(lo_, o.lo_), div_dir(lo_, o.hi_), div_dir(hi_, o.lo_),
                         div_dir(hi_, o.hi_)};
  double lo = p[0].lo;
  double hi = p[0].hi;
  for (const auto& d : p) {
    lo = std::min(lo, d.lo);
    hi = std::max(hi, d.hi);
  }
  lo_ = lo;
  hi_ = hi;
  return *this;
}

std::string Interval::to_string(int significant) const {
  return fmt::format("[{:.{}g}, {:.{}g}]", lo_, significant, hi_, significant);
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << x.to_string(17); }

Interval sqrt(const Interval& x) {
  if (x.lo() < 0.0) throw DomainError("sqrt of an interval reaching below zero");
  auto dir = [](double v) {
    const double r = std::sqrt(v);
    if (v < kTiny) return Directed{round_down(r), round_up(r)};
    return from_error(r, -std::fma(r, r, -v));
  };
  return {std::max(0.0, dir(x.lo()).lo), dir(x.hi()).hi};
}

Interval log(const Interval& x) {
  if (!(x.lo() > 0.0)) throw DomainError("log of an interval touching <= 0");
  // log 1 = 0 exactly; keep it a point so exact identities survive.
  const double lo = x.lo() == 1.0 ? 0.0 : round_down(std::log(x.lo()));
  const double hi = x.hi() == 1.0 ? 0.0 : round_up(std::log(x.hi()));
  return {lo, hi};
}

Interval log1p(const Interval& x) {
  if (!(x.lo() > -1.0)) throw DomainError("log1p of an interval touching <= -1");
  const double lo = x.lo() == 0.0 ? 0.0 : round_down(std::log1p(x.lo()));
  const double hi = x.hi() == 0.0 ? 0.0 : round_up(std::log1p(x.hi()));
  return {lo, hi};
}

Interval exp(const Interval& x) {
  return {std::max(0.0, round_down(std::exp(x.lo()))), round_up(std::exp(x.hi()))};
}

Interval pow(const Interval& x, const Interval& e) { return exp(e * log(x)); }

Interval pow(const Interval& x, int n) {
  if (n < 0) return Interval(1.0) / pow(x, -n);
  Interval result(1.0);
  Interval base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base = square(base);
  }
  return result;
}

Interval square(const Interval& x) {
  const Interval a = abs(x);
  return {round_down(a.lo() * a.lo()), round_up(a.hi() * a.hi())};
}

Interval abs(const Interval& x) {
  if (x.lo() >= 0.0) return x;
  if (x.hi() <= 0.0) return -x;
  return {0.0, std::max(-x.lo(), x.hi())};
}

Interval apply(IntervalOp op, const Interval& a, const Interval& b) {
  switch (op) {
    case IntervalOp::add: return a + b;
    case IntervalOp::sub: return a - b;
    case IntervalOp::mul: return a * b;
    case IntervalOp::div: return a / b;
    case IntervalOp::log: return log(a);
    case IntervalOp::exp: return exp(a);
    case IntervalOp::pow: return pow(a, b);
    case IntervalOp::sqrt: return sqrt(a);
  }
  throw UsageError("unknown interval operation");
}

}  // namespace bvw
