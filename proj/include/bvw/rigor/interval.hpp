// interval.hpp
// Closed interval [lo, hi] of doubles with outward rounding.
//
// Hardware rounding modes are not touched. For +, -, *, / and sqrt the
// round-to-nearest result is kept or stepped one ulp with std::nextafter
// according to the sign of the exact rounding error (TwoSum, fma), so exact
// results stay points. log/exp/log1p are stepped one ulp outward
// unconditionally; glibc keeps them within one ulp.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

namespace bvw {

class Interval {
 public:
  constexpr Interval() = default;
  // Exact point; v must be representable (integers, dyadic fractions).
  explicit Interval(double v);
  Interval(double lo, double hi);

  // Encloses a decimal literal such as "1.334": one ulp on either side of
  // the nearest double.
  static Interval from_decimal(std::string_view text);
  static Interval exact_ratio(double num, double den);

  static Interval pi();
  static Interval euler_gamma();
  static Interval ln2();

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return 0.5 * (lo_ + hi_); }
  double width() const { return hi_ - lo_; }
  double magnitude() const;

  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool intersects(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  bool strictly_positive() const { return lo_ > 0.0; }
  bool certainly_less(const Interval& o) const { return hi_ < o.lo_; }
  bool certainly_leq(const Interval& o) const { return hi_ <= o.lo_; }

  Interval hull(const Interval& o) const;
  // Widens by `pad` ulps on each side.
  Interval padded(int ulps) const;

  Interval operator-() const { return {-hi_, -lo_}; }
  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  friend Interval operator+(Interval a, double b) { return a += Interval(b); }
  friend Interval operator-(Interval a, double b) { return a -= Interval(b); }
  friend Interval operator*(Interval a, double b) { return a *= Interval(b); }
  friend Interval operator/(Interval a, double b) { return a /= Interval(b); }
  friend Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
  friend Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
  friend Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
  friend Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

  std::string to_string(int significant = 10) const;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const Interval& x);

double round_down(double v);
double round_up(double v);

Interval sqrt(const Interval& x);
// Throws DomainError unless x.lo() > 0.
Interval log(const Interval& x);
Interval log1p(const Interval& x);
Interval exp(const Interval& x);
// x > 0 required; computed as exp(e * log x).
Interval pow(const Interval& x, const Interval& e);
Interval pow(const Interval& x, int n);
Interval square(const Interval& x);
Interval abs(const Interval& x);

enum class IntervalOp { add, sub, mul, div, log, exp, pow, sqrt };
// Dispatcher over the primitive operations; unary ops ignore `b`.
Interval apply(IntervalOp op, const Interval& a, const Interval& b = Interval(0.0));

}  // namespace bvw
