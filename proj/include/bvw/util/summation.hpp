// summation.hpp
// Neumaier-compensated accumulators. Every long floating sum in the
// workbench goes through one of these so that identity tests can run at
// 1e-12 relative tolerance.

#pragma once

#include <cmath>
#include <complex>

namespace bvw {

class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double v) {
    add(v);
    return *this;
  }

  // Merges another partial sum; used when blocks are reduced in order.
  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }

  double value() const { return sum_ + comp_; }
  // The unevaluated pair; exact when every rounding error fits in comp_.
  double head() const { return sum_; }
  double tail() const { return comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  void add_scaled(std::complex<double> unit, double weight) {
    re_.add(unit.real() * weight);
    im_.add(unit.imag() * weight);
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace bvw
