#pragma once

#include <cmath>

namespace parstat {

/// Double-double accumulator built on the error-free TwoSum transform.
///
/// Both `add` and `merge` carry the rounding error of every addition in a
/// second word, so partial sums produced on different shards and folded in
/// any order round to the same double unless the total cancels to within
/// ~1e-30 of the summand scale.
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  explicit constexpr CompensatedSum(double v) : hi_(v) {}

  void add(double v) noexcept {
    double s, e;
    two_sum(hi_, v, s, e);
    hi_ = s;
    lo_ += e;
  }

  void merge(const CompensatedSum& other) noexcept {
    double s, e;
    two_sum(hi_, other.hi_, s, e);
    e += lo_ + other.lo_;
    // renormalise so hi_ holds the rounded total
    fast_two_sum(s, e, hi_, lo_);
  }

  CompensatedSum& operator+=(double v) noexcept {
    add(v);
    return *this;
  }
  CompensatedSum& operator+=(const CompensatedSum& o) noexcept {
    merge(o);
    return *this;
  }

  double value() const noexcept { return hi_ + lo_; }
  double hi() const noexcept { return hi_; }
  double lo() const noexcept { return lo_; }

  friend bool operator==(const CompensatedSum&, const CompensatedSum&) = default;

 private:
  static void two_sum(double a, double b, double& s, double& e) noexcept {
    s = a + b;
    const double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
  }
  static void fast_two_sum(double a, double b, double& s, double& e) noexcept {
    if (std::abs(a) < std::abs(b)) {
      const double t = a;
      a = b;
      b = t;
    }
    s = a + b;
    e = b - (s - a);
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

}  // namespace parstat
