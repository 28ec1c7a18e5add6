#pragma once

#include "parstat/error.hpp"

namespace parstat {

/// Affine map of [lo, hi] onto [0, 1].
class RescaleMap {
 public:
  RescaleMap(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo < hi)) throw DomainError("rescale bounds need lo < hi");
  }

  /// Identity map of the unit interval.
  static RescaleMap unit() { return RescaleMap(0.0, 1.0); }

  double forward(double x) const noexcept { return (x - lo_) / (hi_ - lo_); }
  double backward(double u) const noexcept { return lo_ + (hi_ - lo_) * u; }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  friend bool operator==(const RescaleMap&, const RescaleMap&) = default;

 private:
  double lo_;
  double hi_;
};

}  // namespace parstat
