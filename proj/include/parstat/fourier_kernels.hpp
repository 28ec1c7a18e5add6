#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "parstat/error.hpp"

namespace parstat {

/// Number of odd harmonics kept in a partial Fourier sum.
class FourierOrder {
 public:
  explicit FourierOrder(std::size_t j) : j_(j) {
    if (j_ < 1) throw ConfigError("Fourier order J must be at least 1");
  }
  std::size_t value() const noexcept { return j_; }
  friend bool operator==(FourierOrder, FourierOrder) = default;

 private:
  std::size_t j_;
};

/// Walks cos((2j-1)x), sin((2j-1)x) for j = 1, 2, ... by repeated rotation
/// through the angle 2x, so a whole ladder of J harmonics costs two
/// transcendental pairs instead of 2J.
class OddHarmonics {
 public:
  explicit OddHarmonics(double x) noexcept
      : cos_(std::cos(x)), sin_(std::sin(x)), cos2_(std::cos(2.0 * x)),
        sin2_(std::sin(2.0 * x)) {}

  double cos() const noexcept { return cos_; }
  double sin() const noexcept { return sin_; }

  void advance() noexcept {
    const double c = cos_ * cos2_ - sin_ * sin2_;
    const double s = sin_ * cos2_ + cos_ * sin2_;
    cos_ = c;
    sin_ = s;
  }

 private:
  double cos_, sin_, cos2_, sin2_;
};

/// Partial sum of the Fourier series of |x - theta| on |x - theta| < pi.
double abs_diff_approx(double x, double theta, FourierOrder order);

/// Partial sum of the Fourier series of the indicator 1(x < theta).
/// Returns exactly 1/2 at x == theta, the midpoint of the jump.
double indicator_approx(double x, double theta, FourierOrder order);

/// Partial-sum approximation of the quantile check loss
/// rho_p(z) = |z|/2 + (p - 1/2) z.
double check_loss_approx(double z, double p, FourierOrder order);

/// Exact check loss, for comparison with check_loss_approx.
inline double check_loss(double z, double p) noexcept {
  return 0.5 * std::abs(z) + (p - 0.5) * z;
}

/// Approximation of the interval indicator 1(|x_tilde - x| < h), written in
/// product form. Equals indicator_approx(x_tilde, x + h) -
/// indicator_approx(x_tilde, x - h).
double interval_indicator_approx(double x_tilde, double x, double h, FourierOrder order);

/// Uniform bound on |indicator_approx| over every order.
constexpr double indicator_bound() noexcept { return 4.5 + std::numbers::inv_pi; }

/// Sum over j > J of (2j-1)^-2.
double odd_inverse_square_tail(FourierOrder order);

/// Uniform bound on |abs_diff_approx - |x - theta||.
inline double abs_diff_tail_bound(FourierOrder order) {
  return 4.0 * std::numbers::inv_pi * odd_inverse_square_tail(order);
}

/// Uniform bound on |check_loss_approx - check_loss| (half the modulus bound).
inline double check_loss_tail_bound(FourierOrder order) {
  return 2.0 * std::numbers::inv_pi * odd_inverse_square_tail(order);
}

}  // namespace parstat
