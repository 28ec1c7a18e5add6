#include "parstat/fourier_kernels.hpp"

#include "parstat/compensated_sum.hpp"

namespace parstat {

namespace {

constexpr double kPi = std::numbers::pi;

// sum_{j<=J} cos((2j-1)z) / (2j-1)^2
double cosine_square_series(double z, std::size_t order) {
  OddHarmonics h(z);
  CompensatedSum acc;
  for (std::size_t j = 1; j <= order; ++j, h.advance()) {
    const double k = static_cast<double>(2 * j - 1);
    acc.add(h.cos() / (k * k));
  }
  return acc.value();
}

// sum_{j<=J} sin((2j-1)z) / (2j-1)
double sine_series(double z, std::size_t order) {
  OddHarmonics h(z);
  CompensatedSum acc;
  for (std::size_t j = 1; j <= order; ++j, h.advance())
    acc.add(h.sin() / static_cast<double>(2 * j - 1));
  return acc.value();
}

}  // namespace

double abs_diff_approx(double x, double theta, FourierOrder order) {
  // cos is even, so evaluate on |x - theta| to make swapping exact
  const double z = std::abs(x - theta);
  return kPi / 2.0 - (4.0 / kPi) * cosine_square_series(z, order.value());
}

double indicator_approx(double x, double theta, FourierOrder order) {
  const double z = x - theta;
  if (z == 0.0) return 0.5;
  return 0.5 - (2.0 / kPi) * sine_series(z, order.value());
}

double check_loss_approx(double z, double p, FourierOrder order) {
  return kPi / 4.0 - (2.0 / kPi) * cosine_square_series(std::abs(z), order.value()) +
         (p - 0.5) * z;
}

double interval_indicator_approx(double x_tilde, double x, double h, FourierOrder order) {
  if (h == 0.0) return 0.0;
  OddHarmonics d(x_tilde - x);
  OddHarmonics w(h);
  CompensatedSum acc;
  for (std::size_t j = 1; j <= order.value(); ++j, d.advance(), w.advance())
    acc.add(d.cos() * w.sin() / static_cast<double>(2 * j - 1));
  return (4.0 / kPi) * acc.value();
}

double odd_inverse_square_tail(FourierOrder order) {
  // Direct ascending-magnitude summation over a block of terms, then the
  // Euler-Maclaurin remainder sum_{j>=M} (2j-1)^-2 ~ 1/(2k) + 1/(2k^2) + 1/(3k^3)
  // with k = 2M-1 (next term is O(k^-5)).
  const std::size_t first = order.value() + 1;
  constexpr std::size_t kDirect = std::size_t{1} << 16;
  const std::size_t stop = first + kDirect;
  const double k = static_cast<double>(2 * stop - 1);
  CompensatedSum acc;
  acc.add(1.0 / (2.0 * k) + 1.0 / (2.0 * k * k) + 1.0 / (3.0 * k * k * k));
  for (std::size_t j = stop; j-- > first;) {
    const double odd = static_cast<double>(2 * j - 1);
    acc.add(1.0 / (odd * odd));
  }
  return acc.value();
}

}  // namespace parstat
