#include "parstat/datagen.hpp"

#include <cmath>
#include <numbers>

#include "parstat/error.hpp"

namespace parstat {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
  u128 m = static_cast<u128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double SplitMix64::normal() noexcept {
  const double u1 = 1.0 - unit();
  const double u2 = unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

// Lower-tail inverse (p <= 1/2): Acklam's rational approximation, relative
// error below 1.15e-9, then one Halley correction.
double lower_inverse_normal(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("inverse normal CDF needs p in (0, 1)");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return lower_inverse_normal(p);
  return -lower_inverse_normal(1.0 - p);
}

namespace {

// Phi^-1(i/(N+1)) evaluated from the lower tail on both sides of the median,
// so entries i and N+1-i are exact negatives.
double normal_grid_raw(std::size_t n, std::size_t i) {
  const double denom = static_cast<double>(n + 1);
  if (2 * i == n + 1) return 0.0;
  if (2 * i < n + 1) return lower_inverse_normal(static_cast<double>(i) / denom);
  return -lower_inverse_normal(static_cast<double>(n + 1 - i) / denom);
}

}  // namespace

double grid_value(const GridSpec& spec, std::size_t i) {
  if (spec.n == 0) throw ConfigError("grid size must be positive");
  if (i < 1 || i > spec.n) throw DomainError("grid index out of range");
  if (spec.distribution == GridDistribution::uniform)
    return static_cast<double>(i) / static_cast<double>(spec.n + 1);
  const double delta = normal_grid_raw(spec.n, spec.n);
  if (delta == 0.0) return 0.5;  // N = 1
  return (normal_grid_raw(spec.n, i) + delta) / (2.0 * delta);
}

std::vector<double> sorted_grid(const GridSpec& spec) {
  if (spec.n == 0) throw ConfigError("grid size must be positive");
  std::vector<double> v(spec.n);
  for (std::size_t i = 1; i <= spec.n; ++i) v[i - 1] = grid_value(spec, i);
  return v;
}

std::vector<double> generate(const GridSpec& spec) {
  std::vector<double> v = sorted_grid(spec);
  SplitMix64 rng(spec.seed);
  seeded_shuffle(v, rng);
  return v;
}

double mean_function(MeanFunction mu, double x) {
  switch (mu) {
    case MeanFunction::linear: return 2.0 * x;
    case MeanFunction::sine: return std::sin(2.0 * std::numbers::pi * x);
  }
  return 0.0;
}

std::vector<Point> generate_regression(const GridSpec& spec, MeanFunction mu,
                                       double noise_sd) {
  if (!(noise_sd >= 0.0)) throw DomainError("noise standard deviation must be >= 0");
  const std::vector<double> xs = generate(spec);
  SplitMix64 noise(spec.seed ^ 0x5DEECE66DULL);
  std::vector<Point> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double z = noise.normal();
    out[i] = {xs[i], mean_function(mu, xs[i]) + noise_sd * z};
  }
  return out;
}

}  // namespace parstat
