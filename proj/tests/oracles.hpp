// Independent reference computations used by the tests. Nothing here calls
// into the library's numerical code: sums run in long double with one
// transcendental call per term.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace oracle {

using ld = long double;
inline constexpr ld pi = std::numbers::pi_v<ld>;

inline std::vector<double> uniform_values(std::mt19937_64& rng, std::size_t n, double lo = 0.0,
                                          double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

/// Random composition of n into r positive parts.
inline std::vector<std::size_t> random_sizes(std::mt19937_64& rng, std::size_t n, std::size_t r) {
  std::vector<std::size_t> cuts(n - 1);
  for (std::size_t i = 0; i < cuts.size(); ++i) cuts[i] = i + 1;
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(r - 1);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::size_t> sizes;
  std::size_t prev = 0;
  for (auto c : cuts) {
    sizes.push_back(c - prev);
    prev = c;
  }
  sizes.push_back(n - prev);
  return sizes;
}

inline ld sum(std::span<const double> v) {
  ld s = 0;
  for (double x : v) s += x;
  return s;
}

inline double mean(std::span<const double> v) {
  return static_cast<double>(sum(v) / static_cast<ld>(v.size()));
}

/// Two-pass unbiased standard deviation.
inline double stddev(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const ld m = sum(v) / static_cast<ld>(v.size());
  ld ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return static_cast<double>(std::sqrt(ss / static_cast<ld>(v.size() - 1)));
}

/// (1/n) sum cos((2j-1)x_i) and (1/n) sum sin((2j-1)x_i), interleaved.
inline std::vector<double> trig_moments(std::span<const double> v, std::size_t J) {
  std::vector<double> out(2 * J);
  for (std::size_t j = 1; j <= J; ++j) {
    const ld k = 2.0L * static_cast<ld>(j) - 1.0L;
    ld c = 0, s = 0;
    for (double x : v) {
      c += std::cos(k * x);
      s += std::sin(k * x);
    }
    out[2 * (j - 1)] = static_cast<double>(c / static_cast<ld>(v.size()));
    out[2 * (j - 1) + 1] = static_cast<double>(s / static_cast<ld>(v.size()));
  }
  return out;
}

/// pi/4 - (2/pi) sum cos((2j-1)z)/(2j-1)^2 + (p - 1/2) z
inline ld rho_J(ld z, ld p, std::size_t J) {
  ld s = 0;
  for (std::size_t j = 1; j <= J; ++j) {
    const ld k = 2.0L * static_cast<ld>(j) - 1.0L;
    s += std::cos(k * z) / (k * k);
  }
  return pi / 4 - 2 / pi * s + (p - 0.5L) * z;
}

/// 1/2 - (2/pi) sum sin((2j-1)z)/(2j-1), the smoothed 1(z < 0).
inline ld indicator_J(ld z, std::size_t J) {
  ld s = 0;
  for (std::size_t j = 1; j <= J; ++j) {
    const ld k = 2.0L * static_cast<ld>(j) - 1.0L;
    s += std::sin(k * z) / k;
  }
  return 0.5L - 2 / pi * s;
}

inline double mean_rho_J(std::span<const double> v, double theta, double p, std::size_t J) {
  ld s = 0;
  for (double x : v) s += rho_J(static_cast<ld>(x) - theta, p, J);
  return static_cast<double>(s / static_cast<ld>(v.size()));
}

/// (1/n) sum [1_J(x_i - x - h) - 1_J(x_i - x + h)]
inline double mean_interval_indicator(std::span<const double> v, double x, double h,
                                      std::size_t J) {
  ld s = 0;
  for (double xi : v)
    s += indicator_J(static_cast<ld>(xi) - x - h, J) - indicator_J(static_cast<ld>(xi) - x + h, J);
  return static_cast<double>(s / static_cast<ld>(v.size()));
}

/// sum_{j > J} (2j-1)^-2 by direct summation to 2^24 terms plus the integral
/// bound of what remains.
inline double odd_tail(std::size_t J) {
  const std::size_t stop = J + (std::size_t{1} << 24);
  ld s = 0;
  for (std::size_t j = stop; j > J; --j) {
    const ld k = 2.0L * static_cast<ld>(j) - 1.0L;
    s += 1.0L / (k * k);
  }
  // sum_{j > stop} (2j-1)^-2 ~ 1/(2(2 stop))
  s += 1.0L / (4.0L * static_cast<ld>(stop));
  return static_cast<double>(s);
}

/// erf by its Maclaurin series (|x| small) or continued fraction for erfc.
inline ld erf_series(ld x) {
  ld term = x, s = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    s += term / (2 * n + 1);
  }
  return 2 / std::sqrt(pi) * s;
}

inline ld phi(ld x) { return 0.5L * (1 + erf_series(x / std::sqrt(2.0L))); }

/// Phi^-1(p) for moderate p by Newton iteration on the series CDF.
inline double inverse_phi(double p) {
  ld x = 0;
  for (int it = 0; it < 60; ++it) {
    const ld dens = std::exp(-x * x / 2) / std::sqrt(2 * pi);
    x -= (phi(x) - p) / dens;
  }
  return static_cast<double>(x);
}

/// Smallest sorted value whose empirical CDF reaches p, by counting.
inline double sorted_quantile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  for (std::size_t k = 1; k <= n; ++k)
    if (static_cast<ld>(k) >= static_cast<ld>(p) * static_cast<ld>(n)) return v[k - 1];
  return v.back();
}

/// Distance to the k-th nearest neighbour, k = ceil(alpha n), by full sort.
inline double knn_distance(std::span<const double> v, double x, double alpha) {
  std::vector<double> d;
  for (double xi : v) d.push_back(std::abs(xi - x));
  std::sort(d.begin(), d.end());
  std::size_t k = 1;
  while (static_cast<ld>(k) < static_cast<ld>(alpha) * static_cast<ld>(v.size())) ++k;
  return d[k - 1];
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace oracle
