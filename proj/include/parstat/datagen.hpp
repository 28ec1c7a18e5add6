#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "parstat/shard_engine.hpp"

namespace parstat {

/// SplitMix64 generator. Every step:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// The derived draws below are fixed too, so generated fixtures are
/// reproducible across platforms and implementations.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) by Lemire's multiply-and-reject method:
  /// m = next() * bound as a 128-bit product; while low64(m) < (2^64 - bound)
  /// mod bound draw again; return high64(m).
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// (next() >> 11) * 2^-53, a double in [0, 1).
  double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal draw by Box-Muller on u1 = 1 - unit(), u2 = unit():
  /// sqrt(-2 ln u1) cos(2 pi u2). One draw per call.
  double normal() noexcept;

 private:
  std::uint64_t state_;
};

/// In-place Fisher-Yates: for i = n-1 down to 1, swap v[i] with v[below(i+1)].
template <class T>
void seeded_shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

enum class GridDistribution { uniform, normal };

struct GridSpec {
  std::size_t n = 1;
  GridDistribution distribution = GridDistribution::uniform;
  std::uint64_t seed = 0;
};

/// Inverse standard normal CDF on (0, 1). Rational approximation followed by
/// one Halley step against Phi; p and 1 - p give exactly negated results
/// whenever 1 - (1 - p) == p in floating point.
double inverse_normal_cdf(double p);

/// Standard normal CDF.
double normal_cdf(double x);

/// Grid value i (1-based) before shuffling: i/(N+1) for uniform data, or
/// (Phi^-1(i/(N+1)) + delta) / (2 delta) with delta = Phi^-1(N/(N+1)) for
/// normal data. The normal grid is built symmetrically so the ends map to
/// exactly 0 and 1.
double grid_value(const GridSpec& spec, std::size_t i);

/// The unshuffled grid, ascending.
std::vector<double> sorted_grid(const GridSpec& spec);

/// The grid in seeded Fisher-Yates order.
std::vector<double> generate(const GridSpec& spec);

enum class MeanFunction { linear, sine };

/// mu(x) = 2x for linear, sin(2 pi x) for sine.
double mean_function(MeanFunction mu, double x);

/// x from generate(spec); y = mu(x) + noise_sd * z with standard normal z
/// drawn from a second SplitMix64 stream seeded with seed ^ 0x5DEECE66D.
std::vector<Point> generate_regression(const GridSpec& spec, MeanFunction mu,
                                       double noise_sd);

}  // namespace parstat
