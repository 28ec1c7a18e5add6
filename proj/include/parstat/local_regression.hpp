#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parstat/compensated_sum.hpp"
#include "parstat/fourier_kernels.hpp"
#include "parstat/sep_core.hpp"
#include "parstat/shard_engine.hpp"

namespace parstat {

struct LowessConfig {
  double alpha = 0.3;          ///< fraction of observations in each neighbourhood
  std::size_t degree = 1;      ///< local polynomial degree K
  FourierOrder order{256};
  std::vector<double> eval_points;
  std::size_t root_grid = 2048;
  double refine_tol = 1e-8;
};

/// Throws ConfigError / DomainError for an unusable configuration,
/// including root_grid < 4 J.
void validate(const LowessConfig& cfg);

struct BandwidthSolution {
  double x = 0.0;
  double h_hat = 0.0;
  double residual = 0.0;       ///< |F_{J,x}(h_hat) - alpha|
  std::size_t root_count = 0;  ///< sign-change brackets found on the grid
};

struct LocalFit {
  double x = 0.0;
  double h = 0.0;
  std::vector<double> beta;   ///< K+1 coefficients in powers of (x_i - x)
  double mu_hat = 0.0;        ///< beta[0]
  std::vector<double> a_mat;  ///< (K+1) x (K+1), row-major
  std::vector<double> a_vec;  ///< K+1
  std::uint64_t effective_weight_count = 0;
};

/// Fourier approximation of the fraction of data within distance h of x:
///   (4/pi) sum_j (C_{2j-1} cos((2j-1)x) + C_{2j} sin((2j-1)x)) sin((2j-1)h) / (2j-1).
double f_hat_Jx(double h, double x, const TrigMomentSummary& tm);

/// Smallest h in (0, 1) solving f_hat_Jx(h, x) = alpha. Scans a uniform grid
/// of cfg.root_grid points, counts every sign change, then bisects the first
/// bracket to cfg.refine_tol. Throws NoSolutionError when no bracket exists.
BandwidthSolution solve_bandwidth(double x, const LowessConfig& cfg,
                                  const TrigMomentSummary& tm);

/// Distance from x to its ceil(alpha n)-th nearest neighbour.
double exact_bandwidth(std::span<const double> values, double x, double alpha);

/// Tukey tri-weight (1 - u^3)^3 on [0, 1), zero beyond. Negative u throws.
double triweight(double u);

/// Weighted power sums around x: s_m = sum W_i (x_i - x)^m for m <= 2K,
/// t_k = sum W_i y_i (x_i - x)^k for k <= K, and sum W_i y_i^2.
struct LocalMoments {
  std::vector<CompensatedSum> s;
  std::vector<CompensatedSum> t;
  CompensatedSum wyy;
  std::uint64_t weight_count = 0;
};

LocalMoments merge_local(const LocalMoments& a, const LocalMoments& b);

struct LocalMomentKernel {
  using summary_type = LocalMoments;
  static constexpr KernelId id = KernelId::local_moments;
  double x = 0.0;
  double h = 0.0;
  std::size_t degree = 1;
  std::size_t arity() const noexcept { return 3 * degree + 3; }
  LocalMoments map(std::span<const Point> block) const;
  LocalMoments merge(const LocalMoments& a, const LocalMoments& b) const {
    return merge_local(a, b);
  }
};

/// Weighted degree-K polynomial fit at x with tri-weights of half-width h.
/// The normal equations are accumulated per shard and merged, then solved by
/// pivoted elimination. Throws DegenerateNeighborhoodError when fewer than
/// K+1 points carry weight or the system is numerically singular.
LocalFit local_fit(double x, double h, const PairedDataset& data, std::size_t degree,
                   const ExecOptions& opts = {});

/// Solves the (K+1) system from already merged moments.
LocalFit solve_local_system(double x, double h, std::size_t degree, const LocalMoments& m);

enum class BandwidthMethod { fourier, exact };

struct PointPrediction {
  double x = 0.0;
  BandwidthMethod method = BandwidthMethod::fourier;
  std::optional<BandwidthSolution> bandwidth;
  std::optional<LocalFit> fit;
  std::string error;  ///< empty on success
  enum class Failure { none, no_solution, degenerate } failure = Failure::none;

  bool ok() const noexcept { return failure == Failure::none; }
};

struct LowessTimings {
  double map_ms = 0.0;
  double reduce_ms = 0.0;
  double solve_ms = 0.0;  ///< bandwidth search plus the linear solves
};

/// Fits every evaluation point: bandwidth from the trigonometric moments of
/// the x values (or the exact nearest-neighbour distance), then local_fit.
/// Per-point failures are recorded in the result rather than thrown.
std::vector<PointPrediction> predict(const LowessConfig& cfg, const PairedDataset& data,
                                     BandwidthMethod method = BandwidthMethod::fourier,
                                     const ExecOptions& opts = {},
                                     LowessTimings* timings = nullptr);

}  // namespace parstat
