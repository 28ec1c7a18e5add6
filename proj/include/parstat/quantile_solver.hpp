#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "parstat/fourier_kernels.hpp"
#include "parstat/rescale.hpp"
#include "parstat/sep_core.hpp"
#include "parstat/shard_engine.hpp"

namespace parstat {

struct QuantileRequest {
  std::vector<double> p_list;
  FourierOrder order{256};
  std::size_t grid_size = 4096;
  double refine_tol = 1e-10;
};

/// Throws ConfigError / DomainError for an unusable request.
void validate(const QuantileRequest& req);

struct QuantileSolution {
  double p = 0.0;
  double theta_hat = 0.0;            ///< minimiser on the rescaled [0, 1] axis
  double value = 0.0;                ///< objective at theta_hat
  double derivative_residual = 0.0;  ///< |F_J(theta_hat) - p|
  double unscaled = 0.0;             ///< theta_hat mapped back to data units
  bool boundary_flag = false;        ///< theta_hat is 0 or 1
};

/// Mean over the data of the approximate check loss rho_{J,p}(x_i - theta),
/// evaluated from the trigonometric moments alone:
///
///   (pi/4 - (p - 1/2) theta) + (p - 1/2) mean
///     - (2/pi) sum_j [C_{2j-1} cos((2j-1)theta) + C_{2j} sin((2j-1)theta)] / (2j-1)^2
double objective(double theta, double p, const TrigMomentSummary& tm);

/// Fourier-smoothed empirical CDF
///   F_J(theta) = 1/2 - (2/pi) sum_j [C_{2j} cos((2j-1)theta) - C_{2j-1} sin((2j-1)theta)] / (2j-1).
double smoothed_cdf(double theta, const TrigMomentSummary& tm);

/// d objective / d theta = F_J(theta) - p.
inline double objective_derivative(double theta, double p, const TrigMomentSummary& tm) {
  return smoothed_cdf(theta, tm) - p;
}

/// Minimises the objective for every p in the request using one summary.
///
/// Each p is bracketed by a global scan over a uniform grid of
/// `grid_size` points on [0, 1] (ties go to the smallest theta) and then
/// refined by bisection on the derivative inside the bracketing cell.
/// Different p values are solved concurrently on `workers` threads.
std::vector<QuantileSolution> solve_quantiles(const QuantileRequest& req,
                                              const TrigMomentSummary& tm,
                                              const RescaleMap& scale,
                                              std::size_t workers = 1);

/// Smallest sample value theta with empirical CDF F(theta) >= p.
double exact_quantile(std::span<const double> values, double p);

/// Smallest k in 1..n with k / n >= p, computed without trusting ceil(p*n).
std::size_t order_statistic_rank(std::size_t n, double p);

struct BinningEstimate {
  double value = 0.0;
  std::size_t bin = 0;  ///< 1-based bin where the cumulative fraction crosses p
};

/// Histogram quantile: first bin whose cumulative count reaches p * n,
/// linearly interpolated inside that bin by the shortfall.
BinningEstimate binning_quantile_detail(const BinCountSummary& bc, double p);

inline double binning_quantile(const BinCountSummary& bc, double p) {
  return binning_quantile_detail(bc, p).value;
}

/// Timings of the full Fourier quantile pipeline.
struct QuantileTimings {
  double map_ms = 0.0;
  double reduce_ms = 0.0;
  double solve_ms = 0.0;
};

struct QuantileEstimate {
  RescaleMap scale = RescaleMap::unit();
  std::vector<QuantileSolution> solutions;
};

/// Full pipeline on raw data: a min/max pass, rescaling onto [0, 1], one
/// trigonometric-moment pass and the per-p solves. Constant data returns the
/// constant for every p.
QuantileEstimate estimate_quantiles(const ShardedDataset& ds, const QuantileRequest& req,
                                    const ExecOptions& opts = {},
                                    QuantileTimings* timings = nullptr);

}  // namespace parstat
