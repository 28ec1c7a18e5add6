#include "parstat/quantile_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "parstat/compensated_sum.hpp"
#include "parstat/parallel.hpp"

namespace parstat {

namespace {

constexpr double kPi = std::numbers::pi;

// sum_j [C_{2j-1} cos((2j-1)t) + C_{2j} sin((2j-1)t)] / (2j-1)^2
double cosine_part(double theta, std::span<const double> c_bar) {
  OddHarmonics h(theta);
  CompensatedSum acc;
  const std::size_t order = c_bar.size() / 2;
  for (std::size_t j = 0; j < order; ++j, h.advance()) {
    const double k = static_cast<double>(2 * j + 1);
    acc.add((c_bar[2 * j] * h.cos() + c_bar[2 * j + 1] * h.sin()) / (k * k));
  }
  return acc.value();
}

// sum_j [C_{2j} cos((2j-1)t) - C_{2j-1} sin((2j-1)t)] / (2j-1)
double sine_part(double theta, std::span<const double> c_bar) {
  OddHarmonics h(theta);
  CompensatedSum acc;
  const std::size_t order = c_bar.size() / 2;
  for (std::size_t j = 0; j < order; ++j, h.advance()) {
    const double k = static_cast<double>(2 * j + 1);
    acc.add((c_bar[2 * j + 1] * h.cos() - c_bar[2 * j] * h.sin()) / k);
  }
  return acc.value();
}

double assemble_objective(double theta, double p, double mean, double cos_part) {
  return (kPi / 4.0 - (p - 0.5) * theta) + (p - 0.5) * mean - (2.0 / kPi) * cos_part;
}

double assemble_cdf(double sin_part) { return 0.5 - (2.0 / kPi) * sin_part; }

double grid_point(std::size_t k, std::size_t grid_size) {
  if (k + 1 == grid_size) return 1.0;
  return static_cast<double>(k) / static_cast<double>(grid_size - 1);
}

QuantileSolution solve_one(double p, const QuantileRequest& req, double mean,
                           std::span<const double> c_bar,
                           std::span<const double> grid_cos_part, const RescaleMap& scale) {
  const std::size_t g = req.grid_size;
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g; ++k) {
    const double v = assemble_objective(grid_point(k, g), p, mean, grid_cos_part[k]);
    if (v < best_value) {  // strict: equal minima keep the smallest theta
      best_value = v;
      best = k;
    }
  }

  auto deriv = [&](double t) { return assemble_cdf(sine_part(t, c_bar)) - p; };

  double theta = grid_point(best, g);
  const double d_best = deriv(theta);
  double lo = theta, hi = theta;
  bool bracketed = false;
  if (d_best < 0.0 && best + 1 < g) {
    lo = theta;
    hi = grid_point(best + 1, g);
    bracketed = deriv(hi) > 0.0;
  } else if (d_best > 0.0 && best > 0) {
    lo = grid_point(best - 1, g);
    hi = theta;
    bracketed = deriv(lo) < 0.0;
  }
  if (bracketed) {
    while (hi - lo >= req.refine_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (deriv(mid) < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    const double refined = 0.5 * (lo + hi);
    const double refined_value =
        assemble_objective(refined, p, mean, cosine_part(refined, c_bar));
    if (refined_value <= best_value) {
      theta = refined;
      best_value = refined_value;
    }
  }

  QuantileSolution sol;
  sol.p = p;
  sol.theta_hat = theta;
  sol.value = best_value;
  sol.derivative_residual = std::abs(deriv(theta));
  sol.unscaled = scale.backward(theta);
  sol.boundary_flag = theta == 0.0 || theta == 1.0;
  return sol;
}

}  // namespace

void validate(const QuantileRequest& req) {
  if (req.grid_size < 8) throw ConfigError("quantile grid needs at least 8 points");
  if (!(req.refine_tol > 0.0)) throw ConfigError("refine tolerance must be positive");
  if (req.p_list.empty()) throw ConfigError("no probabilities requested");
  for (double p : req.p_list)
    if (!(p > 0.0 && p < 1.0)) throw DomainError("probabilities must lie in (0, 1)");
}

double objective(double theta, double p, const TrigMomentSummary& tm) {
  const auto c_bar = tm.c_bar();
  return assemble_objective(theta, p, tm.mean(), cosine_part(theta, c_bar));
}

double smoothed_cdf(double theta, const TrigMomentSummary& tm) {
  return assemble_cdf(sine_part(theta, tm.c_bar()));
}

std::vector<QuantileSolution> solve_quantiles(const QuantileRequest& req,
                                              const TrigMomentSummary& tm,
                                              const RescaleMap& scale,
                                              std::size_t workers) {
  validate(req);
  const auto c_bar = tm.c_bar();
  const double mean = tm.mean();

  // the cosine series does not depend on p, so one grid serves every request
  std::vector<double> grid_cos_part(req.grid_size);
  parallel_for(req.grid_size, workers, [&](std::size_t k) {
    grid_cos_part[k] = cosine_part(grid_point(k, req.grid_size), c_bar);
  });

  std::vector<QuantileSolution> out(req.p_list.size());
  parallel_for(out.size(), workers, [&](std::size_t i) {
    out[i] = solve_one(req.p_list[i], req, mean, c_bar, grid_cos_part, scale);
  });
  return out;
}

std::size_t order_statistic_rank(std::size_t n, double p) {
  const double nd = static_cast<double>(n);
  double guess = std::ceil(p * nd);
  std::size_t k = guess < 1.0 ? 1 : std::min(n, static_cast<std::size_t>(guess));
  while (k > 1 && static_cast<double>(k - 1) / nd >= p) --k;
  while (k < n && static_cast<double>(k) / nd < p) ++k;
  return k;
}

double exact_quantile(std::span<const double> values, double p) {
  if (values.empty()) throw EmptyDatasetError("quantile of an empty sample");
  std::vector<double> work(values.begin(), values.end());
  const std::size_t k = order_statistic_rank(work.size(), p);
  auto nth = work.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(work.begin(), nth, work.end());
  return *nth;
}

BinningEstimate binning_quantile_detail(const BinCountSummary& bc, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("probability must lie in (0, 1)");
  const std::uint64_t n = bc.total();
  if (n == 0) throw EmptyDatasetError("histogram holds no data");
  const double target = p * static_cast<double>(n);
  std::uint64_t before = 0;
  for (std::size_t r = 0; r < bc.counts.size(); ++r) {
    const std::uint64_t c = bc.counts[r];
    const std::uint64_t after = before + c;
    if (c > 0 && static_cast<double>(after) >= target) {
      const double shortfall = target - static_cast<double>(before);
      const double lo = bc.edges[r];
      const double hi = bc.edges[r + 1];
      if (shortfall >= static_cast<double>(c)) return {hi, r + 1};
      return {lo + (hi - lo) * (shortfall / static_cast<double>(c)), r + 1};
    }
    before = after;
  }
  return {bc.edges.back(), bc.counts.size()};
}

QuantileEstimate estimate_quantiles(const ShardedDataset& ds, const QuantileRequest& req,
                                    const ExecOptions& opts, QuantileTimings* timings) {
  using Clock = std::chrono::steady_clock;
  validate(req);
  PhaseTimings range_t, trig_t;
  const MomentSummary range = map_reduce(ds, MomentKernel{}, opts, &range_t);

  QuantileEstimate est;
  double solve_ms = 0.0;
  if (range.min == range.max) {
    est.scale = RescaleMap(range.min - 0.5, range.min + 0.5);
    for (double p : req.p_list)
      est.solutions.push_back({p, 0.5, 0.0, 0.0, range.min, false});
  } else {
    est.scale = RescaleMap(range.min, range.max);
    const TrigMomentSummary tm =
        map_reduce(ds, TrigMomentKernel{req.order, est.scale}, opts, &trig_t);
    const auto t0 = Clock::now();
    est.solutions = solve_quantiles(req, tm, est.scale, opts.workers);
    solve_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  }
  if (timings) {
    timings->map_ms = range_t.map_ms + trig_t.map_ms;
    timings->reduce_ms = range_t.reduce_ms + trig_t.reduce_ms;
    timings->solve_ms = solve_ms;
  }
  return est;
}

}  // namespace parstat
