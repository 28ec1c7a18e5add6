#include "parstat/local_regression.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "parstat/quantile_solver.hpp"

namespace parstat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPivotRatio = 1e-12;

std::string describe_x(const char* what, double x) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " at x = " << x;
  return msg.str();
}

// d_j = (C_{2j-1} cos((2j-1)x) + C_{2j} sin((2j-1)x)) / (2j-1)
std::vector<double> bandwidth_coefficients(double x, std::span<const double> c_bar) {
  const std::size_t order = c_bar.size() / 2;
  std::vector<double> d(order);
  OddHarmonics hx(x);
  for (std::size_t j = 0; j < order; ++j, hx.advance())
    d[j] = (c_bar[2 * j] * hx.cos() + c_bar[2 * j + 1] * hx.sin()) /
           static_cast<double>(2 * j + 1);
  return d;
}

double interval_mass(double h, std::span<const double> d) {
  if (h == 0.0) return 0.0;
  OddHarmonics hh(h);
  CompensatedSum acc;
  for (std::size_t j = 0; j < d.size(); ++j, hh.advance()) acc.add(d[j] * hh.sin());
  return (4.0 / kPi) * acc.value();
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace

void validate(const LowessConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (cfg.eval_points.empty()) throw ConfigError("no evaluation points");
  for (double x : cfg.eval_points)
    if (!(x > 0.0 && x < 1.0)) throw DomainError("evaluation points must lie in (0, 1)");
  if (cfg.root_grid < 4 * cfg.order.value())
    throw ConfigError("root grid must have at least 4 J points");
  if (!(cfg.refine_tol > 0.0)) throw ConfigError("refine tolerance must be positive");
}

double f_hat_Jx(double h, double x, const TrigMomentSummary& tm) {
  return interval_mass(h, bandwidth_coefficients(x, tm.c_bar()));
}

BandwidthSolution solve_bandwidth(double x, const LowessConfig& cfg,
                                  const TrigMomentSummary& tm) {
  if (cfg.root_grid < 4 * cfg.order.value())
    throw ConfigError("root grid must have at least 4 J points");
  const auto d = bandwidth_coefficients(x, tm.c_bar());
  auto g = [&](double h) { return interval_mass(h, d) - cfg.alpha; };

  const std::size_t n = cfg.root_grid;
  auto grid = [n](std::size_t k) { return static_cast<double>(k) / static_cast<double>(n); };

  std::size_t roots = 0;
  std::optional<std::pair<double, double>> first;
  double prev_h = 0.0;
  double prev = g(0.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double h = grid(k);
    const double cur = g(h);
    const int sp = sign_of(prev);
    const int sc = sign_of(cur);
    if ((sp * sc < 0) || (sc == 0 && sp != 0)) {
      ++roots;
      if (!first) first.emplace(prev_h, h);
    }
    prev = cur;
    prev_h = h;
  }
  if (!first) throw NoSolutionError(describe_x("bandwidth equation has no root", x), x);

  auto [lo, hi] = *first;
  const int s_lo = sign_of(g(lo));
  if (g(hi) != 0.0) {
    while (hi - lo >= cfg.refine_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sign_of(g(mid)) == s_lo)
        lo = mid;
      else
        hi = mid;
    }
  }
  const double h_hat = g(hi) == 0.0 ? hi : 0.5 * (lo + hi);
  return {x, h_hat, std::abs(g(h_hat)), roots};
}

double exact_bandwidth(std::span<const double> values, double x, double alpha) {
  if (values.empty()) throw EmptyDatasetError("bandwidth of an empty sample");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  std::vector<double> dist(values.size());
  std::transform(values.begin(), values.end(), dist.begin(),
                 [x](double v) { return std::abs(v - x); });
  const std::size_t k = order_statistic_rank(dist.size(), alpha);
  auto nth = dist.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(dist.begin(), nth, dist.end());
  return *nth;
}

double triweight(double u) {
  if (u < 0.0 || std::isnan(u)) throw DomainError("tri-weight argument must be >= 0");
  if (u >= 1.0) return 0.0;
  const double v = 1.0 - u * u * u;
  return v * v * v;
}

LocalMoments merge_local(const LocalMoments& a, const LocalMoments& b) {
  if (a.s.size() != b.s.size() || a.t.size() != b.t.size())
    throw ShapeError("cannot merge local moments of different degree");
  LocalMoments out = a;
  for (std::size_t m = 0; m < out.s.size(); ++m) out.s[m].merge(b.s[m]);
  for (std::size_t k = 0; k < out.t.size(); ++k) out.t[k].merge(b.t[k]);
  out.wyy.merge(b.wyy);
  out.weight_count += b.weight_count;
  return out;
}

LocalMoments LocalMomentKernel::map(std::span<const Point> block) const {
  LocalMoments m;
  m.s.resize(2 * degree + 1);
  m.t.resize(degree + 1);
  for (const Point& p : block) {
    const double d = p.x - x;
    const double w = triweight(std::abs(d) / h);
    if (w == 0.0) continue;
    ++m.weight_count;
    double power = w;
    for (std::size_t k = 0; k <= 2 * degree; ++k, power *= d) {
      m.s[k].add(power);
      if (k <= degree) m.t[k].add(power * p.y);
    }
    m.wyy.add(w * p.y * p.y);
  }
  return m;
}

LocalFit solve_local_system(double x, double h, std::size_t degree, const LocalMoments& m) {
  const std::size_t dim = degree + 1;
  LocalFit fit;
  fit.x = x;
  fit.h = h;
  fit.effective_weight_count = m.weight_count;
  fit.a_mat.resize(dim * dim);
  fit.a_vec.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) fit.a_mat[i * dim + j] = m.s[i + j].value();
    fit.a_vec[i] = m.t[i].value();
  }
  if (m.weight_count < dim)
    throw DegenerateNeighborhoodError(
        describe_x("fewer weighted points than polynomial coefficients", x), x);

  // symmetric diagonal scaling, then elimination with partial pivoting
  std::vector<double> scale(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double diag = fit.a_mat[i * dim + i];
    if (!(diag > 0.0))
      throw DegenerateNeighborhoodError(describe_x("singular local system", x), x);
    scale[i] = 1.0 / std::sqrt(diag);
  }
  std::vector<double> a(dim * dim);
  std::vector<double> b(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j)
      a[i * dim + j] = scale[i] * fit.a_mat[i * dim + j] * scale[j];
    b[i] = scale[i] * fit.a_vec[i];
  }

  double max_pivot = 0.0;
  double min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < dim; ++r)
      if (std::abs(a[r * dim + col]) > std::abs(a[piv * dim + col])) piv = r;
    if (piv != col) {
      for (std::size_t j = 0; j < dim; ++j) std::swap(a[col * dim + j], a[piv * dim + j]);
      std::swap(b[col], b[piv]);
    }
    const double pivot = a[col * dim + col];
    max_pivot = std::max(max_pivot, std::abs(pivot));
    min_pivot = std::min(min_pivot, std::abs(pivot));
    if (!(min_pivot >= kPivotRatio * max_pivot) || pivot == 0.0)
      throw DegenerateNeighborhoodError(describe_x("near-singular local system", x), x);
    for (std::size_t r = col + 1; r < dim; ++r) {
      const double f = a[r * dim + col] / pivot;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < dim; ++j) a[r * dim + j] -= f * a[col * dim + j];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> y(dim);
  for (std::size_t i = dim; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < dim; ++j) acc -= a[i * dim + j] * y[j];
    y[i] = acc / a[i * dim + i];
  }
  fit.beta.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) fit.beta[i] = scale[i] * y[i];
  fit.mu_hat = fit.beta[0];
  return fit;
}

namespace {

LocalFit local_fit_timed(double x, double h, const PairedDataset& data, std::size_t degree,
                         const ExecOptions& opts, PhaseTimings* timings) {
  if (!(h > 0.0)) throw DomainError("bandwidth must be positive");
  const LocalMoments m = map_reduce(data, LocalMomentKernel{x, h, degree}, opts, timings);
  return solve_local_system(x, h, degree, m);
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

}  // namespace

LocalFit local_fit(double x, double h, const PairedDataset& data, std::size_t degree,
                   const ExecOptions& opts) {
  return local_fit_timed(x, h, data, degree, opts, nullptr);
}

std::vector<PointPrediction> predict(const LowessConfig& cfg, const PairedDataset& data,
                                     BandwidthMethod method, const ExecOptions& opts,
                                     LowessTimings* timings) {
  validate(cfg);
  LowessTimings local;
  std::optional<TrigMomentSummary> tm;
  std::vector<double> xs;
  if (method == BandwidthMethod::fourier) {
    PhaseTimings t;
    tm.emplace(map_reduce(data, TrigMomentKernel{cfg.order, std::nullopt}, opts, &t));
    local.map_ms += t.map_ms;
    local.reduce_ms += t.reduce_ms;
  } else {
    xs.reserve(data.total_count());
    for (const Point& p : data.values()) xs.push_back(p.x);
  }

  std::vector<PointPrediction> out;
  out.reserve(cfg.eval_points.size());
  for (double x : cfg.eval_points) {
    PointPrediction pred;
    pred.x = x;
    pred.method = method;
    try {
      const auto t0 = std::chrono::steady_clock::now();
      if (method == BandwidthMethod::fourier) {
        pred.bandwidth = solve_bandwidth(x, cfg, *tm);
      } else {
        const double h = exact_bandwidth(xs, x, cfg.alpha);
        pred.bandwidth = BandwidthSolution{x, h, 0.0, 1};
      }
      local.solve_ms += elapsed_ms(t0);
      if (!(pred.bandwidth->h_hat > 0.0))
        throw DegenerateNeighborhoodError(describe_x("zero-width neighbourhood", x), x);
      PhaseTimings t;
      const auto t1 = std::chrono::steady_clock::now();
      pred.fit = local_fit_timed(x, pred.bandwidth->h_hat, data, cfg.degree, opts, &t);
      local.map_ms += t.map_ms;
      local.reduce_ms += t.reduce_ms;
      local.solve_ms += elapsed_ms(t1) - t.map_ms - t.reduce_ms;
    } catch (const NoSolutionError& e) {
      pred.failure = PointPrediction::Failure::no_solution;
      pred.error = e.what();
    } catch (const DegenerateNeighborhoodError& e) {
      pred.failure = PointPrediction::Failure::degenerate;
      pred.error = e.what();
    }
    out.push_back(std::move(pred));
  }
  if (timings) *timings = local;
  return out;
}

}  // namespace parstat
