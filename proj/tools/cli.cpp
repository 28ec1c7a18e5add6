#include "cli.hpp"

#include <glob.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "parstat/datagen.hpp"
#include "parstat/local_regression.hpp"
#include "parstat/quantile_solver.hpp"
#include "parstat/sep_core.hpp"
#include "parstat/shard_engine.hpp"

namespace parstat::cli {

namespace fs = std::filesystem;
using nlohmann::json;

json RunReport::to_json() const {
  json t = json::object();
  for (const auto& [k, v] : timings) t[k] = v;
  return {{"command", command}, {"params", params}, {"rows", rows}, {"timings_ms", t}};
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t default_workers() {
  if (const char* env = std::getenv("PARSTAT_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return resolve_workers(0);
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& patterns) {
  std::vector<fs::path> out;
  for (const auto& pattern : patterns) {
    glob_t g{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
    if (rc == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
    }
    globfree(&g);
    if (rc == GLOB_NOMATCH) throw IoFailure("no input matches '" + pattern + "'");
    if (rc != 0) throw IoFailure("cannot expand '" + pattern + "'");
  }
  if (out.empty()) throw IoFailure("no input files");
  return out;
}

ColumnSelector parse_column(const std::string& s) {
  if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return static_cast<std::size_t>(std::stoul(s));
  return s;
}

GridDistribution parse_dist(const std::string& s) {
  return s == "normal" ? GridDistribution::normal : GridDistribution::uniform;
}

void check_probabilities(const std::vector<double>& ps) {
  if (ps.empty()) throw UsageError("--p needs at least one probability");
  for (double p : ps)
    if (!(p > 0.0 && p < 1.0)) throw UsageError("probabilities must lie in (0, 1)");
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::size_t n = 0;
  std::string dist = "uniform";
  std::uint64_t seed = 0;
  std::string out;
  std::size_t shards = 1;
  std::string mu;
  double noise = 0.0;
};

void add_gen(CLI::App& app, GenArgs& a) {
  app.add_option("--n", a.n, "number of grid points")->required();
  app.add_option("--dist", a.dist, "grid distribution")
      ->check(CLI::IsMember({"uniform", "normal"}));
  app.add_option("--seed", a.seed, "shuffle seed");
  app.add_option("--out", a.out, "output directory")->required();
  app.add_option("--shards", a.shards, "number of CSV files");
  app.add_option("--mu", a.mu, "write (x, y) regression pairs with this mean function")
      ->check(CLI::IsMember({"linear", "sine"}));
  app.add_option("--noise", a.noise, "noise standard deviation for --mu");
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
  if (a.n == 0) throw UsageError("--n must be positive");
  if (a.shards == 0 || a.shards > a.n) throw UsageError("--shards must lie in [1, n]");
  if (a.noise < 0.0) throw UsageError("--noise must be non-negative");
  const GridSpec spec{a.n, parse_dist(a.dist), a.seed};

  std::vector<Point> pairs;
  std::vector<double> values;
  const bool regression = !a.mu.empty();
  if (regression)
    pairs = generate_regression(
        spec, a.mu == "sine" ? MeanFunction::sine : MeanFunction::linear, a.noise);
  else
    values = generate(spec);

  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw IoFailure("cannot create " + a.out + ": " + ec.message());

  const auto sizes = block_sizes(a.n, a.shards);
  json files = json::array();
  std::size_t begin = 0;
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    char name[32];
    std::snprintf(name, sizeof name, "part-%05zu.csv", r);
    const fs::path path = fs::path(a.out) / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoFailure("cannot write " + path.string());
    f << (regression ? "x,y\n" : "x\n");
    for (std::size_t i = begin; i < begin + sizes[r]; ++i) {
      if (regression)
        f << fmt17(pairs[i].x) << ',' << fmt17(pairs[i].y) << '\n';
      else
        f << fmt17(values[i]) << '\n';
    }
    f.close();
    if (!f) throw IoFailure("failed writing " + path.string());
    files.push_back({{"path", path.string()}, {"rows", sizes[r]}});
    begin += sizes[r];
  }
  json manifest = {{"command", "gen"},
                   {"n", a.n},
                   {"dist", a.dist},
                   {"seed", a.seed},
                   {"shards", a.shards},
                   {"columns", regression ? json{"x", "y"} : json{"x"}},
                   {"files", files}};
  if (regression) {
    manifest["mu"] = a.mu;
    manifest["noise"] = a.noise;
  }
  out << manifest.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// quantile

struct QuantileArgs {
  std::vector<std::string> input;
  std::string column = "0";
  std::vector<double> p;
  std::size_t j = 256;
  std::string method = "fourier";
  std::size_t bins = 1000;
  std::size_t grid = 4096;
  std::size_t workers = 0;
  std::size_t chunk = kDefaultChunkSize;
};

void add_quantile(CLI::App& app, QuantileArgs& a) {
  app.add_option("--input", a.input, "input CSV files or glob patterns")->required();
  app.add_option("--column", a.column, "column index or header name");
  app.add_option("--p", a.p, "comma-separated probabilities")->required()->delimiter(',');
  app.add_option("--j", a.j, "Fourier order J");
  app.add_option("--method", a.method, "estimator")
      ->check(CLI::IsMember({"fourier", "binning", "exact"}));
  app.add_option("--bins", a.bins, "bin count for --method binning");
  app.add_option("--grid", a.grid, "minimisation grid size");
  app.add_option("--workers", a.workers, "worker threads (default: PARSTAT_WORKERS or all)");
  app.add_option("--chunk-size", a.chunk, "rows per shard when reading a single file");
}

int cmd_quantile(const QuantileArgs& a, std::ostream& out) {
  check_probabilities(a.p);
  if (a.j == 0) throw UsageError("--j must be positive");
  if (a.grid < 8) throw UsageError("--grid must be at least 8");
  if (a.bins == 0) throw UsageError("--bins must be positive");
  if (a.chunk == 0) throw UsageError("--chunk-size must be positive");
  const std::size_t workers = a.workers ? a.workers : default_workers();
  const ExecOptions opts{workers};

  const auto paths = expand_inputs(a.input);
  const auto t_read = std::chrono::steady_clock::now();
  const ShardedDataset ds = ingest_csv(paths, parse_column(a.column), a.chunk);

  RunReport report;
  report.command = "quantile";
  report.params = {{"inputs", paths.size()},
                   {"shards", ds.shard_count()},
                   {"n", ds.total_count()},
                   {"method", a.method},
                   {"p", a.p},
                   {"workers", workers}};
  report.timings["read"] = ms_since(t_read);

  if (a.method == "fourier") {
    QuantileRequest req{a.p, FourierOrder(a.j), a.grid, 1e-10};
    QuantileTimings qt;
    const auto est = estimate_quantiles(ds, req, opts, &qt);
    report.params["j"] = a.j;
    report.params["grid"] = a.grid;
    report.params["range"] = {est.scale.lo(), est.scale.hi()};
    for (const auto& s : est.solutions)
      report.rows.push_back({{"p", s.p},
                             {"method", "fourier"},
                             {"estimate", s.unscaled},
                             {"theta_hat", s.theta_hat},
                             {"objective", s.value},
                             {"derivative_residual", s.derivative_residual},
                             {"boundary", s.boundary_flag}});
    report.timings["map"] = qt.map_ms;
    report.timings["reduce"] = qt.reduce_ms;
    report.timings["solve"] = qt.solve_ms;
  } else if (a.method == "binning") {
    PhaseTimings range_t, bin_t;
    const MomentSummary range = map_reduce(ds, MomentKernel{}, opts, &range_t);
    const double lo = range.min;
    const double hi = range.max > range.min ? range.max : range.min + 1.0;
    const auto edges = equispaced_edges(lo, hi, a.bins);
    const BinCountSummary bc = bin_counts(ds, edges, opts, &bin_t);
    const auto t0 = std::chrono::steady_clock::now();
    report.params["bins"] = a.bins;
    for (double p : a.p) {
      const auto b = binning_quantile_detail(bc, p);
      report.rows.push_back(
          {{"p", p}, {"method", "binning"}, {"estimate", b.value}, {"bin", b.bin}});
    }
    report.timings["map"] = range_t.map_ms + bin_t.map_ms;
    report.timings["reduce"] = range_t.reduce_ms + bin_t.reduce_ms;
    report.timings["solve"] = ms_since(t0);
  } else {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> sorted(ds.values().begin(), ds.values().end());
    std::sort(sorted.begin(), sorted.end());
    report.timings["map"] = 0.0;
    report.timings["reduce"] = ms_since(t0);
    const auto t1 = std::chrono::steady_clock::now();
    for (double p : a.p) {
      const std::size_t k = order_statistic_rank(sorted.size(), p);
      report.rows.push_back(
          {{"p", p}, {"method", "exact"}, {"estimate", sorted[k - 1]}, {"rank", k}});
    }
    report.timings["solve"] = ms_since(t1);
  }
  out << report.to_json().dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// lowess

struct LowessArgs {
  std::vector<std::string> input;
  std::string x_column = "0";
  std::string y_column = "1";
  double alpha = 0.3;
  std::size_t degree = 1;
  std::size_t j = 256;
  std::vector<double> eval;
  std::size_t eval_grid = 0;
  bool exact_h = false;
  std::size_t root_grid = 0;
  std::size_t workers = 0;
  std::size_t chunk = kDefaultChunkSize;
};

void add_lowess(CLI::App& app, LowessArgs& a) {
  app.add_option("--input", a.input, "input CSV files or glob patterns")->required();
  app.add_option("--x-column", a.x_column, "predictor column index or name");
  app.add_option("--y-column", a.y_column, "response column index or name");
  app.add_option("--alpha", a.alpha, "neighbourhood fraction in (0, 1)");
  app.add_option("--degree", a.degree, "local polynomial degree");
  app.add_option("--j", a.j, "Fourier order J");
  auto* eval = app.add_option("--eval", a.eval, "comma-separated evaluation points")
                   ->delimiter(',');
  auto* grid = app.add_option("--eval-grid", a.eval_grid, "n evaluation points i/(n+1)");
  eval->excludes(grid);
  app.add_flag("--exact-h", a.exact_h, "use the exact nearest-neighbour bandwidth");
  app.add_option("--root-grid", a.root_grid, "bandwidth root-search grid (default max(2048, 4J))");
  app.add_option("--workers", a.workers, "worker threads (default: PARSTAT_WORKERS or all)");
  app.add_option("--chunk-size", a.chunk, "rows per shard when reading a single file");
}

int cmd_lowess(const LowessArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  if (a.j == 0) throw UsageError("--j must be positive");
  if (a.chunk == 0) throw UsageError("--chunk-size must be positive");
  LowessConfig cfg;
  cfg.alpha = a.alpha;
  cfg.degree = a.degree;
  cfg.order = FourierOrder(a.j);
  cfg.root_grid = a.root_grid ? a.root_grid : std::max<std::size_t>(2048, 4 * a.j);
  if (!a.eval.empty()) {
    cfg.eval_points = a.eval;
  } else {
    const std::size_t n = a.eval_grid ? a.eval_grid : 9;
    for (std::size_t i = 1; i <= n; ++i)
      cfg.eval_points.push_back(static_cast<double>(i) / static_cast<double>(n + 1));
  }
  for (double x : cfg.eval_points)
    if (!(x > 0.0 && x < 1.0)) throw UsageError("evaluation points must lie in (0, 1)");
  if (cfg.root_grid < 4 * a.j) throw UsageError("--root-grid must be at least 4 J");

  const std::size_t workers = a.workers ? a.workers : default_workers();
  const auto paths = expand_inputs(a.input);
  const auto t_read = std::chrono::steady_clock::now();
  const PairedDataset data =
      ingest_csv_pairs(paths, parse_column(a.x_column), parse_column(a.y_column), a.chunk);

  RunReport report;
  report.command = "lowess";
  report.params = {{"inputs", paths.size()}, {"shards", data.shard_count()},
                   {"n", data.total_count()}, {"alpha", a.alpha},
                   {"degree", a.degree},      {"j", a.j},
                   {"root_grid", cfg.root_grid}, {"bandwidth", a.exact_h ? "exact" : "fourier"},
                   {"workers", workers}};
  report.timings["read"] = ms_since(t_read);

  LowessTimings lt;
  const auto preds = predict(cfg, data,
                             a.exact_h ? BandwidthMethod::exact : BandwidthMethod::fourier,
                             ExecOptions{workers}, &lt);
  std::size_t failures = 0;
  for (const auto& p : preds) {
    json row = {{"x", p.x}, {"h_method", a.exact_h ? "exact" : "fourier"}};
    if (p.bandwidth) {
      row["h"] = p.bandwidth->h_hat;
      row["root_count"] = p.bandwidth->root_count;
      row["h_residual"] = p.bandwidth->residual;
    }
    if (p.ok()) {
      row["status"] = "ok";
      row["beta"] = p.fit->beta;
      row["mu_hat"] = p.fit->mu_hat;
      row["weighted_points"] = p.fit->effective_weight_count;
    } else {
      ++failures;
      row["status"] = p.failure == PointPrediction::Failure::no_solution
                          ? "no_solution"
                          : "degenerate_neighborhood";
      row["error"] = p.error;
      err << "warning: " << p.error << '\n';
    }
    report.rows.push_back(std::move(row));
  }
  report.timings["map"] = lt.map_ms;
  report.timings["reduce"] = lt.reduce_ms;
  report.timings["solve"] = lt.solve_ms;
  out << report.to_json().dump(2) << '\n';
  return failures == preds.size() ? kNumerical : kOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::size_t n = 100000;
  std::string dist = "uniform";
  std::uint64_t seed = 0;
  std::size_t p_grid = 99;
  std::vector<std::size_t> j{512};
  std::vector<std::size_t> bins{100};
  std::vector<std::size_t> workers;
  std::size_t shards = 8;
  std::size_t grid = 4096;
  std::string out;
  std::string summary;
};

void add_bench(CLI::App& app, BenchArgs& a) {
  app.add_option("--n", a.n, "number of grid points");
  app.add_option("--dist", a.dist, "grid distribution")
      ->check(CLI::IsMember({"uniform", "normal"}));
  app.add_option("--seed", a.seed, "shuffle seed");
  app.add_option("--p-grid", a.p_grid, "k evenly spaced probabilities i/(k+1)");
  app.add_option("--j", a.j, "comma-separated Fourier orders")->delimiter(',');
  app.add_option("--bins", a.bins, "comma-separated bin counts")->delimiter(',');
  app.add_option("--workers", a.workers, "comma-separated worker counts")->delimiter(',');
  app.add_option("--shards", a.shards, "number of shards");
  app.add_option("--grid", a.grid, "minimisation grid size");
  app.add_option("--out", a.out, "per-p error table (CSV)");
  app.add_option("--summary", a.summary, "success-rate table (CSV)");
}

struct MethodErrors {
  std::string method;
  std::size_t param = 0;
  std::size_t workers = 0;
  std::vector<double> estimate;
  std::vector<double> error;
  double map_ms = 0.0, reduce_ms = 0.0, solve_ms = 0.0;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.n == 0) throw UsageError("--n must be positive");
  if (a.p_grid == 0) throw UsageError("--p-grid must be positive");
  if (a.j.empty() || a.bins.empty()) throw UsageError("--j and --bins need values");
  for (auto j : a.j)
    if (j == 0) throw UsageError("--j values must be positive");
  for (auto b : a.bins)
    if (b == 0) throw UsageError("--bins values must be positive");
  if (a.grid < 8) throw UsageError("--grid must be at least 8");
  std::vector<std::size_t> worker_list = a.workers;
  if (worker_list.empty()) worker_list.push_back(default_workers());
  for (auto w : worker_list)
    if (w == 0) throw UsageError("--workers values must be positive");
  const std::size_t shards = std::min(std::max<std::size_t>(a.shards, 1), a.n);

  std::vector<double> ps(a.p_grid);
  for (std::size_t i = 0; i < a.p_grid; ++i)
    ps[i] = static_cast<double>(i + 1) / static_cast<double>(a.p_grid + 1);

  const GridSpec spec{a.n, parse_dist(a.dist), a.seed};
  std::vector<double> data = generate(spec);
  std::vector<double> sorted = data;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> exact(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i)
    exact[i] = sorted[order_statistic_rank(sorted.size(), ps[i]) - 1];
  const ShardedDataset ds = partition(std::move(data), shards);

  std::vector<MethodErrors> results;
  for (std::size_t w : worker_list) {
    const ExecOptions opts{w};
    for (std::size_t j : a.j) {
      MethodErrors m{"fourier", j, w, {}, {}};
      QuantileTimings qt;
      const auto est =
          estimate_quantiles(ds, QuantileRequest{ps, FourierOrder(j), a.grid, 1e-10}, opts, &qt);
      for (std::size_t i = 0; i < ps.size(); ++i) {
        m.estimate.push_back(est.solutions[i].unscaled);
        m.error.push_back(std::abs(est.solutions[i].unscaled - exact[i]));
      }
      m.map_ms = qt.map_ms;
      m.reduce_ms = qt.reduce_ms;
      m.solve_ms = qt.solve_ms;
      results.push_back(std::move(m));
    }
    for (std::size_t b : a.bins) {
      MethodErrors m{"binning", b, w, {}, {}};
      PhaseTimings rt, bt;
      const MomentSummary range = map_reduce(ds, MomentKernel{}, opts, &rt);
      const double hi = range.max > range.min ? range.max : range.min + 1.0;
      const auto bc = bin_counts(ds, equispaced_edges(range.min, hi, b), opts, &bt);
      const auto t0 = std::chrono::steady_clock::now();
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const double v = binning_quantile(bc, ps[i]);
        m.estimate.push_back(v);
        m.error.push_back(std::abs(v - exact[i]));
      }
      m.map_ms = rt.map_ms + bt.map_ms;
      m.reduce_ms = rt.reduce_ms + bt.reduce_ms;
      m.solve_ms = ms_since(t0);
      results.push_back(std::move(m));
    }
  }

  RunReport report;
  report.command = "bench";
  report.params = {{"n", a.n},        {"dist", a.dist}, {"seed", a.seed},
                   {"p_grid", a.p_grid}, {"j", a.j},    {"bins", a.bins},
                   {"workers", worker_list}, {"shards", shards}, {"grid", a.grid}};

  std::ostringstream summary_csv;
  summary_csv << "workers,j,bins,successes,total,success_rate,fourier_median_error,"
                 "binning_median_error\n";
  for (const auto& f : results) {
    if (f.method != "fourier") continue;
    for (const auto& b : results) {
      if (b.method != "binning" || b.workers != f.workers) continue;
      std::size_t wins = 0;
      for (std::size_t i = 0; i < ps.size(); ++i)
        if (f.error[i] < b.error[i]) ++wins;  // ties count against the Fourier method
      const double rate = static_cast<double>(wins) / static_cast<double>(ps.size());
      const double fm = median(f.error);
      const double bm = median(b.error);
      report.rows.push_back({{"workers", f.workers},
                             {"j", f.param},
                             {"bins", b.param},
                             {"successes", wins},
                             {"total", ps.size()},
                             {"success_rate", rate},
                             {"fourier_median_error", fm},
                             {"binning_median_error", bm}});
      summary_csv << f.workers << ',' << f.param << ',' << b.param << ',' << wins << ','
                  << ps.size() << ',' << fmt17(rate) << ',' << fmt17(fm) << ',' << fmt17(bm)
                  << '\n';
    }
  }
  for (const auto& m : results) {
    const std::string key = m.method + (m.method == "fourier" ? "/j=" : "/bins=") +
                            std::to_string(m.param) + "/workers=" + std::to_string(m.workers);
    report.timings[key + "/map"] = m.map_ms;
    report.timings[key + "/reduce"] = m.reduce_ms;
    report.timings[key + "/solve"] = m.solve_ms;
  }

  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::binary | std::ios::trunc);
    if (!f) throw IoFailure("cannot write " + a.out);
    f << "method,param,workers,p,estimate,exact,abs_error,map_ms,reduce_ms,solve_ms\n";
    for (const auto& m : results)
      for (std::size_t i = 0; i < ps.size(); ++i)
        f << m.method << ',' << m.param << ',' << m.workers << ',' << fmt17(ps[i]) << ','
          << fmt17(m.estimate[i]) << ',' << fmt17(exact[i]) << ',' << fmt17(m.error[i]) << ','
          << fmt17(m.map_ms) << ',' << fmt17(m.reduce_ms) << ',' << fmt17(m.solve_ms) << '\n';
    if (!f) throw IoFailure("failed writing " + a.out);
  }
  if (!a.summary.empty()) {
    std::ofstream f(a.summary, std::ios::binary | std::ios::trunc);
    if (!f) throw IoFailure("cannot write " + a.summary);
    f << summary_csv.str();
    if (!f) throw IoFailure("failed writing " + a.summary);
  }
  out << report.to_json().dump(2) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"parstat: parallel summaries, Fourier quantiles and local regression"};
  app.require_subcommand(1);
  GenArgs gen;
  QuantileArgs quant;
  LowessArgs lowess;
  BenchArgs bench;
  add_gen(*app.add_subcommand("gen", "generate grid datasets as sharded CSV"), gen);
  add_quantile(*app.add_subcommand("quantile", "estimate sample quantiles"), quant);
  add_lowess(*app.add_subcommand("lowess", "approximate local polynomial regression"), lowess);
  add_bench(*app.add_subcommand("bench", "accuracy and runtime benchmark"), bench);

  std::vector<const char*> argv{"parstat"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  const auto& sub = app.get_subcommands().front()->get_name();
  try {
    if (sub == "gen") return cmd_gen(gen, out);
    if (sub == "quantile") return cmd_quantile(quant, out);
    if (sub == "lowess") return cmd_lowess(lowess, out, err);
    return cmd_bench(bench, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoFailure& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const IngestError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const EmptyDatasetError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace parstat::cli
