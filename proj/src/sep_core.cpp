#include "parstat/sep_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace parstat {

// --- moments ---------------------------------------------------------------

MomentSummary MomentKernel::map(std::span<const double> block) const {
  if (block.empty()) throw EmptyDatasetError("moment summary of an empty block");
  MomentSummary s;
  s.min = block.front();
  s.max = block.front();
  for (double x : block) {
    s.sum.add(x);
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.count = block.size();
  return s;
}

MomentSummary merge_moments(const MomentSummary& a, const MomentSummary& b) {
  MomentSummary out;
  out.count = a.count + b.count;
  out.sum = a.sum;
  out.sum.merge(b.sum);
  out.min = std::min(a.min, b.min);
  out.max = std::max(a.max, b.max);
  return out;
}

// --- variance --------------------------------------------------------------

VarianceSummary VarianceKernel::map(std::span<const double> block) const {
  if (block.empty()) throw EmptyDatasetError("variance summary of an empty block");
  CompensatedSum sum;
  for (double x : block) sum.add(x);
  const double n = static_cast<double>(block.size());
  const double mean = sum.value() / n;
  VarianceSummary out{block.size(), mean, 0.0};
  if (block.size() > 1) {
    CompensatedSum ss;
    for (double x : block) ss.add((x - mean) * (x - mean));
    out.s = std::sqrt(ss.value() / (n - 1.0));
  }
  return out;
}

VarianceSummary merge_variance(const VarianceSummary& a, const VarianceSummary& b) {
  if (a.count == 0 || b.count == 0)
    throw DomainError("variance summaries need count >= 1");
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double n = na + nb;
  const double mean = a.mean + (b.mean - a.mean) * (nb / n);
  const double da = a.mean - mean;
  const double db = b.mean - mean;
  CompensatedSum num;
  num.add((na - 1.0) * a.s * a.s);
  num.add(na * da * da);
  num.add((nb - 1.0) * b.s * b.s);
  num.add(nb * db * db);
  return {a.count + b.count, mean, std::sqrt(std::max(0.0, num.value()) / (n - 1.0))};
}

// --- trigonometric moments -------------------------------------------------

TrigMomentSummary::TrigMomentSummary(FourierOrder order)
    : order_(order), sums_(2 * order.value()) {}

TrigMomentSummary TrigMomentSummary::from_averages(FourierOrder order, std::uint64_t count,
                                                   double mean,
                                                   std::span<const double> c_bar) {
  if (c_bar.size() != 2 * order.value())
    throw ShapeError("c_bar must have 2J entries");
  if (count == 0) throw DomainError("trig summary needs count >= 1");
  TrigMomentSummary s(order);
  const double n = static_cast<double>(count);
  s.count_ = count;
  s.sum_x_ = CompensatedSum(mean * n);
  for (std::size_t k = 0; k < c_bar.size(); ++k) s.sums_[k] = CompensatedSum(c_bar[k] * n);
  return s;
}

double TrigMomentSummary::mean() const noexcept {
  return sum_x_.value() / static_cast<double>(count_);
}

std::vector<double> TrigMomentSummary::c_bar() const {
  std::vector<double> out(sums_.size());
  const double n = static_cast<double>(count_);
  for (std::size_t k = 0; k < sums_.size(); ++k) out[k] = sums_[k].value() / n;
  return out;
}

double TrigMomentSummary::cos_moment(std::size_t j) const {
  return sums_.at(2 * (j - 1)).value() / static_cast<double>(count_);
}

double TrigMomentSummary::sin_moment(std::size_t j) const {
  return sums_.at(2 * (j - 1) + 1).value() / static_cast<double>(count_);
}

void TrigMomentSummary::add(double x) {
  sum_x_.add(x);
  OddHarmonics h(x);
  const std::size_t order = order_.value();
  for (std::size_t j = 0; j < order; ++j, h.advance()) {
    sums_[2 * j].add(h.cos());
    sums_[2 * j + 1].add(h.sin());
  }
  ++count_;
}

void TrigMomentSummary::merge(const TrigMomentSummary& other) {
  if (other.order_ != order_) throw ShapeError("cannot merge trig summaries of different J");
  count_ += other.count_;
  sum_x_.merge(other.sum_x_);
  for (std::size_t k = 0; k < sums_.size(); ++k) sums_[k].merge(other.sums_[k]);
}

TrigMomentSummary merge_trig(const TrigMomentSummary& a, const TrigMomentSummary& b) {
  TrigMomentSummary out = a;
  out.merge(b);
  return out;
}

namespace {

void check_unit(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "datum " << x << " lies outside [0, 1]; rescale the data first";
    throw DomainError(msg.str());
  }
}

}  // namespace

TrigMomentSummary TrigMomentKernel::map(std::span<const double> block) const {
  TrigMomentSummary s(order);
  for (double x : block) {
    const double u = rescale ? rescale->forward(x) : x;
    check_unit(u);
    s.add(u);
  }
  return s;
}

TrigMomentSummary TrigMomentKernel::map(std::span<const Point> block) const {
  TrigMomentSummary s(order);
  for (const Point& p : block) {
    const double u = rescale ? rescale->forward(p.x) : p.x;
    check_unit(u);
    s.add(u);
  }
  return s;
}

TrigMomentSummary trig_moments(const ShardedDataset& ds, FourierOrder order,
                               const ExecOptions& opts, PhaseTimings* timings) {
  return map_reduce(ds, TrigMomentKernel{order, std::nullopt}, opts, timings);
}

// --- least squares ---------------------------------------------------------

LsqSummary::LsqSummary(std::size_t d) : d_(d), ztz_(d * d), zty_(d) {
  if (d == 0) throw ShapeError("least-squares dimension must be positive");
}

LsqSummary LsqSummary::from_rows(std::size_t d, std::span<const double> z,
                                 std::span<const double> y) {
  if (z.size() != d * y.size()) throw ShapeError("design has wrong number of entries");
  LsqSummary s(d);
  for (std::size_t i = 0; i < y.size(); ++i) s.add_row(z.subspan(i * d, d), y[i]);
  return s;
}

void LsqSummary::add_row(std::span<const double> z, double y) {
  if (z.size() != d_) throw ShapeError("row length does not match dimension");
  for (std::size_t i = 0; i < d_; ++i) {
    for (std::size_t j = 0; j < d_; ++j) ztz_[i * d_ + j].add(z[i] * z[j]);
    zty_[i].add(z[i] * y);
  }
  ++count_;
}

void LsqSummary::merge(const LsqSummary& other) {
  if (other.d_ != d_)
    throw ShapeError("cannot merge least-squares summaries of dimension " +
                     std::to_string(d_) + " and " + std::to_string(other.d_));
  for (std::size_t k = 0; k < ztz_.size(); ++k) ztz_[k].merge(other.ztz_[k]);
  for (std::size_t k = 0; k < zty_.size(); ++k) zty_[k].merge(other.zty_[k]);
  count_ += other.count_;
}

LsqSummary merge_lsq(const LsqSummary& a, const LsqSummary& b) {
  LsqSummary out = a;
  out.merge(b);
  return out;
}

LsqSummary PolyLsqKernel::map(std::span<const Point> block) const {
  LsqSummary s(d);
  std::vector<double> z(d);
  for (const Point& p : block) {
    double power = 1.0;
    for (std::size_t k = 0; k < d; ++k, power *= p.x) z[k] = power;
    s.add_row(z, p.y);
  }
  return s;
}

// --- bins ------------------------------------------------------------------

std::uint64_t BinCountSummary::total() const noexcept {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

void validate_edges(std::span<const double> edges) {
  if (edges.size() < 2) throw DomainError("need at least two bin edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!std::isfinite(edges[i])) throw DomainError("bin edges must be finite");
    if (i > 0 && !(edges[i - 1] < edges[i]))
      throw DomainError("bin edges must be strictly increasing");
  }
}

std::vector<double> equispaced_edges(double lo, double hi, std::size_t bins) {
  if (bins == 0) throw ConfigError("bin count must be positive");
  if (!(lo < hi)) throw DomainError("equispaced edges need lo < hi");
  std::vector<double> edges(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t r = 0; r < bins; ++r) edges[r] = lo + width * static_cast<double>(r);
  edges[bins] = hi;
  validate_edges(edges);
  return edges;
}

std::size_t bin_index(std::span<const double> edges, double x) {
  if (!(x >= edges.front() && x <= edges.back())) return 0;
  // first edge b_r (r >= 1) with x <= b_r
  const auto it = std::lower_bound(edges.begin() + 1, edges.end(), x);
  return static_cast<std::size_t>(it - edges.begin());
}

BinCountSummary merge_bins(const BinCountSummary& a, const BinCountSummary& b) {
  if (a.edges != b.edges) throw ShapeError("cannot merge bin counts over different edges");
  BinCountSummary out = a;
  for (std::size_t r = 0; r < out.counts.size(); ++r) out.counts[r] += b.counts[r];
  return out;
}

BinCountSummary BinCountKernel::map(std::span<const double> block) const {
  BinCountSummary s{edges, std::vector<std::uint64_t>(edges.size() - 1, 0)};
  for (double x : block) {
    const std::size_t r = bin_index(edges, x);
    if (r == 0) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "datum " << x << " lies outside the bin range [" << edges.front() << ", "
          << edges.back() << "]";
      throw DomainError(msg.str());
    }
    ++s.counts[r - 1];
  }
  return s;
}

BinCountSummary bin_counts(const ShardedDataset& ds, std::span<const double> edges,
                           const ExecOptions& opts, PhaseTimings* timings) {
  validate_edges(edges);
  BinCountKernel kernel{std::vector<double>(edges.begin(), edges.end())};
  return map_reduce(ds, kernel, opts, timings);
}

}  // namespace parstat
