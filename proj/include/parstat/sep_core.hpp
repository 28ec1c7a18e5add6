#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "parstat/compensated_sum.hpp"
#include "parstat/fourier_kernels.hpp"
#include "parstat/rescale.hpp"
#include "parstat/shard_engine.hpp"

namespace parstat {

// ---------------------------------------------------------------------------
// Count, sum, extremes

/// count, compensated sum, min and max of a nonempty block.
struct MomentSummary {
  std::uint64_t count = 0;
  CompensatedSum sum;
  double min = 0.0;
  double max = 0.0;

  double total() const noexcept { return sum.value(); }
  double mean() const noexcept { return sum.value() / static_cast<double>(count); }
};

MomentSummary merge_moments(const MomentSummary& a, const MomentSummary& b);

struct MomentKernel {
  using summary_type = MomentSummary;
  static constexpr KernelId id = KernelId::moments;
  std::size_t arity() const noexcept { return 4; }
  MomentSummary map(std::span<const double> block) const;
  MomentSummary merge(const MomentSummary& a, const MomentSummary& b) const {
    return merge_moments(a, b);
  }
};

// ---------------------------------------------------------------------------
// Mean and sample standard deviation

/// (count, mean, unbiased sample standard deviation). A singleton has s = 0.
struct VarianceSummary {
  std::uint64_t count = 0;
  double mean = 0.0;
  double s = 0.0;
};

/// Pooled combination of two parts:
///   S^2 = sum_r [ (n_r - 1) S_r^2 + n_r (mean_r - mean)^2 ] / (n - 1).
VarianceSummary merge_variance(const VarianceSummary& a, const VarianceSummary& b);

struct VarianceKernel {
  using summary_type = VarianceSummary;
  static constexpr KernelId id = KernelId::variance;
  std::size_t arity() const noexcept { return 3; }
  VarianceSummary map(std::span<const double> block) const;
  VarianceSummary merge(const VarianceSummary& a, const VarianceSummary& b) const {
    return merge_variance(a, b);
  }
};

// ---------------------------------------------------------------------------
// Trigonometric moments

/// Count, mean and the 2J averaged odd harmonics of data in [0, 1].
///
/// Entry 2(j-1) of `c_bar()` is mean cos((2j-1)x) and entry 2(j-1)+1 is
/// mean sin((2j-1)x), j = 1..J. Sums are kept in compensated form so that
/// merging is order independent; the averages are derived on demand.
class TrigMomentSummary {
 public:
  explicit TrigMomentSummary(FourierOrder order);

  /// Builds a summary from already averaged values (count, mean, c_bar).
  static TrigMomentSummary from_averages(FourierOrder order, std::uint64_t count,
                                         double mean, std::span<const double> c_bar);

  FourierOrder order() const noexcept { return order_; }
  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept;

  /// Averaged harmonics in the interleaved layout described above.
  std::vector<double> c_bar() const;
  double cos_moment(std::size_t j) const;  ///< j is 1-based
  double sin_moment(std::size_t j) const;  ///< j is 1-based

  /// Adds one datum (already in [0, 1]).
  void add(double x);
  void merge(const TrigMomentSummary& other);

  friend bool operator==(const TrigMomentSummary&, const TrigMomentSummary&) = default;

 private:
  FourierOrder order_;
  std::uint64_t count_ = 0;
  CompensatedSum sum_x_;
  std::vector<CompensatedSum> sums_;
};

TrigMomentSummary merge_trig(const TrigMomentSummary& a, const TrigMomentSummary& b);

/// Map kernel for trigonometric moments. When `rescale` is set each datum is
/// sent through it before evaluation; values outside [0, 1] (after the map)
/// raise DomainError.
struct TrigMomentKernel {
  using summary_type = TrigMomentSummary;
  static constexpr KernelId id = KernelId::trig_moments;

  FourierOrder order;
  std::optional<RescaleMap> rescale;

  std::size_t arity() const noexcept { return 2 * order.value() + 2; }
  TrigMomentSummary map(std::span<const double> block) const;
  TrigMomentSummary map(std::span<const Point> block) const;
  TrigMomentSummary merge(const TrigMomentSummary& a, const TrigMomentSummary& b) const {
    return merge_trig(a, b);
  }
};

TrigMomentSummary trig_moments(const ShardedDataset& ds, FourierOrder order,
                               const ExecOptions& opts = {},
                               PhaseTimings* timings = nullptr);

// ---------------------------------------------------------------------------
// Least squares accumulators

/// Z'Z, Z'Y and the row count of a least-squares design with d predictors.
class LsqSummary {
 public:
  explicit LsqSummary(std::size_t d);

  /// Accumulates rows of a row-major n x d design `z` with responses `y`.
  static LsqSummary from_rows(std::size_t d, std::span<const double> z,
                              std::span<const double> y);

  std::size_t dim() const noexcept { return d_; }
  std::uint64_t count() const noexcept { return count_; }
  double ztz(std::size_t i, std::size_t j) const { return ztz_.at(i * d_ + j).value(); }
  double zty(std::size_t i) const { return zty_.at(i).value(); }

  void add_row(std::span<const double> z, double y);
  void merge(const LsqSummary& other);

 private:
  std::size_t d_;
  std::uint64_t count_ = 0;
  std::vector<CompensatedSum> ztz_;
  std::vector<CompensatedSum> zty_;
};

/// Entrywise sum; throws ShapeError when dimensions differ.
LsqSummary merge_lsq(const LsqSummary& a, const LsqSummary& b);

/// Least squares on polynomial features z = (1, x, ..., x^(d-1)) of paired data.
struct PolyLsqKernel {
  using summary_type = LsqSummary;
  static constexpr KernelId id = KernelId::least_squares;
  std::size_t d = 1;
  std::size_t arity() const noexcept { return d * d + d + 1; }
  LsqSummary map(std::span<const Point> block) const;
  LsqSummary merge(const LsqSummary& a, const LsqSummary& b) const { return merge_lsq(a, b); }
};

// ---------------------------------------------------------------------------
// Bin counts

/// Counts over bins (b_0, b_1], (b_1, b_2], ..., (b_{B-1}, b_B]. The left end
/// b_0 itself is counted in the first bin so that [b_0, b_B] is covered.
struct BinCountSummary {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;

  std::size_t bins() const noexcept { return counts.size(); }
  std::uint64_t total() const noexcept;
};

/// Throws DomainError unless edges are strictly increasing with B >= 1.
void validate_edges(std::span<const double> edges);

/// `bins` equal-width bins spanning [lo, hi]; the last edge is exactly `hi`.
std::vector<double> equispaced_edges(double lo, double hi, std::size_t bins);

/// 1-based bin of `x`, or 0 when x is outside [b_0, b_B].
std::size_t bin_index(std::span<const double> edges, double x);

BinCountSummary merge_bins(const BinCountSummary& a, const BinCountSummary& b);

struct BinCountKernel {
  using summary_type = BinCountSummary;
  static constexpr KernelId id = KernelId::bin_counts;
  std::vector<double> edges;
  std::size_t arity() const noexcept { return edges.size() - 1; }
  BinCountSummary map(std::span<const double> block) const;
  BinCountSummary merge(const BinCountSummary& a, const BinCountSummary& b) const {
    return merge_bins(a, b);
  }
};

BinCountSummary bin_counts(const ShardedDataset& ds, std::span<const double> edges,
                           const ExecOptions& opts = {}, PhaseTimings* timings = nullptr);

}  // namespace parstat
