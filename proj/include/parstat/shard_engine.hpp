#pragma once

#include <chrono>
#include <concepts>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "parstat/error.hpp"
#include "parstat/parallel.hpp"

namespace parstat {

/// Paired observation used by the regression path.
struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Where a dataset came from. Empty `paths` means in-memory.
struct DataSource {
  std::vector<std::filesystem::path> paths;
  bool in_memory() const noexcept { return paths.empty(); }
};

/// Data split into contiguous, nonempty, exhaustive blocks.
///
/// Values are stored once; shard `r` is the index range
/// [offsets[r], offsets[r+1]) of that storage.
template <class T>
class BasicShardedDataset {
 public:
  using value_type = T;

  /// Builds a dataset from `values` split into consecutive blocks of the
  /// given sizes. Throws PartitionError when a size is zero or the sizes do
  /// not add up to `values.size()`.
  static BasicShardedDataset from_blocks(std::vector<T> values,
                                         std::span<const std::size_t> sizes,
                                         DataSource source = {}) {
    if (values.empty()) throw EmptyDatasetError("dataset has no values");
    if (sizes.empty()) throw PartitionError("at least one shard is required");
    BasicShardedDataset ds;
    ds.offsets_.reserve(sizes.size() + 1);
    ds.offsets_.push_back(0);
    for (std::size_t s : sizes) {
      if (s == 0) throw PartitionError("shards must be nonempty");
      ds.offsets_.push_back(ds.offsets_.back() + s);
    }
    if (ds.offsets_.back() != values.size())
      throw PartitionError("shard sizes do not cover the data exactly");
    ds.values_ = std::move(values);
    ds.source_ = std::move(source);
    return ds;
  }

  std::size_t shard_count() const noexcept { return offsets_.size() - 1; }
  std::size_t total_count() const noexcept { return values_.size(); }

  std::span<const T> shard(std::size_t r) const {
    return std::span<const T>(values_).subspan(offsets_.at(r),
                                               offsets_.at(r + 1) - offsets_[r]);
  }
  std::size_t shard_size(std::size_t r) const {
    return offsets_.at(r + 1) - offsets_.at(r);
  }

  /// All values in shard order.
  std::span<const T> values() const noexcept { return values_; }
  const DataSource& source() const noexcept { return source_; }

  std::vector<std::size_t> shard_sizes() const {
    std::vector<std::size_t> out;
    out.reserve(shard_count());
    for (std::size_t r = 0; r < shard_count(); ++r) out.push_back(shard_size(r));
    return out;
  }

  /// Splits shard `r` after its first `at` elements (0 < at < size).
  BasicShardedDataset split_shard(std::size_t r, std::size_t at) const {
    const std::size_t n = shard_size(r);
    if (at == 0 || at >= n)
      throw PartitionError("split point must leave both parts nonempty");
    std::vector<std::size_t> sizes = shard_sizes();
    sizes[r] = at;
    sizes.insert(sizes.begin() + static_cast<std::ptrdiff_t>(r) + 1, n - at);
    return from_blocks(values_, sizes, source_);
  }

 private:
  BasicShardedDataset() = default;

  std::vector<T> values_;
  std::vector<std::size_t> offsets_;
  DataSource source_;
};

using ShardedDataset = BasicShardedDataset<double>;
using PairedDataset = BasicShardedDataset<Point>;

/// Sizes of an R-way contiguous split of n items: the first n % R blocks get
/// one extra element.
std::vector<std::size_t> block_sizes(std::size_t n, std::size_t shards);

/// Splits `values` into R contiguous blocks whose sizes differ by at most one.
template <class T>
BasicShardedDataset<T> partition(std::vector<T> values, std::size_t shards) {
  if (shards == 0 || shards > values.size())
    throw PartitionError("invalid partition: need 1 <= R <= " +
                         std::to_string(values.size()) + ", got R = " +
                         std::to_string(shards));
  const auto sizes = block_sizes(values.size(), shards);
  return BasicShardedDataset<T>::from_blocks(std::move(values), sizes);
}

enum class KernelId {
  moments,
  variance,
  trig_moments,
  least_squares,
  bin_counts,
  local_moments,
};

const char* to_string(KernelId id) noexcept;

/// A per-shard summary function plus its associative, commutative merge.
template <class K, class T>
concept MergeKernel =
    requires(const K& k, std::span<const T> block, const typename K::summary_type& s) {
      typename K::summary_type;
      { K::id } -> std::convertible_to<KernelId>;
      { k.arity() } -> std::convertible_to<std::size_t>;
      { k.map(block) } -> std::same_as<typename K::summary_type>;
      { k.merge(s, s) } -> std::same_as<typename K::summary_type>;
    };

enum class FoldShape { sequential, tree };

struct ExecOptions {
  /// 0 selects the available hardware parallelism.
  std::size_t workers = 0;
  FoldShape fold = FoldShape::sequential;
};

struct PhaseTimings {
  double map_ms = 0.0;
  double reduce_ms = 0.0;
};

/// Folds `parts` in index order, either left-to-right or as a balanced
/// binary tree. Both shapes are deterministic in the input order.
template <class S, class Merge>
S fold_summaries(std::vector<S> parts, const Merge& merge, FoldShape shape) {
  if (parts.empty()) throw EmptyDatasetError("nothing to fold");
  if (shape == FoldShape::sequential) {
    S acc = std::move(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) acc = merge(acc, parts[i]);
    return acc;
  }
  while (parts.size() > 1) {
    std::vector<S> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2)
      next.push_back(merge(parts[i], parts[i + 1]));
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return std::move(parts.front());
}

/// Applies `kernel` to every shard independently (concurrently when more
/// than one worker is available) and folds the shard summaries in shard
/// order. The result does not depend on the worker count.
template <class T, class K>
  requires MergeKernel<K, T>
typename K::summary_type map_reduce(const BasicShardedDataset<T>& ds, const K& kernel,
                                    const ExecOptions& opts = {},
                                    PhaseTimings* timings = nullptr) {
  using Summary = typename K::summary_type;
  using Clock = std::chrono::steady_clock;
  const std::size_t shards = ds.shard_count();
  std::vector<std::optional<Summary>> slots(shards);

  const auto t0 = Clock::now();
  parallel_for(shards, opts.workers, [&](std::size_t r) {
    try {
      slots[r].emplace(kernel.map(ds.shard(r)));
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw IngestError("shard " + std::to_string(r) + ": " + e.what(), r);
    }
  });
  const auto t1 = Clock::now();

  std::vector<Summary> parts;
  parts.reserve(shards);
  for (auto& s : slots) parts.push_back(std::move(*s));
  Summary result = fold_summaries(
      std::move(parts),
      [&](const Summary& a, const Summary& b) { return kernel.merge(a, b); },
      opts.fold);
  const auto t2 = Clock::now();

  if (timings) {
    timings->map_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    timings->reduce_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  }
  return result;
}

/// Column chosen either by zero-based index or by header name.
using ColumnSelector = std::variant<std::size_t, std::string>;

inline constexpr std::size_t kDefaultChunkSize = std::size_t{1} << 20;

/// Reads one numeric column from comma-separated files.
///
/// Several files give one shard per file; a single file is cut into chunks
/// of `chunk_size` rows. A first line whose cells are not all numeric is
/// treated as a header. Non-finite or unparsable cells raise IngestError
/// naming the file, row and cell.
ShardedDataset ingest_csv(std::span<const std::filesystem::path> paths,
                          const ColumnSelector& column,
                          std::size_t chunk_size = kDefaultChunkSize);

/// Same as ingest_csv, reading an (x, y) pair of columns per row.
PairedDataset ingest_csv_pairs(std::span<const std::filesystem::path> paths,
                               const ColumnSelector& x_column,
                               const ColumnSelector& y_column,
                               std::size_t chunk_size = kDefaultChunkSize);

}  // namespace parstat
