#include "parstat/shard_engine.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace parstat {

std::vector<std::size_t> block_sizes(std::size_t n, std::size_t shards) {
  if (shards == 0 || shards > n)
    throw PartitionError("invalid partition: need 1 <= R <= " + std::to_string(n) +
                         ", got R = " + std::to_string(shards));
  std::vector<std::size_t> sizes(shards, n / shards);
  for (std::size_t r = 0; r < n % shards; ++r) ++sizes[r];
  return sizes;
}

const char* to_string(KernelId id) noexcept {
  switch (id) {
    case KernelId::moments: return "moments";
    case KernelId::variance: return "variance";
    case KernelId::trig_moments: return "trig_moments";
    case KernelId::least_squares: return "least_squares";
    case KernelId::bin_counts: return "bin_counts";
    case KernelId::local_moments: return "local_moments";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

// Parses a full cell as a double. Accepts nan/inf spellings so that the
// caller can report them as non-finite rather than as garbage.
std::optional<double> parse_number(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return v;
}

std::string location(const std::filesystem::path& file, std::size_t line) {
  return file.string() + ":" + std::to_string(line);
}

std::size_t resolve_column(const ColumnSelector& sel, const std::vector<std::string>& header,
                           const std::filesystem::path& file, std::size_t shard) {
  if (const auto* idx = std::get_if<std::size_t>(&sel)) return *idx;
  const auto& name = std::get<std::string>(sel);
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw IngestError(file.string() + ": no column named '" + name + "'", shard);
}

// Reads the selected columns of one file.
std::vector<std::vector<double>> read_columns(const std::filesystem::path& file,
                                              std::span<const ColumnSelector> selectors,
                                              std::size_t shard) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IngestError("cannot open " + file.string(), shard);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::vector<std::vector<double>> out(selectors.size());
  std::vector<std::size_t> cols(selectors.size());
  std::vector<std::string> header;
  bool first = true;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string_view line = trim(std::string_view(text).substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_cells(line);

    if (first) {
      first = false;
      bool numeric = true;
      for (auto c : cells) numeric = numeric && parse_number(c).has_value();
      if (!numeric) {
        for (auto c : cells) header.emplace_back(c);
        for (std::size_t k = 0; k < selectors.size(); ++k)
          cols[k] = resolve_column(selectors[k], header, file, shard);
        continue;
      }
      for (std::size_t k = 0; k < selectors.size(); ++k) {
        if (std::holds_alternative<std::string>(selectors[k]))
          throw IngestError(file.string() + ": column '" +
                                std::get<std::string>(selectors[k]) +
                                "' selected by name but the file has no header",
                            shard);
        cols[k] = std::get<std::size_t>(selectors[k]);
      }
    }

    for (std::size_t k = 0; k < selectors.size(); ++k) {
      if (cols[k] >= cells.size())
        throw IngestError(location(file, line_no) + ": missing column " +
                              std::to_string(cols[k]),
                          shard);
      const auto cell = cells[cols[k]];
      const auto v = parse_number(cell);
      if (!v || !std::isfinite(*v))
        throw IngestError(location(file, line_no) + ": cell '" + std::string(cell) +
                              "' in column " + std::to_string(cols[k]) +
                              " is not a finite number",
                          shard);
      out[k].push_back(*v);
    }
  }
  return out;
}

template <class T, class MakeRows>
BasicShardedDataset<T> ingest(std::span<const std::filesystem::path> paths,
                              std::size_t chunk_size, const MakeRows& make_rows) {
  if (paths.empty()) throw EmptyDatasetError("no input files");
  if (chunk_size == 0) throw ConfigError("chunk size must be positive");
  std::vector<T> values;
  std::vector<std::size_t> sizes;
  for (std::size_t f = 0; f < paths.size(); ++f) {
    std::vector<T> rows = make_rows(paths[f], sizes.size());
    if (rows.empty()) continue;
    if (paths.size() == 1) {
      for (std::size_t begin = 0; begin < rows.size(); begin += chunk_size)
        sizes.push_back(std::min(chunk_size, rows.size() - begin));
    } else {
      sizes.push_back(rows.size());
    }
    values.insert(values.end(), rows.begin(), rows.end());
  }
  if (values.empty()) throw EmptyDatasetError("input files contain no data rows");
  DataSource src{std::vector<std::filesystem::path>(paths.begin(), paths.end())};
  return BasicShardedDataset<T>::from_blocks(std::move(values), sizes, std::move(src));
}

}  // namespace

ShardedDataset ingest_csv(std::span<const std::filesystem::path> paths,
                          const ColumnSelector& column, std::size_t chunk_size) {
  return ingest<double>(paths, chunk_size,
                        [&](const std::filesystem::path& file, std::size_t shard) {
                          const ColumnSelector sel[] = {column};
                          return std::move(read_columns(file, sel, shard)[0]);
                        });
}

PairedDataset ingest_csv_pairs(std::span<const std::filesystem::path> paths,
                               const ColumnSelector& x_column,
                               const ColumnSelector& y_column, std::size_t chunk_size) {
  return ingest<Point>(paths, chunk_size,
                       [&](const std::filesystem::path& file, std::size_t shard) {
                         const ColumnSelector sel[] = {x_column, y_column};
                         auto cols = read_columns(file, sel, shard);
                         std::vector<Point> rows(cols[0].size());
                         for (std::size_t i = 0; i < rows.size(); ++i)
                           rows[i] = {cols[0][i], cols[1][i]};
                         return rows;
                       });
}

}  // namespace parstat
