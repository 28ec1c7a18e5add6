#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace parstat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PartitionError : public Error {
 public:
  using Error::Error;
};

/// Raised while reading input files. `shard()` is the index of the shard
/// (file or chunk) being built when the failure happened.
class IngestError : public Error {
 public:
  IngestError(const std::string& what, std::size_t shard)
      : Error(what), shard_(shard) {}
  std::size_t shard() const noexcept { return shard_; }

 private:
  std::size_t shard_;
};

class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

/// A value falls outside the domain an operation accepts.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The bandwidth equation has no sign change on the search grid.
class NoSolutionError : public Error {
 public:
  NoSolutionError(const std::string& what, double x) : Error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// Too few weighted points, or a numerically singular local system.
class DegenerateNeighborhoodError : public Error {
 public:
  DegenerateNeighborhoodError(const std::string& what, double x)
      : Error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

}  // namespace parstat
