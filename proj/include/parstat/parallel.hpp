#pragma once

#include <cstddef>
#include <functional>

namespace parstat {

/// Worker count to use for a request of `requested` (0 = hardware default).
std::size_t resolve_workers(std::size_t requested) noexcept;

/// Runs fn(0) .. fn(n-1) on up to `workers` threads. Tasks are claimed from
/// a shared counter, so the assignment of tasks to threads is unspecified.
/// The first exception thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace parstat
