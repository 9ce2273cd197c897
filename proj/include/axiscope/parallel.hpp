#pragma once

#include <cstddef>
#include <functional>

namespace axiscope {

/// Worker count: AXISCOPE_THREADS when set to a positive integer, else the
/// hardware concurrency (at least 1).
unsigned thread_budget();

/// Runs fn(i) for i in [0, n). Results must be written to per-index slots;
/// the first exception thrown by any task is rethrown after all tasks stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace axiscope
