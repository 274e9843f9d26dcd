#pragma once

#include <cstddef>
#include <functional>

namespace toric {

/// Worker count: TORIC_EXC_THREADS when set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

/// Runs body(slice) for slice in [0, slices) on up to worker_count() threads.
/// Slices are claimed dynamically; callers merge per-slice results in slice
/// order so the outcome does not depend on scheduling. The first exception
/// thrown by any slice is rethrown after all workers stop.
void parallel_for_slices(std::size_t slices, const std::function<void(std::size_t)>& body);

}  // namespace toric
