#pragma once

#include <cstddef>
#include <functional>

namespace plab {

/// Number of worker threads: min(hardware_concurrency, PLUNGE_LAB_THREADS).
/// PLUNGE_LAB_THREADS=1 disables threading entirely.
int worker_count();

/// Runs fn(i) for i in [0, n). Work is split into contiguous blocks; results
/// must be written to disjoint per-index slots so that reductions can be done
/// sequentially afterwards (keeps floating-point sums reproducible).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace plab
