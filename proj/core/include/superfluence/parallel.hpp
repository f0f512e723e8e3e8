#pragma once

#include <cstddef>
#include <functional>

namespace superfluence {

/// Worker count: SUPERFLUENCE_THREADS when set and positive, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers with dynamic
/// scheduling. The first exception thrown by any body is rethrown after all
/// workers have stopped.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace superfluence
