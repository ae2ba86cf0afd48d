#pragma once

#include <cstddef>
#include <functional>

namespace moframe {

/// Number of worker threads for grid evaluation: hardware concurrency capped
/// by the MOFRAME_THREADS environment variable (read once per process).
int thread_cap();

/// Run fn(0..n-1), possibly across threads. Callers store results by index,
/// so output is identical for any thread count. Exceptions are captured and
/// the lowest-index one rethrown after all tasks finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace moframe
