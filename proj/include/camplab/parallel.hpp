#pragma once

#include <cstddef>
#include <functional>

namespace camplab {

// Number of worker threads to use: `requested` if positive, otherwise the
// CAMP_LAB_THREADS environment variable if set and positive, otherwise the
// hardware concurrency. The environment variable wins over `requested` when
// both are set (it is the operator's override).
int resolve_threads(int requested = 0);

// Runs fn(i) for i in [0, n) on `threads` workers pulling indices from a
// shared counter. Results must be written into per-index slots by the caller,
// which makes the output independent of the scheduling order. Exceptions
// thrown by fn are captured and the first one is rethrown after all workers
// finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace camplab
