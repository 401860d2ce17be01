#pragma once

#include <cstddef>
#include <functional>

namespace expcensus {

/// Caps worker parallelism; 0 restores the default (hardware concurrency).
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(i) for i in [0, n). Indices are split into fixed contiguous
/// blocks, one per worker, so callers that write results by index get the
/// same output for every thread count. The first exception thrown by the
/// lowest failing block is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace expcensus
