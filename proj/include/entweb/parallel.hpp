#pragma once

#include <cstddef>
#include <functional>

namespace entweb {

/// Worker count: ENTWEB_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(begin, end) over disjoint chunks covering [0, count). Chunks are
/// fixed by `count` and `chunk` alone, so any per-index output is independent
/// of the schedule. Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t count, std::size_t chunk, const std::function<void(std::size_t, std::size_t)> &body);

} // namespace entweb
