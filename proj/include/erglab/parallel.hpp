#pragma once

#include <cstddef>
#include <functional>

namespace erglab {

/// Worker count for parallel_for. Defaults to ERGLAB_THREADS if set, else the
/// hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Calls body(i) for every i in [0, count). Work is split into contiguous
/// ranges; body must write only to slots owned by i. Results stored per index
/// are independent of the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace erglab
