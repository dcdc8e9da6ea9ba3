#pragma once

#include <cstddef>
#include <functional>

namespace cauchylab {

/// Thread count taken from CAUCHYLAB_THREADS, else hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n). Work items must be independent and write
/// only to their own output slot; the result is then identical for any
/// schedule. Exceptions are captured and rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace cauchylab
