#pragma once

#include <cstddef>
#include <functional>

namespace geoctl {

/// Worker count: hardware concurrency, capped by the GEOCTL_THREADS environment variable.
int worker_count();

/// Runs fn(0..n-1) on a pool of worker_count() threads. Callers write results into
/// index-keyed slots, so output order never depends on completion order. The exception
/// thrown for the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace geoctl
