#pragma once

#include <cstddef>
#include <functional>

namespace carver {

/// Worker cap from CARVER_THREADS (unset or 0 means hardware concurrency).
int worker_count();

/// Runs body(i) for i in [0, n). Results must be written to per-index
/// slots so output does not depend on scheduling. The first exception
/// thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace carver
