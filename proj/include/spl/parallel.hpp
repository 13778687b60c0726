#pragma once

#include <cstddef>
#include <functional>

namespace spl {

/// Worker cap from the SPL_THREADS environment variable (0 or unset = auto).
int worker_count();

/// Run fn(i) for i in [0, n). Work is chunked over worker threads; callers
/// write results into per-index slots so reductions stay deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace spl
