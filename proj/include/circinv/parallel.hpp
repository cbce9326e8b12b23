#pragma once

#include <cstddef>
#include <functional>

namespace circinv {

/// Worker count: CIRCINV_THREADS if set (≥ 1), else hardware concurrency.
int worker_count();

/// Calls body(i) for i in [0, n) on up to worker_count() threads. Each index
/// is processed exactly once; callers write results to per-index slots so
/// the outcome does not depend on scheduling. If any call throws, the
/// exception from the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace circinv
