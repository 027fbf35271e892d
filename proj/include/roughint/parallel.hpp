#pragma once

#include <cstddef>
#include <functional>

namespace roughint {

/// Upper bound on worker threads used by the compute kernels. Defaults to
/// the hardware concurrency; 1 disables threading entirely.
void set_max_threads(int n);
int max_threads();

/// Runs body(i) for i in [0, count). Work is handed out in index order from
/// a shared counter; callers store results per index and reduce afterwards
/// so the outcome never depends on the schedule. Exceptions thrown by body
/// are rethrown on the calling thread (the first one wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace roughint
