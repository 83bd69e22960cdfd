#pragma once

#include <cstddef>
#include <functional>

namespace repcut {

/// Worker count: REPCUT_THREADS if set and positive, otherwise the hardware
/// concurrency (at least 1). set_thread_limit overrides both.
int thread_count();
void set_thread_limit(int threads);

/// Runs fn(i) for i in [0, n) on up to thread_count() workers. Each index is
/// visited exactly once; callers write results into per-index slots and reduce
/// afterwards so the outcome is independent of scheduling. Calls made from
/// inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace repcut
