#pragma once

#include <cstddef>
#include <functional>

namespace rcq {

/// Worker count from the RCQ_WORKERS environment variable, defaulting to the
/// hardware concurrency. Always at least 1.
unsigned worker_count_from_env();

/// Runs fn(0..count-1) across `workers` threads (0 = from environment).
/// Each index is claimed exactly once; results must be written to
/// preallocated per-index slots so the reduction order — and therefore every
/// output byte — is independent of scheduling.
void run_trials(std::size_t count, unsigned workers,
                const std::function<void(std::size_t)>& fn);

}  // namespace rcq
