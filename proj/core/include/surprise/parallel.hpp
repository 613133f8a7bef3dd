#pragma once

#include <cstdint>
#include <functional>

namespace surprise {

/// Worker budget: SURPRISE_SIM_THREADS when set (clamped to >= 1), otherwise
/// the machine's hardware parallelism.
int default_worker_count();

/// Runs fn over contiguous chunks of [0, count) on `workers` threads
/// (0 = default budget). Chunking is static, so output written per-index is
/// identical at any worker count. The first exception is rethrown.
void parallel_for(std::int64_t count, int workers,
                  const std::function<void(std::int64_t begin, std::int64_t end)>& fn);

}  // namespace surprise
