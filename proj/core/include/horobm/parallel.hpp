#pragma once

#include <cstddef>
#include <functional>

namespace horobm {

/// Worker count: HOROBM_THREADS env var if set (clamped to >= 1),
/// otherwise hardware concurrency.
int worker_count();

/// Runs fn(begin, end, worker) over a partition of [0, n) into one chunk per
/// worker. Serial when a single worker is active. Callers own any merging;
/// results must not depend on the partition for determinism contracts to hold.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, int)> &fn);

}  // namespace horobm
