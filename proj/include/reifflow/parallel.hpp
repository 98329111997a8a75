#pragma once

#include <cstddef>
#include <functional>

namespace reifflow {

/// Worker count: REIFFLOW_THREADS if set, else hardware concurrency.
int worker_count();

/// Runs fn(begin, end) over disjoint chunks of [0, n) on a persistent pool.
/// Deterministic as long as chunks write disjoint state, which is the only
/// use made of it here. Serial when n < min_parallel; nested calls also run
/// serially (the pool is not reentrant).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                  std::size_t min_parallel = 2048);

}  // namespace reifflow
