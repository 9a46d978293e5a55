#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace hullbench {

/// Worker count: hardware concurrency, capped by the HULLBENCH_THREADS
/// environment variable when set.
int worker_count();

/// Runs body(begin, end) over fixed-size chunks of [0, n). Chunk boundaries
/// depend only on n and grain, never on the worker count, so writes to
/// disjoint per-index output are reproducible under any parallelism.
void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body);

/// Deterministic sum reduction: per-chunk partials are computed in index
/// order within each chunk and folded sequentially in chunk order, giving
/// bit-identical results for any worker count.
double parallel_sum(std::size_t n, std::size_t grain,
                    const std::function<double(std::size_t, std::size_t)>& chunk_sum);

}  // namespace hullbench
