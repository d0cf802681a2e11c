#pragma once

#include <cstddef>
#include <functional>

namespace hls {

/// Resolve a requested worker count; 0 means one per hardware thread.
int resolve_workers(int requested);

/// Split [0, count) into `workers` contiguous chunks and run body(worker, begin, end)
/// on each. Chunk boundaries depend only on (count, workers), never on scheduling.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(int, std::size_t, std::size_t)>& body);

}  // namespace hls
