#pragma once

#include <cstdint>
#include <functional>

namespace reachkit {

// Worker count: hardware concurrency clamped by the REACHKIT_THREADS
// environment variable (values < 1 mean serial).
unsigned thread_count();

// Runs fn(begin, end) over a partition of [0, n). Chunks are contiguous and
// the call blocks until all finish. fn must only write state owned by its
// own index range; under that contract results never depend on scheduling.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace reachkit
