#pragma once

#include <cstddef>

namespace obcs {

/// Number of workers to use: `requested` if nonzero, else the OBCS_WORKERS
/// environment variable, else hardware concurrency (at least 1).
unsigned resolve_workers(unsigned requested);

/// Runs fn(i) for i in [0, count) on a small thread pool. Work items must be
/// independent; results should be written to preassigned slots so the output
/// does not depend on scheduling. Exceptions from workers are rethrown.
void parallel_for(std::size_t count, unsigned workers, void (*fn)(std::size_t, void*),
                  void* context);

template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    parallel_for(
        count, workers,
        [](std::size_t i, void* ctx) { (*static_cast<Fn*>(ctx))(i); },
        const_cast<void*>(static_cast<const void*>(&fn)));
}

}  // namespace obcs
