#pragma once

#include <cstdint>
#include <functional>

namespace dbsim {

/// Threads to actually use: requested if >= 1, otherwise the hardware
/// concurrency (at least 1).
int resolve_thread_count(int requested);

/// Runs body(i) for i in [0, n) across the given number of threads with a
/// static block partition. Callers must make iterations independent (each
/// writes its own output slot), which keeps results identical for every
/// thread count. The first exception thrown by any iteration is rethrown.
void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t)>& body);

}  // namespace dbsim
