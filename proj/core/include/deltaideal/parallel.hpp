#pragma once

#include <cstdint>
#include <functional>

namespace deltaideal {

/// Number of worker threads used for independent work items.
/// Respects the DELTA_IDEAL_THREADS environment variable (values < 1 mean 1);
/// defaults to the hardware concurrency.
int worker_thread_count();

/// Runs fn(i) for i in [0, count). Work items must be independent; callers
/// that reduce over results should write into a preallocated slot per index
/// so the outcome does not depend on scheduling order.
void parallel_for(int count, const std::function<void(int)>& fn);

/// splitmix64 step, used to derive independent per-task RNG seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace deltaideal
