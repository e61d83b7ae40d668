#pragma once

#include <cstddef>
#include <functional>

namespace steinctrl {

// Worker budget: STEINCTRL_THREADS caps parallelism, 0 or unset means one
// worker per hardware thread.
std::size_t worker_count();

// Runs fn(0..count-1) across the worker budget with static chunking. Workers
// write to disjoint slots chosen by index, so results are deterministic
// regardless of scheduling. The first exception thrown by any index is
// rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace steinctrl
