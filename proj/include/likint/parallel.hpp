#pragma once

#include "likint/types.hpp"

#include <functional>

namespace likint {

// 0 means "all hardware threads"; always returns >= 1.
int resolve_threads(int requested);

// Runs body(i) for i in [begin, end). Work is split into contiguous blocks;
// each index owns its output slot, so results do not depend on the thread
// count. The first exception thrown by any worker is rethrown to the caller.
void parallel_for(Index begin, Index end, int threads, const std::function<void(Index)>& body);

}  // namespace likint
