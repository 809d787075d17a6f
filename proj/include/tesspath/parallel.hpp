#pragma once

#include <cstddef>
#include <functional>

namespace tesspath {

// Worker count: TESS_PATHS_THREADS if set and positive, otherwise the
// hardware concurrency (at least 1).
int thread_count();

// Calls body(i) for every i in [0, count) on up to thread_count() threads.
// The first exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tesspath
