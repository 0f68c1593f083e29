#pragma once

#include <functional>

namespace wlab {

// Worker count: explicit argument if > 0, else WILLMORE_LAB_THREADS, else
// hardware concurrency.
int resolve_thread_count(int requested = 0);

// Runs fn(0..n-1) across up to `threads` workers. Tasks must write results
// into their own slots; outputs are then independent of the worker count.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

} // namespace wlab
