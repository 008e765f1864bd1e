#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace homalg {

// Worker cap: HOMALG_THREADS when set, otherwise the hardware concurrency.
int thread_cap();

// Runs fn(0..n-1) across at most thread_cap() workers. Tasks must be
// independent; the first exception is rethrown.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace homalg
