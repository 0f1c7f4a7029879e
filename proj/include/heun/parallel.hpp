#pragma once

#include <cstddef>
#include <functional>

namespace heun {

/// Worker threads for independent jobs: hardware concurrency, capped by
/// $HEUN_SPECTRA_THREADS when it holds a positive integer.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. The first
/// exception thrown by any job is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace heun
