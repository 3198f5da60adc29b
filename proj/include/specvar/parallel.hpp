#pragma once

#include <cstddef>
#include <functional>

namespace specvar {

/// Worker cap: SPECVAR_THREADS when set to a positive integer, otherwise the
/// machine's hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Each
/// index is visited exactly once; the first exception thrown is rethrown
/// after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace specvar
