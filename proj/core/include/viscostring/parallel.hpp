#pragma once

#include <cstddef>
#include <functional>

namespace viscostring {

/// Process-wide cap on worker threads used by the mode sweeps.
/// 0 restores the default (hardware concurrency).
void set_max_threads(int threads);
int max_threads();

/// Runs body(i) for i in [0, count). Each index is executed exactly once;
/// bodies must write only to their own slot. Exceptions are rethrown on the
/// calling thread (the one with the lowest index wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace viscostring
