#pragma once

#include <cstddef>
#include <functional>

namespace theta4 {

/// Worker count for batch evaluation: THETA4_THREADS if set to a positive
/// integer, otherwise the hardware concurrency.
std::size_t thread_limit();

/// Runs body(i) for i in [0, n) on up to thread_limit() threads. The first
/// exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace theta4
