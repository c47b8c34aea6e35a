#pragma once

#include <cstddef>
#include <functional>

namespace tropmirror {

// Worker count: TROPMIRROR_THREADS if set (>= 1), else hardware concurrency.
std::size_t thread_count();

// Runs f(k) for k in [0, n). Exceptions are rethrown on the caller (first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace tropmirror
