#pragma once

#include <cstddef>
#include <functional>

namespace isingdrift {

// Worker count: ISINGDRIFT_THREADS if set, otherwise hardware concurrency.
unsigned default_threads();

// Runs body(i) for i in [0, n) on up to `threads` workers.  Each index is handled
// exactly once; the first exception thrown is rethrown on the caller's thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace isingdrift
