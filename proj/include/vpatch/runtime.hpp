#pragma once

#include <cstddef>
#include <functional>

namespace vpatch {

// Thread cap: explicit setter wins, then VPATCH_THREADS, then hardware count.
void set_thread_limit(int n);
int thread_limit();

// Chunked parallel loop over [0, n). Results must not depend on the chunking:
// callers reduce per-index values with order-independent operations only
// (min/max keyed by index). Runs inline when the cap or n is 1.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& chunk);

const char* library_version();

} // namespace vpatch
