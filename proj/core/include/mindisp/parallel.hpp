#pragma once

#include <cstdint>
#include <functional>

namespace mindisp::par {

// Caps worker count for parallel_for. n <= 0 selects hardware concurrency.
void set_max_threads(int n);
int max_threads();

// Runs fn(i) for i in [0, n) split into contiguous per-worker blocks.
// fn must only write to slots owned by its index, so results do not depend
// on the worker count or scheduling order.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace mindisp::par
