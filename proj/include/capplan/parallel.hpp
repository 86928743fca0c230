#pragma once

#include <cstddef>
#include <functional>

namespace capplan {

// Calls fn(i) for every i in [0, count) on up to `jobs` threads. Results
// must be written by index. If calls throw, the exception of the smallest
// index is rethrown after all workers finish.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace capplan
