#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace henon {

/// Worker count used by the tile loops; 0 means "let the runtime decide".
void set_thread_count(int threads);
int thread_count();

/// Calls body(i) for i in [0, n). Iterations run concurrently and must write
/// disjoint outputs; the result is independent of the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Deterministic sum of body(i) over [0, n): per-chunk partial sums are
/// combined in chunk order, so the value never depends on the thread count.
double parallel_sum(std::size_t n, const std::function<double(std::size_t)>& body);

}  // namespace henon
