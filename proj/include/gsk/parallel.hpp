#pragma once

#include <functional>

namespace gsk {

/// Worker count: SKL_THREADS when set (>= 1), otherwise the hardware
/// concurrency, at least 1.
int thread_budget();

/// Run work(i) for i in [0, total) across the thread budget.  Tasks are
/// claimed by atomic index; each index is processed exactly once, so
/// results stored per index are identical for any thread count.
void parallel_for_index(int total, const std::function<void(int)>& work);

/// Split [0, total) into `thread_budget()` contiguous chunks and run
/// work(begin, end, chunk) on each.  Per-chunk partial results combined in
/// chunk order give reductions that are reproducible at a fixed thread
/// count.
void parallel_chunks(int total, const std::function<void(int, int, int)>& work,
                     int* chunk_count);

}  // namespace gsk
