#pragma once

#include <functional>

namespace apsum::detail {

// Worker count: APSUM_THREADS if set, otherwise hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, n) on worker threads. The caller must write
// results into per-index storage; the partition of indices over threads
// never influences the output, so results are deterministic.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace apsum::detail
