#pragma once

#include <cstdint>
#include <functional>

namespace algc {

// Runs fn(0..count-1) on up to `threads` workers. Callers store results by
// run index, so output never depends on the thread count. threads == 0 uses
// the hardware concurrency.
void parallel_runs(uint32_t count, uint32_t threads,
                   const std::function<void(uint32_t)>& fn);

}  // namespace algc
