#pragma once

#include <cstddef>
#include <functional>

namespace linexplain {

// Runs fn(0..count-1) on up to `parallelism` threads (0 = hardware threads).
// Work items must write to disjoint, preallocated slots; callers get
// deterministic results regardless of thread count because ordering is
// re-established by index, never by completion time. The first exception
// thrown by any item is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned parallelism,
                  const std::function<void(std::size_t)>& fn);

}  // namespace linexplain
