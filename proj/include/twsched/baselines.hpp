#pragma once

#include "twsched/balancing.hpp"
#include "twsched/rng.hpp"
#include "twsched/time.hpp"

#include <cstddef>
#include <vector>

namespace twsched {

// Reference allocators the balancing rule is measured against.  Each one
// walks the batch in arrival order and returns how much work it appended to
// every machine; callers accumulate the deltas into their running loads.

// Every task lands on an independently uniform machine.
[[nodiscard]] LoadVector assign_random(const std::vector<Time>& tasks, std::size_t machines,
                                       Rng& rng);

// Strict rotation: task i goes to machine (cursor + i) mod machines.  The
// cursor persists across batches so the rotation never restarts.
[[nodiscard]] LoadVector assign_fifo(const std::vector<Time>& tasks, std::size_t machines,
                                     std::size_t& cursor);

// Join the shortest queue, counted in tasks rather than time; lowest index
// wins ties.  queue_counts persists across batches.
[[nodiscard]] LoadVector assign_greedy(const std::vector<Time>& tasks, std::size_t machines,
                                       std::vector<std::size_t>& queue_counts);

} // namespace twsched
