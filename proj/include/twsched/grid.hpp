#pragma once

#include "twsched/task_graph.hpp"
#include "twsched/time_window.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace twsched {

// One cell of a grid row: a span of time that either runs a task or waits.
// `designee` remembers which task the cell was shaped for; masking clears
// occupants but keeps designees, which is how reserved capacity is expressed.
struct GridSlot {
    TimeWindow window;
    std::optional<TaskId> occupant;
    std::optional<TaskId> designee;

    [[nodiscard]] bool idle() const { return !occupant.has_value(); }
};

// A gapless run of slots: each slot starts exactly where the previous one
// finishes.  Waiting periods are explicit idle slots, so a row maps one to
// one onto a stream's queue.
struct GridRow {
    std::vector<GridSlot> slots;

    [[nodiscard]] bool empty() const { return slots.empty(); }
    [[nodiscard]] Time head() const;         // start of the first slot, 0 if empty
    [[nodiscard]] Time tail() const;         // finish of the last slot, 0 if empty
    [[nodiscard]] Time busy_length() const;  // total occupied time; open-ended slots count 0
};

struct Grid {
    std::vector<GridRow> rows;
    std::uint64_t creation_index = 0; // registry tie-break, stamped at allocation

    [[nodiscard]] bool empty() const { return rows.empty(); }
};

// Lay out every batch task at its declared window, walking the batch in
// (start, finish, id) order and pulling each task's declared-parallel
// partners onto distinct rows next to it.  Constrained tasks keep their
// windows verbatim; tasks with no constraints at all may slide right to a
// row's tail.  Rows opened after the first pass wait from the grid's start.
// `backlog` tasks are then worked into idle space, or appended to the
// lightest row, opening a fresh row when that strictly lowers the spread.
// Throws UnsuitableSystemError when more than `max_rows` rows are needed.
[[nodiscard]] Grid build_grid(const TaskSet& tasks, const std::vector<TaskId>& batch,
                              const std::vector<TaskId>& backlog, std::size_t max_rows);

// Hull of all rows: earliest slot start to latest slot finish.
[[nodiscard]] TimeWindow grid_window(const Grid& grid);

// Largest number of scheduled tasks on any single stream.
[[nodiscard]] std::size_t compute_mnst(std::span<const std::size_t> stream_task_counts);

// Grids whose row count divides the stream total tile the system evenly;
// otherwise total mod rows streams would sit permanently idle.
[[nodiscard]] bool divisibility_ok(std::size_t grid_rows, std::size_t total_streams);

// Copy of the grid with every occupant except `keep` lifted out; their slots
// stay reserved via the designee marks.
[[nodiscard]] Grid mask(const Grid& grid, const TaskId& keep);

// True when `task` has a reserved slot that is still idle and wide enough to
// hold `window`.
[[nodiscard]] bool accepts(const Grid& grid, const TaskId& task, const TimeWindow& window);

// Row/slot coordinates of the reserved slot `accepts` would use.
[[nodiscard]] std::optional<std::pair<std::size_t, std::size_t>>
accepting_slot(const Grid& grid, const TaskId& task, const TimeWindow& window);

// Put `task` back into its reserved slot.  Throws ConfigError when the grid
// never reserved a slot for it or the slot is already occupied.
void fill_designated(Grid& grid, const TaskId& task);

// One line per row: "[a,b:task][b,c:IDLE]...".
[[nodiscard]] std::string dump_grid(const Grid& grid);

} // namespace twsched
