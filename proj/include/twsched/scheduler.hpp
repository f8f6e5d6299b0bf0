#pragma once

#include "twsched/grid.hpp"
#include "twsched/task_graph.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace twsched {

// One committed span in a stream's queue: either a task execution or a wait
// (reserved or bridging time the stream spends doing nothing).
struct StreamEntry {
    enum class Kind { Task, Wait };
    Kind kind = Kind::Wait;
    TaskId task;      // set when kind == Task
    Time begin, end;  // end may be infinite for an open-ended reservation
};

struct Stream {
    std::vector<StreamEntry> queue;

    [[nodiscard]] Time tail() const;           // end of the last entry, waits included
    [[nodiscard]] Time finishing_time() const; // end of the last task entry
    [[nodiscard]] std::size_t task_count() const;
};

struct Robot {
    std::string id;
    std::vector<Stream> streams;

    [[nodiscard]] std::size_t capacity() const { return streams.size(); }
};

// Per-robot overrides: how long a task runs on a given robot and how much
// dispatch lag its window picks up there.  Tasks fall back to their own
// completion time and zero lag.
class ExecutionProfile {
public:
    void set_exec(const TaskId& task, const std::string& robot, Time value);
    void set_dispatch_offset(const TaskId& task, const std::string& robot, Time value);
    [[nodiscard]] Time exec_time(const Task& task, const std::string& robot) const;
    [[nodiscard]] Time dispatch_offset(const TaskId& task, const std::string& robot) const;

private:
    std::map<std::pair<TaskId, std::string>, Time> exec_;
    std::map<std::pair<TaskId, std::string>, Time> offset_;
};

// Cumulative execution spans of the tasks committed to a stream: entry i runs
// from the summed length of entries 0..i-1 to that sum plus its own length.
// Waits contribute nothing, so the frame is the stream's pure work profile.
[[nodiscard]] std::vector<std::pair<Time, Time>> time_frame(const Stream& stream);

// Which stream one grid row went to, with the evidence for why.
struct RowDispatch {
    std::size_t row = 0;
    std::size_t robot = 0;
    std::size_t stream = 0;
    Time finishing_before;                // that stream's finishing time at selection
    std::vector<Time> eligible_finishing; // finishing times of every stream considered
};

struct PlacementReport {
    enum class Branch { ReservedSlot, NewGrid };
    Branch branch = Branch::NewGrid;
    TaskId task;
    std::uint64_t grid_creation = 0;

    // ReservedSlot: where the task landed inside the accepting grid.
    std::size_t row = 0, slot = 0;
    std::size_t robot = 0, stream = 0;

    // NewGrid: one dispatch per grid row, in row order.
    std::vector<RowDispatch> rows;
    Time delay{}; // common start delay applied to the whole grid
};

// Mutable system state: robots with their stream queues plus the registry of
// still-open grids.  Tasks arrive one at a time through allocate_task, which
// follows two branches:
//
//   1. Some open grid already reserved a slot for the task and the slot still
//      covers the requested window: the task drops into the reservation and
//      splits the stream's committed wait around its execution time.
//
//   2. Otherwise the task's whole constraint component is laid out as a fresh
//      grid, the grid is masked down to the arriving task (partners keep
//      reserved slots), rows are dealt to streams -- picking the stream with
//      the smallest finishing time for each row -- and the whole grid is
//      delayed by one common amount so every row clears its stream's
//      existing commitments.
//
// Tasks declared to run simultaneously are kept on one robot, which must have
// strictly more streams than the group has members.
class ScheduleState {
public:
    ScheduleState(std::vector<Robot> robots, const TaskSet& tasks, ExecutionProfile profile = {});

    PlacementReport allocate_task(const TaskId& id); // request = declared window
    PlacementReport allocate_task(const TaskId& id, const TimeWindow& window);

    [[nodiscard]] bool scheduled(const TaskId& id) const;
    // Window the task actually occupies: its declared window plus the common
    // delay of the grid it landed in.  Throws ConsistencyError if unscheduled.
    [[nodiscard]] TimeWindow realized_window(const TaskId& id) const;
    [[nodiscard]] std::vector<Time> finishing_times() const; // all streams, robot-major
    [[nodiscard]] Time makespan() const;
    [[nodiscard]] std::vector<std::size_t> stream_task_counts() const;
    [[nodiscard]] std::size_t active_grid_count() const { return active_.size(); }
    [[nodiscard]] const std::vector<Robot>& robots() const { return robots_; }
    [[nodiscard]] const Grid& active_grid(std::size_t i) const { return active_[i].grid; }

    // Reservations whose realized window has fully passed are dropped on the
    // next allocation.
    void advance_clock(Time now);

    // One line per stream: "robot=<id> stream=<j> tasks=<a:b:...> finish=<t>".
    [[nodiscard]] std::string dump() const;

private:
    struct ActiveGrid {
        Grid grid; // slot windows in declared coordinates; realized = declared + delay
        std::uint64_t creation = 0;
        Time delay{};
        std::vector<std::pair<std::size_t, std::size_t>> row_home; // row -> robot, stream
        std::size_t unfilled = 0;
    };

    Stream& stream_at(std::size_t robot, std::size_t stream);
    void sweep_expired();
    bool try_reserved_slot(const TaskId& id, const TimeWindow& window, PlacementReport& report);
    PlacementReport dispatch_new_grid(const TaskId& id, const TimeWindow& window);

    std::vector<Robot> robots_;
    const TaskSet& tasks_;
    ExecutionProfile profile_;
    std::vector<ActiveGrid> active_; // sorted by (window start, creation)
    std::map<TaskId, TimeWindow> realized_; // scheduled tasks -> occupied window
    std::uint64_t next_creation_ = 0;
    Time clock_{};
};

} // namespace twsched
