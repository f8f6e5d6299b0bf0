#include "twsched/scheduler.hpp"

#include "twsched/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

namespace twsched {

Time Stream::tail() const { return queue.empty() ? Time{} : queue.back().end; }

Time Stream::finishing_time() const {
    for (auto it = queue.rbegin(); it != queue.rend(); ++it)
        if (it->kind == StreamEntry::Kind::Task) return it->end;
    return Time{};
}

std::size_t Stream::task_count() const {
    return static_cast<std::size_t>(std::count_if(
        queue.begin(), queue.end(),
        [](const StreamEntry& e) { return e.kind == StreamEntry::Kind::Task; }));
}

std::vector<std::pair<Time, Time>> time_frame(const Stream& stream) {
    std::vector<std::pair<Time, Time>> frame;
    Time elapsed{};
    for (const StreamEntry& entry : stream.queue) {
        if (entry.kind != StreamEntry::Kind::Task) continue;
        const Time next = elapsed + (entry.end - entry.begin);
        frame.emplace_back(elapsed, next);
        elapsed = next;
    }
    return frame;
}

void ExecutionProfile::set_exec(const TaskId& task, const std::string& robot, Time value) {
    exec_[{task, robot}] = value;
}

void ExecutionProfile::set_dispatch_offset(const TaskId& task, const std::string& robot,
                                           Time value) {
    offset_[{task, robot}] = value;
}

Time ExecutionProfile::exec_time(const Task& task, const std::string& robot) const {
    const auto it = exec_.find({task.id, robot});
    return it == exec_.end() ? task.exec : it->second;
}

Time ExecutionProfile::dispatch_offset(const TaskId& task, const std::string& robot) const {
    const auto it = offset_.find({task, robot});
    return it == offset_.end() ? Time{} : it->second;
}

ScheduleState::ScheduleState(std::vector<Robot> robots, const TaskSet& tasks,
                             ExecutionProfile profile)
    : robots_(std::move(robots)), tasks_(tasks), profile_(std::move(profile)) {
    if (robots_.empty()) throw ConfigError("system needs at least one robot");
    std::set<std::string> ids;
    for (const Robot& robot : robots_) {
        if (robot.streams.empty()) throw ConfigError("robot " + robot.id + " has no streams");
        if (!ids.insert(robot.id).second) throw ConfigError("duplicate robot id: " + robot.id);
    }
}

Stream& ScheduleState::stream_at(std::size_t robot, std::size_t stream) {
    return robots_[robot].streams[stream];
}

void ScheduleState::sweep_expired() {
    std::erase_if(active_, [&](const ActiveGrid& ag) {
        return grid_window(ag.grid).finish() + ag.delay < clock_;
    });
}

void ScheduleState::advance_clock(Time now) {
    if (now < clock_) throw ConfigError("clock cannot move backwards");
    clock_ = now;
    sweep_expired();
}

bool ScheduleState::scheduled(const TaskId& id) const { return realized_.count(id) != 0; }

TimeWindow ScheduleState::realized_window(const TaskId& id) const {
    if (!tasks_.contains(id)) throw ConfigError("unknown task: " + id);
    const auto it = realized_.find(id);
    if (it == realized_.end()) throw ConsistencyError("task not scheduled yet: " + id);
    return it->second;
}

PlacementReport ScheduleState::allocate_task(const TaskId& id) {
    return allocate_task(id, tasks_.at(id).window);
}

PlacementReport ScheduleState::allocate_task(const TaskId& id, const TimeWindow& window) {
    static_cast<void>(tasks_.at(id));
    if (realized_.count(id)) throw ConfigError("task already scheduled: " + id);
    sweep_expired();

    PlacementReport report;
    report.task = id;
    if (try_reserved_slot(id, window, report)) return report;
    return dispatch_new_grid(id, window);
}

bool ScheduleState::try_reserved_slot(const TaskId& id, const TimeWindow& window,
                                      PlacementReport& report) {
    const Task& task = tasks_.at(id);
    for (std::size_t g = 0; g < active_.size(); ++g) {
        ActiveGrid& ag = active_[g];
        for (std::size_t r = 0; r < ag.grid.rows.size(); ++r) {
            const auto [robot_idx, stream_idx] = ag.row_home[r];
            const std::string& robot_id = robots_[robot_idx].id;
            const TimeWindow request =
                window.shifted(profile_.dispatch_offset(id, robot_id));
            for (std::size_t s = 0; s < ag.grid.rows[r].slots.size(); ++s) {
                GridSlot& slot = ag.grid.rows[r].slots[s];
                if (slot.designee != id || !slot.idle()) continue;
                if (!slot.window.contains(request)) continue;

                const Time exec = profile_.exec_time(task, robot_id);
                const Time begin = std::max(slot.window.start(), request.start());
                const Time end = begin + exec;
                if (end > slot.window.finish()) continue;

                // The reservation was committed as one wait entry at the
                // slot's shifted span; split the execution out of it.
                const Time wait_begin = slot.window.start() + ag.delay;
                const Time wait_end = slot.window.finish() + ag.delay;
                Stream& stream = stream_at(robot_idx, stream_idx);
                auto entry = std::find_if(
                    stream.queue.begin(), stream.queue.end(), [&](const StreamEntry& e) {
                        return e.kind == StreamEntry::Kind::Wait && e.begin == wait_begin &&
                               e.end == wait_end;
                    });
                if (entry == stream.queue.end())
                    throw ConsistencyError("reserved slot for " + id +
                                           " lost its committed stream wait");

                const Time run_begin = begin + ag.delay;
                const Time run_end = end + ag.delay;
                auto insert_at = stream.queue.erase(entry);
                std::vector<StreamEntry> pieces;
                if (wait_begin < run_begin)
                    pieces.push_back({StreamEntry::Kind::Wait, {}, wait_begin, run_begin});
                pieces.push_back({StreamEntry::Kind::Task, id, run_begin, run_end});
                if (run_end < wait_end)
                    pieces.push_back({StreamEntry::Kind::Wait, {}, run_end, wait_end});
                stream.queue.insert(insert_at, pieces.begin(), pieces.end());

                slot.occupant = id;
                --ag.unfilled;
                realized_.insert({id, TimeWindow(wait_begin, wait_end)});

                report.branch = PlacementReport::Branch::ReservedSlot;
                report.grid_creation = ag.creation;
                report.row = r;
                report.slot = s;
                report.robot = robot_idx;
                report.stream = stream_idx;

                if (ag.unfilled == 0)
                    active_.erase(active_.begin() + static_cast<std::ptrdiff_t>(g));
                return true;
            }
        }
    }
    return false;
}

PlacementReport ScheduleState::dispatch_new_grid(const TaskId& id, const TimeWindow& window) {
    std::size_t nt_total = 0;
    for (const Robot& robot : robots_) nt_total += robot.capacity();

    // The task drags its whole constraint component along; partners already
    // scheduled in earlier grids stay where they are.
    std::vector<TaskId> component;
    for (const TaskId& member : tasks_.component_of(id))
        if (!realized_.count(member)) component.push_back(member);

    // Simultaneity classes need one robot with strictly more streams than
    // the class has members; fail before any state changes.
    const EqualsClasses classes = merge_equal_classes(tasks_);
    std::map<std::size_t, std::size_t> class_count;
    for (const TaskId& member : component)
        ++class_count[classes.class_of[tasks_.index_of(member)]];
    for (const auto& [cls, count] : class_count) {
        if (count < 2) continue;
        const bool hosted = std::any_of(robots_.begin(), robots_.end(), [&](const Robot& r) {
            return robot_compatible(r.capacity(), count);
        });
        if (!hosted)
            throw IncompatibleSystemError(
                "no robot has more than " + std::to_string(count) +
                " streams for the simultaneous group around task " + id);
    }

    Grid grid = mask(build_grid(tasks_, component, {}, nt_total), id);
    grid.creation_index = next_creation_++;
    const std::size_t nrows = grid.rows.size();

    // Rows tied together by a simultaneity class must land on one robot.
    // Chains through shared rows merge transitively.
    std::vector<std::size_t> row_parent(nrows);
    std::iota(row_parent.begin(), row_parent.end(), 0);
    auto find_root = [&](std::size_t x) {
        while (row_parent[x] != x) x = row_parent[x] = row_parent[row_parent[x]];
        return x;
    };
    std::map<std::size_t, std::vector<std::size_t>> class_rows;
    for (std::size_t r = 0; r < nrows; ++r)
        for (const GridSlot& slot : grid.rows[r].slots) {
            if (!slot.designee) continue;
            const std::size_t cls = classes.class_of[tasks_.index_of(*slot.designee)];
            if (class_count[cls] >= 2) class_rows[cls].push_back(r);
        }
    for (const auto& [cls, rows] : class_rows)
        for (std::size_t i = 1; i < rows.size(); ++i)
            row_parent[find_root(rows[i])] = find_root(rows[0]);

    std::map<std::size_t, std::size_t> group_size;       // root -> member rows
    std::map<std::size_t, std::size_t> group_class_size; // root -> largest class inside
    for (std::size_t r = 0; r < nrows; ++r) ++group_size[find_root(r)];
    for (const auto& [cls, rows] : class_rows) {
        const std::size_t root = find_root(rows[0]);
        group_class_size[root] = std::max(group_class_size[root], class_count[cls]);
    }

    // Deal rows to streams smallest row first -- earliest head, then least
    // occupied time: each row takes the stream with the smallest finishing
    // time, restricted to the pinned robot for grouped rows.  Grouped rows go
    // first so free, compatible streams cannot be eaten away from under a
    // simultaneity class.  Streams with an open-ended commitment can never
    // take another row.
    std::vector<std::size_t> deal_order(nrows);
    std::iota(deal_order.begin(), deal_order.end(), 0);
    std::stable_sort(deal_order.begin(), deal_order.end(), [&](std::size_t a, std::size_t b) {
        const bool ga = group_class_size.count(find_root(a)) != 0;
        const bool gb = group_class_size.count(find_root(b)) != 0;
        if (ga != gb) return ga;
        const GridRow& ra = grid.rows[a];
        const GridRow& rb = grid.rows[b];
        if (ra.head() != rb.head()) return ra.head() < rb.head();
        return ra.busy_length() < rb.busy_length();
    });
    std::vector<char> used(nt_total, 0);
    std::map<std::size_t, std::size_t> group_robot; // root -> robot index
    auto flat_index = [&](std::size_t robot, std::size_t stream) {
        std::size_t base = 0;
        for (std::size_t i = 0; i < robot; ++i) base += robots_[i].capacity();
        return base + stream;
    };

    PlacementReport report;
    report.task = id;
    report.branch = PlacementReport::Branch::NewGrid;
    report.grid_creation = grid.creation_index;

    std::vector<std::pair<std::size_t, std::size_t>> homes(nrows);
    for (const std::size_t r : deal_order) {
        const std::size_t root = find_root(r);
        const bool grouped = group_class_size.count(root) != 0;

        if (grouped && !group_robot.count(root)) {
            // Pick the robot for the whole group: compatible with its largest
            // class, enough unused streams for all its rows, and holding the
            // most promising (earliest-finishing) free stream.
            std::optional<std::size_t> choice;
            Time choice_best = Time::infinity();
            const std::size_t need = group_size.at(root);
            for (std::size_t R = 0; R < robots_.size(); ++R) {
                if (!robot_compatible(robots_[R].capacity(), group_class_size.at(root))) continue;
                std::size_t free = 0;
                Time best = Time::infinity();
                for (std::size_t j = 0; j < robots_[R].capacity(); ++j) {
                    if (used[flat_index(R, j)] || robots_[R].streams[j].tail().is_infinite())
                        continue;
                    ++free;
                    best = std::min(best, robots_[R].streams[j].finishing_time());
                }
                if (free < need) continue;
                if (!choice || best < choice_best) {
                    choice = R;
                    choice_best = best;
                }
            }
            if (!choice)
                throw IncompatibleSystemError(
                    "no robot can host the simultaneous group around task " + id);
            group_robot[root] = *choice;
        }

        RowDispatch dispatch;
        dispatch.row = r;
        std::optional<std::pair<std::size_t, std::size_t>> pick;
        Time pick_finish{};
        for (std::size_t R = 0; R < robots_.size(); ++R) {
            if (grouped && group_robot.at(root) != R) continue;
            for (std::size_t j = 0; j < robots_[R].capacity(); ++j) {
                if (used[flat_index(R, j)] || robots_[R].streams[j].tail().is_infinite())
                    continue;
                const Time finish = robots_[R].streams[j].finishing_time();
                dispatch.eligible_finishing.push_back(finish);
                if (!pick || finish < pick_finish) {
                    pick = {R, j};
                    pick_finish = finish;
                }
            }
        }
        if (!pick)
            throw UnsuitableSystemError("no stream left for row " + std::to_string(r) +
                                        " of the grid for task " + id);
        dispatch.robot = pick->first;
        dispatch.stream = pick->second;
        dispatch.finishing_before = pick_finish;
        used[flat_index(pick->first, pick->second)] = 1;
        homes[r] = *pick;
        report.rows.push_back(std::move(dispatch));
    }

    // One common delay so every row clears its stream's commitments and the
    // rows keep their relative geometry.
    Time delay{};
    for (std::size_t r = 0; r < nrows; ++r) {
        const Time tail = stream_at(homes[r].first, homes[r].second).tail();
        const Time head = grid.rows[r].head();
        if (tail > head) delay = std::max(delay, tail - head);
    }

    // Commit the rows: tasks run, reserved and padding spans become waits.
    for (std::size_t r = 0; r < nrows; ++r) {
        const auto [robot_idx, stream_idx] = homes[r];
        const std::string& robot_id = robots_[robot_idx].id;
        Stream& stream = stream_at(robot_idx, stream_idx);
        Time cursor = stream.tail();
        for (const GridSlot& slot : grid.rows[r].slots) {
            const bool self = slot.occupant == id;
            Time begin = slot.window.start() + delay;
            if (self)
                begin = std::max(begin, window.start() + delay +
                                            profile_.dispatch_offset(id, robot_id));
            begin = std::max(begin, cursor);
            if (begin > cursor)
                stream.queue.push_back({StreamEntry::Kind::Wait, {}, cursor, begin});

            const Time slot_end = slot.window.finish() + delay;
            if (self) {
                const Time end = begin + profile_.exec_time(tasks_.at(id), robot_id);
                stream.queue.push_back({StreamEntry::Kind::Task, id, begin, end});
                if (end < slot_end && !slot_end.is_infinite()) {
                    stream.queue.push_back({StreamEntry::Kind::Wait, {}, end, slot_end});
                    cursor = slot_end;
                } else {
                    cursor = end;
                }
            } else {
                const Time end = std::max(begin, slot_end);
                stream.queue.push_back({StreamEntry::Kind::Wait, {}, begin, end});
                cursor = end;
            }
        }
    }

    report.delay = delay;
    for (std::size_t r = 0; r < nrows; ++r)
        for (std::size_t s = 0; s < grid.rows[r].slots.size(); ++s)
            if (grid.rows[r].slots[s].occupant == id) {
                report.row = r;
                report.slot = s;
                report.robot = homes[r].first;
                report.stream = homes[r].second;
                realized_.insert({id, grid.rows[r].slots[s].window.shifted(delay)});
            }

    std::size_t unfilled = 0;
    for (const GridRow& row : grid.rows)
        for (const GridSlot& slot : row.slots)
            if (slot.designee && slot.idle()) ++unfilled;

    if (unfilled > 0) {
        ActiveGrid ag{std::move(grid), report.grid_creation, delay, std::move(homes), unfilled};
        const auto key = [](const ActiveGrid& a) {
            return std::make_tuple(grid_window(a.grid).start() + a.delay, a.creation);
        };
        const auto pos = std::lower_bound(
            active_.begin(), active_.end(), ag,
            [&](const ActiveGrid& x, const ActiveGrid& y) { return key(x) < key(y); });
        active_.insert(pos, std::move(ag));
    }
    return report;
}

std::vector<Time> ScheduleState::finishing_times() const {
    std::vector<Time> times;
    for (const Robot& robot : robots_)
        for (const Stream& stream : robot.streams) times.push_back(stream.finishing_time());
    return times;
}

Time ScheduleState::makespan() const {
    Time best{};
    for (const Robot& robot : robots_)
        for (const Stream& stream : robot.streams)
            best = std::max(best, stream.finishing_time());
    return best;
}

std::vector<std::size_t> ScheduleState::stream_task_counts() const {
    std::vector<std::size_t> counts;
    for (const Robot& robot : robots_)
        for (const Stream& stream : robot.streams) counts.push_back(stream.task_count());
    return counts;
}

std::string ScheduleState::dump() const {
    std::string out;
    for (const Robot& robot : robots_)
        for (std::size_t j = 0; j < robot.streams.size(); ++j) {
            out += "robot=" + robot.id + " stream=" + std::to_string(j + 1) + " tasks=";
            bool first = true;
            for (const StreamEntry& entry : robot.streams[j].queue) {
                if (entry.kind != StreamEntry::Kind::Task) continue;
                if (!first) out += ":";
                out += entry.task;
                first = false;
            }
            out += " finish=" + robot.streams[j].finishing_time().str() + "\n";
        }
    return out;
}

} // namespace twsched
