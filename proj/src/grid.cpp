#include "twsched/grid.hpp"

#include "twsched/balancing.hpp"
#include "twsched/errors.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace twsched {

Time GridRow::head() const { return slots.empty() ? Time{} : slots.front().window.start(); }

Time GridRow::tail() const { return slots.empty() ? Time{} : slots.back().window.finish(); }

Time GridRow::busy_length() const {
    Time total{};
    for (const GridSlot& slot : slots)
        if (!slot.idle() && !slot.window.finish().is_infinite()) total += slot.window.length();
    return total;
}

namespace {

bool fully_unconstrained(const Task& task) { return task.partners.empty(); }

// A window can extend a row when it starts at or after the row's tail.
bool appendable(const GridRow& row, const TimeWindow& window) {
    return row.tail() <= window.start();
}

// Index of a pure waiting slot (idle, reserved for nobody) that can hold the
// whole window.
std::optional<std::size_t> idle_gap(const GridRow& row, const TimeWindow& window) {
    for (std::size_t i = 0; i < row.slots.size(); ++i) {
        const GridSlot& slot = row.slots[i];
        if (slot.idle() && !slot.designee && slot.window.contains(window)) return i;
    }
    return std::nullopt;
}

// Carve the task's window out of the waiting slot at `index`, keeping the
// uncovered lead and tail as waiting slots.
void replace_idle(GridRow& row, std::size_t index, const Task& task) {
    const TimeWindow hole = row.slots[index].window;
    std::vector<GridSlot> pieces;
    if (hole.start() < task.window.start())
        pieces.push_back({TimeWindow{hole.start(), task.window.start()}, {}, {}});
    pieces.push_back({task.window, task.id, task.id});
    if (task.window.finish() < hole.finish())
        pieces.push_back({TimeWindow{task.window.finish(), hole.finish()}, {}, {}});
    row.slots.erase(row.slots.begin() + static_cast<std::ptrdiff_t>(index));
    row.slots.insert(row.slots.begin() + static_cast<std::ptrdiff_t>(index), pieces.begin(),
                     pieces.end());
}

// Keep the task's window as declared; the gap to the row tail, if any,
// becomes an explicit wait.  Prefers reusing an existing waiting slot.
void place_verbatim(GridRow& row, const Task& task) {
    if (const auto gap = idle_gap(row, task.window)) {
        replace_idle(row, *gap, task);
        return;
    }
    if (!row.empty() && row.tail() < task.window.start())
        row.slots.push_back({TimeWindow{row.tail(), task.window.start()}, {}, {}});
    row.slots.push_back({task.window, task.id, task.id});
}

// Unconstrained tasks have no partner to stay aligned with, so their window
// slides right to the row's tail and the row stays gapless.
void place_shifted(GridRow& row, const Task& task) {
    const Time start = std::max(row.tail(), task.window.start());
    if (!row.empty() && row.tail() < start)
        row.slots.push_back({TimeWindow{row.tail(), start}, {}, {}});
    row.slots.push_back({TimeWindow{start, start + task.window.length()}, task.id, task.id});
}

void place(GridRow& row, const Task& task) {
    if (fully_unconstrained(task))
        place_shifted(row, task);
    else
        place_verbatim(row, task);
}

bool row_fits(const GridRow& row, const Task& task) {
    if (fully_unconstrained(task)) return true;
    return appendable(row, task.window) || idle_gap(row, task.window).has_value();
}

std::vector<TaskId> sorted_by_window(const TaskSet& tasks, std::vector<TaskId> ids) {
    std::sort(ids.begin(), ids.end(), [&](const TaskId& x, const TaskId& y) {
        const Task& a = tasks.at(x);
        const Task& b = tasks.at(y);
        return std::make_tuple(a.window.start(), a.window.finish(), a.id) <
               std::make_tuple(b.window.start(), b.window.finish(), b.id);
    });
    return ids;
}

} // namespace

Grid build_grid(const TaskSet& tasks, const std::vector<TaskId>& batch,
                const std::vector<TaskId>& backlog, std::size_t max_rows) {
    if (max_rows == 0) throw ConfigError("grid needs at least one row");
    {
        std::set<TaskId> seen;
        for (const std::vector<TaskId>* list : {&batch, &backlog})
            for (const TaskId& id : *list) {
                static_cast<void>(tasks.index_of(id));
                if (!seen.insert(id).second)
                    throw ConfigError("task listed twice in grid build: " + id);
            }
    }

    Grid grid;
    auto require_row_slack = [&](const TaskId& id) {
        if (grid.rows.size() >= max_rows)
            throw UnsuitableSystemError("placing task " + id + " needs more than " +
                                        std::to_string(max_rows) + " stream rows");
    };

    std::vector<TaskId> remaining = sorted_by_window(tasks, batch);
    bool first_group = true;
    while (!remaining.empty()) {
        // The earliest-window task leads; its declared-parallel partners must
        // sit on distinct rows beside it, earliest deadline first.
        const TaskId leader = remaining.front();
        std::vector<TaskId> group{leader};
        for (std::size_t i = 1; i < remaining.size(); ++i) {
            const OrientedRelation rel = tasks.relation(leader, remaining[i]);
            if (rel.kind != RelationKind::Unconstrained &&
                arrangement_of(rel.kind) == Arrangement::Parallel)
                group.push_back(remaining[i]);
        }
        std::sort(group.begin() + 1, group.end(), [&](const TaskId& x, const TaskId& y) {
            const Task& a = tasks.at(x);
            const Task& b = tasks.at(y);
            return std::make_tuple(a.window.finish(), a.window.start(), a.id) <
                   std::make_tuple(b.window.finish(), b.window.start(), b.id);
        });

        const Time grid_head = grid.empty() ? Time{} : grid_window(grid).start();
        std::vector<char> used(grid.rows.size(), 0);
        for (const TaskId& id : group) {
            const Task& task = tasks.at(id);
            // Earliest-deadline row that can take the task as declared.
            std::optional<std::size_t> pick;
            for (std::size_t r = 0; r < grid.rows.size(); ++r) {
                if (used[r] || !row_fits(grid.rows[r], task)) continue;
                if (!pick || grid.rows[r].tail() < grid.rows[*pick].tail()) pick = r;
            }
            if (pick) {
                place(grid.rows[*pick], task);
                used[*pick] = 1;
            } else {
                require_row_slack(id);
                GridRow row;
                // Rows opened once the grid exists spend the time from the
                // grid's start until their first task waiting.
                if (!first_group && !fully_unconstrained(task) &&
                    grid_head < task.window.start())
                    row.slots.push_back({TimeWindow{grid_head, task.window.start()}, {}, {}});
                place(row, task);
                grid.rows.push_back(std::move(row));
                used.push_back(1);
            }
        }
        std::erase_if(remaining, [&](const TaskId& id) {
            return std::find(group.begin(), group.end(), id) != group.end();
        });
        first_group = false;
    }

    for (const TaskId& id : sorted_by_window(tasks, backlog)) {
        const Task& task = tasks.at(id);

        // First choice: reuse waiting time somewhere in the grid.
        bool placed = false;
        for (GridRow& row : grid.rows) {
            if (const auto gap = idle_gap(row, task.window)) {
                replace_idle(row, *gap, task);
                placed = true;
                break;
            }
        }
        if (placed) continue;

        // Otherwise append to the lightest row that can take the task,
        // opening a fresh row instead when that strictly lowers the spread.
        LoadVector loads;
        loads.reserve(grid.rows.size());
        for (const GridRow& row : grid.rows) loads.push_back(row.busy_length());

        std::optional<std::size_t> best;
        for (std::size_t r = 0; r < grid.rows.size(); ++r) {
            if (!fully_unconstrained(task) && !appendable(grid.rows[r], task.window)) continue;
            if (!best || loads[r] < loads[*best]) best = r;
        }

        const Time weight = task.window.finish().is_infinite() ? Time{} : task.window.length();
        bool open_new = !best.has_value();
        if (best && grid.rows.size() < max_rows) {
            LoadVector appended = loads;
            appended[*best] += weight;
            LoadVector widened = loads;
            widened.push_back(weight);
            open_new = variance_less(widened, appended);
        }

        if (open_new) {
            require_row_slack(id);
            GridRow row;
            place(row, task);
            grid.rows.push_back(std::move(row));
        } else {
            place(grid.rows[*best], task);
        }
    }

    std::stable_sort(grid.rows.begin(), grid.rows.end(), [](const GridRow& a, const GridRow& b) {
        return std::make_tuple(a.head(), a.tail()) < std::make_tuple(b.head(), b.tail());
    });
    return grid;
}

TimeWindow grid_window(const Grid& grid) {
    if (grid.empty()) throw ConfigError("empty grid has no window");
    Time start = Time::infinity();
    Time finish{};
    for (const GridRow& row : grid.rows) {
        start = std::min(start, row.head());
        finish = std::max(finish, row.tail());
    }
    return {start, finish};
}

std::size_t compute_mnst(std::span<const std::size_t> stream_task_counts) {
    std::size_t longest = 0;
    for (std::size_t count : stream_task_counts) longest = std::max(longest, count);
    return longest;
}

bool divisibility_ok(std::size_t grid_rows, std::size_t total_streams) {
    return grid_rows > 0 && total_streams % grid_rows == 0;
}

Grid mask(const Grid& grid, const TaskId& keep) {
    Grid masked = grid;
    bool found = false;
    for (GridRow& row : masked.rows)
        for (GridSlot& slot : row.slots) {
            if (slot.occupant == keep) {
                found = true;
                continue;
            }
            slot.occupant.reset();
        }
    if (!found) throw ConfigError("task " + keep + " is not scheduled in the grid");
    return masked;
}

std::optional<std::pair<std::size_t, std::size_t>>
accepting_slot(const Grid& grid, const TaskId& task, const TimeWindow& window) {
    for (std::size_t r = 0; r < grid.rows.size(); ++r)
        for (std::size_t s = 0; s < grid.rows[r].slots.size(); ++s) {
            const GridSlot& slot = grid.rows[r].slots[s];
            if (slot.designee == task && slot.idle() && slot.window.contains(window))
                return std::make_pair(r, s);
        }
    return std::nullopt;
}

bool accepts(const Grid& grid, const TaskId& task, const TimeWindow& window) {
    return accepting_slot(grid, task, window).has_value();
}

void fill_designated(Grid& grid, const TaskId& task) {
    for (GridRow& row : grid.rows)
        for (GridSlot& slot : row.slots)
            if (slot.designee == task) {
                if (!slot.idle())
                    throw ConfigError("reserved slot for " + task + " is already occupied");
                slot.occupant = task;
                return;
            }
    throw ConfigError("grid has no reserved slot for task " + task);
}

std::string dump_grid(const Grid& grid) {
    std::string out;
    for (const GridRow& row : grid.rows) {
        for (const GridSlot& slot : row.slots) {
            out += "[" + slot.window.start().str() + "," + slot.window.finish().str() + ":";
            out += slot.occupant ? *slot.occupant : "IDLE";
            out += "]";
        }
        out += "\n";
    }
    return out;
}

} // namespace twsched
