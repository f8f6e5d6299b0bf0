#pragma once

#include "twsched/time.hpp"
#include "twsched/time_window.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace twsched {

using TaskId = std::string;

struct Task {
    TaskId id;
    TimeWindow window{Time{}, Time::infinity()};
    Time exec{};                 // completion time when no per-robot override applies
    std::vector<TaskId> partners; // declared-constrained partners, sorted, symmetric
};

// A set of tasks plus the symmetric constraint graph between them.  A
// declared constraint never stores its own relation kind: the kind is always
// re-derived from window geometry, so declarations can only pin *that* two
// tasks are related and must name the kind the windows already imply.
class TaskSet {
public:
    // Throws ConfigError on duplicate or malformed ids.
    std::size_t add(TaskId id, TimeWindow window, Time exec);

    // Symmetric declaration.  Throws ConsistencyError when `kind` is not the
    // relation the two windows are actually in, ConfigError on unknown ids,
    // self-relations, or an explicit Unconstrained declaration.
    void declare(const TaskId& first, const TaskId& second, RelationKind kind);

    [[nodiscard]] bool constrained(const TaskId& first, const TaskId& second) const;

    // Declared pairs get their geometric relation; undeclared pairs are
    // Unconstrained no matter how their windows sit.
    [[nodiscard]] OrientedRelation relation(const TaskId& first, const TaskId& second) const;

    [[nodiscard]] bool contains(const TaskId& id) const;
    [[nodiscard]] std::size_t index_of(const TaskId& id) const;
    [[nodiscard]] const Task& at(const TaskId& id) const;
    [[nodiscard]] const Task& operator[](std::size_t index) const { return tasks_[index]; }
    [[nodiscard]] std::size_t size() const { return tasks_.size(); }
    [[nodiscard]] auto begin() const { return tasks_.begin(); }
    [[nodiscard]] auto end() const { return tasks_.end(); }

    // Connected component of `id` in the constraint graph, ids sorted.
    [[nodiscard]] std::vector<TaskId> component_of(const TaskId& id) const;

private:
    std::vector<Task> tasks_;
    std::map<TaskId, std::size_t> index_;
};

// Tasks declared Equals must run simultaneously, and Equals chains share all
// their constraints, so they are folded into one class per chain before any
// capacity or placement decision.
struct EqualsClasses {
    std::vector<std::vector<std::size_t>> members; // sorted task indices per class
    std::vector<std::size_t> class_of;             // task index -> class index

    [[nodiscard]] std::size_t size_of_class_containing(std::size_t task_index) const {
        return members[class_of[task_index]].size();
    }
};

[[nodiscard]] EqualsClasses merge_equal_classes(const TaskSet& tasks);

// A robot can host a simultaneity class only with strictly more streams than
// the class has members, so a stream stays free next to the class.
[[nodiscard]] bool robot_compatible(std::size_t robot_streams, std::size_t class_size);

// Bucket every other task by its relation kind to `reference`.  The buckets
// are disjoint and together cover the whole set minus the reference.
[[nodiscard]] std::map<RelationKind, std::vector<TaskId>>
relation_partition(const TaskSet& tasks, const TaskId& reference);

// Text form, one task per line:
//   task <id> window=<a>,<b> exec=<t> rel=<kind>:<partner> ...
// `b` may be "inf"; rel entries repeat per partner and must appear on both
// partners' lines with the same kind.  `#` starts a comment line.
[[nodiscard]] TaskSet parse_tasks(std::istream& in);
[[nodiscard]] TaskSet parse_tasks(const std::string& text);
[[nodiscard]] std::string format_tasks(const TaskSet& tasks);

} // namespace twsched
