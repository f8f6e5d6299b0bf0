#include "twsched/task_graph.hpp"

#include "twsched/errors.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <set>
#include <sstream>

namespace twsched {

namespace {

bool valid_id(const TaskId& id) {
    if (id.empty()) return false;
    return std::all_of(id.begin(), id.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-' || c == '.';
    });
}

} // namespace

std::size_t TaskSet::add(TaskId id, TimeWindow window, Time exec) {
    if (!valid_id(id))
        throw ConfigError("task id must be non-empty [A-Za-z0-9_.-]: '" + id + "'");
    if (index_.count(id)) throw ConfigError("duplicate task id: " + id);
    if (exec < Time{} || exec.is_infinite())
        throw ConfigError("completion time must be finite and non-negative: " + id);
    if (!window.finish().is_infinite() && exec > window.length())
        throw ConfigError("completion time of " + id + " does not fit its window " +
                          window.str());
    const std::size_t index = tasks_.size();
    index_.emplace(id, index);
    tasks_.push_back(Task{std::move(id), window, exec, {}});
    return index;
}

void TaskSet::declare(const TaskId& first, const TaskId& second, RelationKind kind) {
    if (first == second) throw ConfigError("task cannot relate to itself: " + first);
    if (kind == RelationKind::Unconstrained)
        throw ConfigError("unconstrained pairs are left undeclared");
    Task& a = tasks_[index_of(first)];
    Task& b = tasks_[index_of(second)];
    const OrientedRelation actual = classify(a.window, b.window);
    if (actual.kind != kind)
        throw ConsistencyError("declared " + std::string(to_string(kind)) + " for " + first +
                               "/" + second + " but windows " + a.window.str() + " and " +
                               b.window.str() + " are in " + to_string(actual));
    auto link = [](Task& from, const TaskId& to) {
        auto pos = std::lower_bound(from.partners.begin(), from.partners.end(), to);
        if (pos == from.partners.end() || *pos != to) from.partners.insert(pos, to);
    };
    link(a, b.id);
    link(b, a.id);
}

bool TaskSet::constrained(const TaskId& first, const TaskId& second) const {
    const Task& a = at(first);
    return std::binary_search(a.partners.begin(), a.partners.end(), second);
}

OrientedRelation TaskSet::relation(const TaskId& first, const TaskId& second) const {
    if (!constrained(first, second)) {
        static_cast<void>(at(second)); // still validate the id
        return {RelationKind::Unconstrained, false};
    }
    return classify(at(first).window, at(second).window);
}

bool TaskSet::contains(const TaskId& id) const { return index_.count(id) != 0; }

std::size_t TaskSet::index_of(const TaskId& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw ConfigError("unknown task id: " + id);
    return it->second;
}

const Task& TaskSet::at(const TaskId& id) const { return tasks_[index_of(id)]; }

std::vector<TaskId> TaskSet::component_of(const TaskId& id) const {
    std::set<TaskId> seen{id};
    std::vector<TaskId> frontier{id};
    while (!frontier.empty()) {
        const TaskId current = std::move(frontier.back());
        frontier.pop_back();
        for (const TaskId& partner : at(current).partners)
            if (seen.insert(partner).second) frontier.push_back(partner);
    }
    return {seen.begin(), seen.end()};
}

EqualsClasses merge_equal_classes(const TaskSet& tasks) {
    std::vector<std::size_t> parent(tasks.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (std::size_t i = 0; i < tasks.size(); ++i)
        for (const TaskId& partner : tasks[i].partners) {
            const std::size_t j = tasks.index_of(partner);
            if (i < j && tasks.relation(tasks[i].id, partner).kind == RelationKind::Equals)
                parent[find(i)] = find(j);
        }

    EqualsClasses classes;
    classes.class_of.resize(tasks.size());
    std::map<std::size_t, std::size_t> root_to_class;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const std::size_t root = find(i);
        auto [it, fresh] = root_to_class.emplace(root, classes.members.size());
        if (fresh) classes.members.emplace_back();
        classes.class_of[i] = it->second;
        classes.members[it->second].push_back(i);
    }
    return classes;
}

bool robot_compatible(std::size_t robot_streams, std::size_t class_size) {
    return robot_streams > class_size;
}

std::map<RelationKind, std::vector<TaskId>> relation_partition(const TaskSet& tasks,
                                                               const TaskId& reference) {
    static_cast<void>(tasks.index_of(reference)); // validate
    std::map<RelationKind, std::vector<TaskId>> buckets;
    for (const Task& other : tasks) {
        if (other.id == reference) continue;
        buckets[tasks.relation(reference, other.id).kind].push_back(other.id);
    }
    for (auto& [kind, ids] : buckets) std::sort(ids.begin(), ids.end());
    return buckets;
}

namespace {

struct DeclaredEdge {
    TaskId from, to;
    RelationKind kind;
};

void parse_line(const std::string& line, int line_no, TaskSet& tasks,
                std::vector<DeclaredEdge>& edges) {
    std::istringstream words(line);
    std::string word;
    if (!(words >> word)) return;
    if (word != "task")
        throw ConfigError("line " + std::to_string(line_no) + ": expected 'task', got '" +
                          word + "'");

    TaskId id;
    if (!(words >> id))
        throw ConfigError("line " + std::to_string(line_no) + ": missing task id");

    bool have_window = false, have_exec = false;
    Time start{}, finish = Time::infinity(), exec{};
    std::vector<std::pair<RelationKind, TaskId>> rels;

    while (words >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value, got '" +
                              word + "'");
        const std::string key = word.substr(0, eq);
        const std::string value = word.substr(eq + 1);
        if (key == "window") {
            const auto comma = value.find(',');
            if (comma == std::string::npos)
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": window needs <start>,<finish>");
            start = Time::parse(value.substr(0, comma));
            finish = Time::parse(value.substr(comma + 1));
            have_window = true;
        } else if (key == "exec") {
            exec = Time::parse(value);
            have_exec = true;
        } else if (key == "rel") {
            const auto colon = value.find(':');
            if (colon == std::string::npos)
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": rel needs <kind>:<partner>");
            rels.emplace_back(relation_from_string(value.substr(0, colon)),
                              value.substr(colon + 1));
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    if (!have_window)
        throw ConfigError("line " + std::to_string(line_no) + ": task " + id + " has no window");
    if (!have_exec)
        throw ConfigError("line " + std::to_string(line_no) + ": task " + id + " has no exec");

    tasks.add(id, TimeWindow{start, finish}, exec);
    for (auto& [kind, partner] : rels) edges.push_back({id, partner, kind});
}

} // namespace

TaskSet parse_tasks(std::istream& in) {
    TaskSet tasks;
    std::vector<DeclaredEdge> edges;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        parse_line(line, line_no, tasks, edges);
    }

    // Constraints are symmetric: every edge must be declared from both ends
    // with the same kind.  Collect one canonical copy per pair, then check
    // that its mirror exists.
    std::map<std::pair<TaskId, TaskId>, RelationKind> sides;
    for (const DeclaredEdge& e : edges) {
        if (e.from == e.to) throw ConfigError("task " + e.from + " relates to itself");
        if (!tasks.contains(e.to))
            throw ConfigError("task " + e.from + " relates to unknown task " + e.to);
        const auto [it, fresh] = sides.emplace(std::make_pair(e.from, e.to), e.kind);
        if (!fresh)
            throw ConfigError("task " + e.from + " declares " + e.to + " twice");
    }
    for (const auto& [pair, kind] : sides) {
        const auto mirror = sides.find({pair.second, pair.first});
        if (mirror == sides.end())
            throw ConsistencyError("constraint " + pair.first + "/" + pair.second +
                                   " is declared on one side only");
        if (mirror->second != kind)
            throw ConsistencyError("constraint " + pair.first + "/" + pair.second +
                                   " declared as " + std::string(to_string(kind)) + " but " +
                                   std::string(to_string(mirror->second)) + " from the other side");
        if (pair.first < pair.second) tasks.declare(pair.first, pair.second, kind);
    }
    return tasks;
}

TaskSet parse_tasks(const std::string& text) {
    std::istringstream in(text);
    return parse_tasks(in);
}

std::string format_tasks(const TaskSet& tasks) {
    std::string out;
    for (const Task& task : tasks) {
        out += "task " + task.id + " window=" + task.window.start().str() + "," +
               task.window.finish().str() + " exec=" + task.exec.str();
        for (const TaskId& partner : task.partners)
            out += " rel=" + std::string(to_string(tasks.relation(task.id, partner).kind)) + ":" +
                   partner;
        out += "\n";
    }
    return out;
}

} // namespace twsched
