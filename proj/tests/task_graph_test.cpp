#include <doctest.h>

#include "twsched/errors.hpp"
#include "twsched/task_graph.hpp"

#include <algorithm>

using namespace twsched;

namespace {

TimeWindow win(long long a, long long b) {
    return {Time::seconds(a), Time::seconds(b)};
}

TaskSet three_chain() {
    TaskSet tasks;
    tasks.add("A", win(0, 5), Time::seconds(5));
    tasks.add("B", win(5, 9), Time::seconds(4));
    tasks.add("C", win(2, 7), Time::seconds(3));
    return tasks;
}

} // namespace

TEST_CASE("adding tasks validates ids, windows, and execution times") {
    TaskSet tasks;
    CHECK_NOTHROW(tasks.add("ok_id-1.x", win(0, 5), Time::seconds(5)));
    CHECK_THROWS_AS(tasks.add("ok_id-1.x", win(0, 5), Time::seconds(5)), ConfigError);
    CHECK_THROWS_AS(tasks.add("bad id", win(0, 5), Time::seconds(5)), ConfigError);
    CHECK_THROWS_AS(tasks.add("", win(0, 5), Time::seconds(5)), ConfigError);
    CHECK_THROWS_AS(tasks.add("neg", win(0, 5), Time::seconds(-1)), ConfigError);
    CHECK_THROWS_AS(tasks.add("inf_exec", win(0, 5), Time::infinity()), ConfigError);
    CHECK_THROWS_AS(tasks.add("slow", win(0, 5), Time::seconds(6)), ConfigError);
    CHECK_NOTHROW(tasks.add("open", TimeWindow(Time::seconds(0), Time::infinity()),
                            Time::seconds(100)));
}

TEST_CASE("declared relations must match the window geometry") {
    TaskSet tasks = three_chain();
    CHECK_NOTHROW(tasks.declare("A", "B", RelationKind::Meets));
    CHECK_THROWS_AS(tasks.declare("A", "C", RelationKind::Before), ConsistencyError);
    CHECK_NOTHROW(tasks.declare("A", "C", RelationKind::Overlaps));
    CHECK_THROWS_AS(tasks.declare("A", "missing", RelationKind::Before), ConfigError);
}

TEST_CASE("relation lookup distinguishes declared pairs from unconstrained ones") {
    TaskSet tasks = three_chain();
    tasks.declare("A", "B", RelationKind::Meets);

    CHECK(tasks.relation("A", "B") == OrientedRelation{RelationKind::Meets, false});
    CHECK(tasks.relation("B", "A") == OrientedRelation{RelationKind::Meets, true});
    // A and C overlap geometrically but were never declared related
    CHECK(tasks.relation("A", "C").kind == RelationKind::Unconstrained);
    CHECK_THROWS_AS(tasks.relation("A", "nope"), ConfigError);
}

TEST_CASE("components follow declared edges only") {
    TaskSet tasks = three_chain();
    tasks.add("D", win(20, 30), Time::seconds(5));
    tasks.declare("A", "B", RelationKind::Meets);
    tasks.declare("A", "C", RelationKind::Overlaps);

    CHECK(tasks.component_of("B") == std::vector<TaskId>{"A", "B", "C"});
    CHECK(tasks.component_of("D") == std::vector<TaskId>{"D"});
}

TEST_CASE("simultaneity classes merge through chains") {
    TaskSet tasks;
    tasks.add("A", win(0, 5), Time::seconds(5));
    tasks.add("B", win(0, 5), Time::seconds(5));
    tasks.add("C", win(0, 5), Time::seconds(5));
    tasks.add("D", win(9, 12), Time::seconds(3));
    tasks.declare("A", "B", RelationKind::Equals);
    tasks.declare("B", "C", RelationKind::Equals);

    const EqualsClasses classes = merge_equal_classes(tasks);
    CHECK(classes.class_of[tasks.index_of("A")] == classes.class_of[tasks.index_of("B")]);
    CHECK(classes.class_of[tasks.index_of("B")] == classes.class_of[tasks.index_of("C")]);
    CHECK(classes.class_of[tasks.index_of("D")] != classes.class_of[tasks.index_of("A")]);

    std::size_t biggest = 0;
    for (const auto& members : classes.members) biggest = std::max(biggest, members.size());
    CHECK(biggest == 3);
}

TEST_CASE("a robot can host a class only with streams to spare") {
    CHECK(robot_compatible(4, 3));
    CHECK_FALSE(robot_compatible(3, 3));
    CHECK(robot_compatible(2, 1));
    CHECK_FALSE(robot_compatible(1, 1));
}

TEST_CASE("relation partition buckets every partner exactly once") {
    TaskSet tasks = three_chain();
    tasks.add("D", win(9, 12), Time::seconds(3));
    tasks.declare("A", "B", RelationKind::Meets);
    tasks.declare("A", "C", RelationKind::Overlaps);
    tasks.declare("A", "D", RelationKind::Before);

    const auto buckets = relation_partition(tasks, "A");
    CHECK(buckets.at(RelationKind::Meets) == std::vector<TaskId>{"B"});
    CHECK(buckets.at(RelationKind::Overlaps) == std::vector<TaskId>{"C"});
    CHECK(buckets.at(RelationKind::Before) == std::vector<TaskId>{"D"});

    std::size_t total = 0;
    for (const auto& [kind, ids] : buckets) total += ids.size();
    CHECK(total == 3);
}

TEST_CASE("task files parse, validate symmetry, and round-trip") {
    const std::string text =
        "# crew plan\n"
        "task A window=0,5 exec=5 rel=meets:B\n"
        "task B window=5,9 exec=4 rel=meets:A\n"
        "task C window=2,7 exec=3\n"
        "\n"
        "task Open window=4,inf exec=9\n";
    const TaskSet tasks = parse_tasks(text);
    CHECK(tasks.size() == 4);
    CHECK(tasks.relation("A", "B").kind == RelationKind::Meets);
    CHECK(tasks.at("Open").window.finish().is_infinite());

    const std::string canonical = format_tasks(tasks);
    const TaskSet reparsed = parse_tasks(canonical);
    CHECK(format_tasks(reparsed) == canonical);
    CHECK(canonical.find("window=4,inf") != std::string::npos);
}

TEST_CASE("malformed task files are rejected") {
    CHECK_THROWS_AS(parse_tasks("task A window=0,5\n"), ConfigError);       // no exec
    CHECK_THROWS_AS(parse_tasks("task A window=5,0 exec=1\n"), ConfigError); // backwards
    CHECK_THROWS_AS(parse_tasks("walk A window=0,5 exec=1\n"), ConfigError); // bad keyword
    CHECK_THROWS_AS(
        parse_tasks("task A window=0,5 exec=5 rel=meets:B\ntask B window=5,9 exec=4\n"),
        ConsistencyError); // one-sided declaration
    CHECK_THROWS_AS(
        parse_tasks(
            "task A window=0,5 exec=5 rel=meets:B\ntask B window=5,9 exec=4 rel=before:A\n"),
        ConsistencyError); // sides disagree on the kind
    CHECK_THROWS_AS(
        parse_tasks("task A window=0,5 exec=5 rel=meets:B rel=meets:B\n"
                    "task B window=5,9 exec=4 rel=meets:A\n"),
        ConfigError); // duplicate declaration
    CHECK_THROWS_AS(parse_tasks("task A window=0,5 exec=5 rel=meets:A\n"),
                    ConfigError); // self relation
}
