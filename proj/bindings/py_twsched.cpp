#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twsched/balancing.hpp"
#include "twsched/errors.hpp"
#include "twsched/grid.hpp"
#include "twsched/io.hpp"
#include "twsched/simulator.hpp"
#include "twsched/task_graph.hpp"
#include "twsched/time_window.hpp"

#include <cmath>
#include <limits>

namespace py = pybind11;
using namespace twsched;

namespace {

// Python talks in float seconds; the core keeps exact millisecond ticks.
Time time_from_seconds(double seconds) {
    if (std::isinf(seconds) && seconds > 0) return Time::infinity();
    if (!std::isfinite(seconds)) throw ConfigError("time value must be finite or +inf");
    return Time::millis(std::llround(seconds * Time::ticks_per_second));
}

std::vector<Time> times_from_seconds(const std::vector<double>& values) {
    std::vector<Time> times;
    times.reserve(values.size());
    for (double value : values) times.push_back(time_from_seconds(value));
    return times;
}

std::vector<double> times_to_seconds(const LoadVector& values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (Time value : values) out.push_back(value.to_seconds());
    return out;
}

py::dict assignment_to_dict(const Assignment& assignment) {
    py::dict out;
    out["place_of"] = assignment.place_of;
    out["loads"] = times_to_seconds(assignment.loads);
    out["makespan"] = assignment.makespan().to_seconds();
    return out;
}

} // namespace

PYBIND11_MODULE(twsched, m) {
    m.doc() = "Time-window task scheduling: window relations, variance-minimizing "
              "load balancing, grid construction, and the experiment harness";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_ValueError);
    py::register_exception<UnsuitableSystemError>(m, "UnsuitableSystemError", PyExc_RuntimeError);
    py::register_exception<IncompatibleSystemError>(m, "IncompatibleSystemError",
                                                    PyExc_RuntimeError);
    py::register_exception<OracleCapacityError>(m, "OracleCapacityError", PyExc_RuntimeError);

    m.def(
        "classify",
        [](double start1, double finish1, double start2, double finish2) {
            const OrientedRelation rel =
                classify(TimeWindow{time_from_seconds(start1), time_from_seconds(finish1)},
                         TimeWindow{time_from_seconds(start2), time_from_seconds(finish2)});
            return py::make_tuple(std::string(to_string(rel.kind)), rel.swapped);
        },
        py::arg("start1"), py::arg("finish1"), py::arg("start2"), py::arg("finish2"),
        "Relation between two windows as (kind, swapped); finishes may be float('inf')");

    m.def(
        "balance_allocate",
        [](const std::vector<double>& items, std::size_t places,
           const std::vector<double>& initial) {
            return assignment_to_dict(
                balance_allocate(times_from_seconds(items), places, times_from_seconds(initial)));
        },
        py::arg("items"), py::arg("places"), py::arg("initial") = std::vector<double>{},
        "Longest-item-first placement onto the least-loaded place");

    m.def(
        "variance",
        [](const std::vector<double>& loads) { return variance(times_from_seconds(loads)); },
        py::arg("loads"), "Population variance of the loads in seconds squared");

    m.def(
        "brute_force_oracle",
        [](const std::vector<double>& items, std::size_t places,
           const std::vector<double>& initial) {
            const OracleResult oracle = brute_force_oracle(times_from_seconds(items), places,
                                                           times_from_seconds(initial));
            py::dict out;
            out["min_variance"] = oracle.min_variance;
            out["min_makespan"] = oracle.min_makespan.to_seconds();
            out["variance_witness"] = assignment_to_dict(oracle.variance_witness);
            out["makespan_witness"] = assignment_to_dict(oracle.makespan_witness);
            return out;
        },
        py::arg("items"), py::arg("places"), py::arg("initial") = std::vector<double>{},
        "Exhaustive ground truth: minimum variance and minimum makespan");

    m.def(
        "normalize_tasks",
        [](const std::string& text) { return format_tasks(parse_tasks(text)); },
        py::arg("text"), "Parse the task list format and print it back canonically");

    m.def(
        "grid_dump",
        [](const std::string& text, std::size_t max_rows) {
            const TaskSet tasks = parse_tasks(text);
            std::vector<TaskId> batch;
            for (const Task& task : tasks) batch.push_back(task.id);
            return dump_grid(build_grid(tasks, batch, {}, max_rows));
        },
        py::arg("text"), py::arg("max_rows"),
        "Parse tasks, lay them all out as one grid, and dump it row by row");

    m.def(
        "run_experiment",
        [](const std::string& arrival, std::size_t machines,
           const std::vector<double>& exec_values, int n_lo, int n_hi, double lambda, int steps,
           int runs, int replications, std::uint64_t seed,
           const std::vector<std::string>& policies) {
            ExperimentConfig config;
            if (arrival == "fixed")
                config.arrival = ArrivalKind::Fixed;
            else if (arrival == "poisson")
                config.arrival = ArrivalKind::Poisson;
            else
                throw ConfigError("arrival must be 'fixed' or 'poisson'");
            config.machines = machines;
            config.exec_values = times_from_seconds(exec_values);
            config.n_lo = n_lo;
            config.n_hi = n_hi;
            config.lambda = lambda;
            config.steps = steps;
            config.runs = runs;
            config.replications = replications;
            config.seed = seed;
            config.policies.clear();
            for (const std::string& name : policies)
                config.policies.push_back(policy_from_string(name));

            const ExperimentTable table = run_experiment(config);
            py::list records;
            for (const MetricsRecord& record : table.records) {
                py::dict row;
                row["policy"] = std::string(to_string(record.policy));
                row["n"] = record.key;
                row["rep"] = record.rep;
                row["seed"] = record.seed;
                row["makespan"] = record.makespan.to_seconds();
                row["tcd"] = record.tcd.to_seconds();
                row["loads"] = times_to_seconds(record.loads);
                records.append(row);
            }
            py::list aggregates;
            for (const auto& aggregate : table.aggregates) {
                py::dict row;
                row["policy"] = std::string(to_string(aggregate.policy));
                row["n"] = aggregate.key;
                row["reps"] = aggregate.count;
                row["mean_makespan"] = aggregate.mean_makespan();
                row["mean_tcd"] = aggregate.mean_tcd();
                aggregates.append(row);
            }
            py::dict out;
            out["records"] = records;
            out["aggregates"] = aggregates;
            out["results_csv"] = results_csv(table);
            return out;
        },
        py::arg("arrival") = "fixed", py::arg("machines") = 4,
        py::arg("exec_values") = std::vector<double>{10, 12, 13, 15, 20, 32, 40},
        py::arg("n_lo") = 1, py::arg("n_hi") = 20, py::arg("lam") = 7.0,
        py::arg("steps") = 101, py::arg("runs") = 1, py::arg("replications") = 1,
        py::arg("seed") = 1, py::arg("policies") = std::vector<std::string>{"ours", "random",
                                                                            "fifo", "greedy"},
        "Run the policy-comparison experiment and return records, aggregates, and the CSV");
}
