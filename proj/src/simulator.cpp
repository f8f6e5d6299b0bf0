#include "twsched/simulator.hpp"

#include "twsched/baselines.hpp"
#include "twsched/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace twsched {

std::string_view to_string(Policy policy) {
    switch (policy) {
    case Policy::Ours: return "ours";
    case Policy::Random: return "random";
    case Policy::Fifo: return "fifo";
    case Policy::Greedy: return "greedy";
    }
    throw ConfigError("unknown policy");
}

Policy policy_from_string(std::string_view text) {
    if (text == "ours") return Policy::Ours;
    if (text == "random") return Policy::Random;
    if (text == "fifo") return Policy::Fifo;
    if (text == "greedy") return Policy::Greedy;
    throw ConfigError("unknown policy name: " + std::string(text));
}

void validate(const ExperimentConfig& config) {
    if (config.machines == 0) throw ConfigError("experiment needs at least one machine");
    if (config.exec_values.empty()) throw ConfigError("experiment needs completion time values");
    for (Time value : config.exec_values)
        if (value <= Time{} || value.is_infinite())
            throw ConfigError("completion time values must be positive and finite");
    if (config.replications < 1) throw ConfigError("replications must be at least 1");
    if (config.policies.empty()) throw ConfigError("experiment needs at least one policy");
    if (std::set<Policy>(config.policies.begin(), config.policies.end()).size() !=
        config.policies.size())
        throw ConfigError("policy list has duplicates");

    if (config.arrival == ArrivalKind::Fixed) {
        if (config.n_lo < 1 || config.n_hi < config.n_lo)
            throw ConfigError("fixed arrivals need 1 <= n_lo <= n_hi");
    } else {
        if (!(config.lambda > 0.0)) throw ConfigError("arrival rate must be positive");
        if (config.lambda > 30.0)
            throw ConfigError("inversion sampling is only exact for rates up to 30");
        if (config.steps < 1) throw ConfigError("poisson arrivals need at least one step");
        if (config.runs < 1) throw ConfigError("poisson arrivals need at least one run");
    }
}

int sample_poisson(double lambda, Rng& rng) {
    if (!(lambda > 0.0) || lambda > 30.0)
        throw ConfigError("poisson rate out of the supported (0, 30] range");
    const double u = rng.next_double();
    int x = 0;
    double p = std::exp(-lambda);
    double cumulative = p;
    while (u > cumulative) {
        ++x;
        p *= lambda / x;
        cumulative += p;
        if (x > 10'000) throw ConfigError("poisson inversion failed to converge");
    }
    return x;
}

std::vector<Time> sample_task_batch(std::size_t count, const std::vector<Time>& values,
                                    Rng& rng) {
    if (values.empty()) throw ConfigError("cannot sample tasks from an empty value list");
    std::vector<Time> batch;
    batch.reserve(count);
    for (std::size_t i = 0; i < count; ++i) batch.push_back(values[rng.below(values.size())]);
    return batch;
}

LoadVector apply_policy(Policy policy, const std::vector<Time>& batch, MachineState& state,
                        Rng& rng) {
    const std::size_t machines = state.loads.size();
    LoadVector appended;
    switch (policy) {
    case Policy::Ours: {
        const Assignment result = balance_allocate(batch, machines, state.loads);
        appended.assign(machines, Time{});
        for (std::size_t i = 0; i < batch.size(); ++i)
            appended[result.place_of[i]] += batch[i];
        state.loads = result.loads;
        return appended;
    }
    case Policy::Random:
        appended = assign_random(batch, machines, rng);
        break;
    case Policy::Fifo:
        appended = assign_fifo(batch, machines, state.fifo_cursor);
        break;
    case Policy::Greedy:
        appended = assign_greedy(batch, machines, state.queue_counts);
        break;
    }
    for (std::size_t m = 0; m < machines; ++m) state.loads[m] += appended[m];
    return appended;
}

namespace {

MetricsRecord metrics_from(Policy policy, int key, int rep, std::uint64_t seed,
                           const LoadVector& loads) {
    Time latest{};
    Time earliest = Time::infinity();
    for (Time load : loads) {
        latest = std::max(latest, load);
        earliest = std::min(earliest, load);
    }
    return {policy, key, rep, seed, loads, latest, latest - earliest};
}

std::uint64_t division_of(int key, int rep) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(key)) << 32) |
           static_cast<std::uint32_t>(rep);
}

} // namespace

double ExperimentTable::Aggregate::mean_makespan() const {
    return static_cast<double>(sum_makespan_ticks) /
           (static_cast<double>(count) * Time::ticks_per_second);
}

double ExperimentTable::Aggregate::mean_tcd() const {
    return static_cast<double>(sum_tcd_ticks) /
           (static_cast<double>(count) * Time::ticks_per_second);
}

MetricsRecord run_replication(const ExperimentConfig& config, Policy policy, int key, int rep) {
    // Lane 0 is the arrival stream; each policy owns a lane tied to the
    // policy itself, not to its position in the list, so reordering the
    // policy list never changes any policy's draws.
    const auto lane = 1 + static_cast<std::uint64_t>(policy);
    const std::uint64_t division = division_of(key, rep);
    const std::uint64_t arrival_seed = Rng::derive(config.seed, division, 0);
    Rng arrivals(arrival_seed);
    Rng own(Rng::derive(config.seed, division, lane));
    MachineState state(config.machines);

    if (config.arrival == ArrivalKind::Fixed) {
        const auto batch =
            sample_task_batch(static_cast<std::size_t>(key), config.exec_values, arrivals);
        apply_policy(policy, batch, state, own);
    } else {
        for (int step = 0; step < config.steps; ++step) {
            const int count = sample_poisson(config.lambda, arrivals);
            const auto batch = sample_task_batch(static_cast<std::size_t>(count),
                                                 config.exec_values, arrivals);
            apply_policy(policy, batch, state, own);
        }
    }
    return metrics_from(policy, key, rep, arrival_seed, state.loads);
}

ExperimentTable run_experiment(const ExperimentConfig& config) {
    validate(config);

    ExperimentTable table;
    table.config = config;

    const std::vector<int> keys = [&] {
        std::vector<int> out;
        if (config.arrival == ArrivalKind::Fixed)
            for (int n = config.n_lo; n <= config.n_hi; ++n) out.push_back(n);
        else
            for (int run = 1; run <= config.runs; ++run) out.push_back(run);
        return out;
    }();

    for (const Policy policy : config.policies)
        for (const int key : keys) {
            ExperimentTable::Aggregate aggregate{policy, key, 0, 0, 0};
            for (int rep = 1; rep <= config.replications; ++rep) {
                MetricsRecord record = run_replication(config, policy, key, rep);
                aggregate.count += 1;
                aggregate.sum_makespan_ticks += record.makespan.ticks();
                aggregate.sum_tcd_ticks += record.tcd.ticks();
                table.records.push_back(std::move(record));
            }
            table.aggregates.push_back(aggregate);
        }
    return table;
}

} // namespace twsched
