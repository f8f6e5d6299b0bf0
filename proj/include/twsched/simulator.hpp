#pragma once

#include "twsched/balancing.hpp"
#include "twsched/rng.hpp"
#include "twsched/time.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace twsched {

enum class Policy : std::uint8_t { Ours, Random, Fifo, Greedy };

[[nodiscard]] std::string_view to_string(Policy policy);
[[nodiscard]] Policy policy_from_string(std::string_view text);

enum class ArrivalKind : std::uint8_t { Fixed, Poisson };

struct ExperimentConfig {
    std::size_t machines = 4;
    std::vector<Time> exec_values; // completion times tasks are drawn from
    ArrivalKind arrival = ArrivalKind::Fixed;

    // Fixed arrivals: one batch of exactly n tasks per replication, swept
    // over n in [n_lo, n_hi].
    int n_lo = 1;
    int n_hi = 1;

    // Poisson arrivals: `steps` batches per replication, batch sizes drawn
    // from Poisson(lambda); `runs` independent runs, keyed 1-based.
    double lambda = 7.0;
    int steps = 101;
    int runs = 1;

    int replications = 1;
    std::uint64_t seed = 1;
    std::vector<Policy> policies{Policy::Ours, Policy::Random, Policy::Fifo, Policy::Greedy};
};

// Throws ConfigError when a field is out of range.
void validate(const ExperimentConfig& config);

// Batch-size sampling by inversion of the cumulative distribution; exact for
// the small rates used here and rejected above 30 where the running product
// underflows.
[[nodiscard]] int sample_poisson(double lambda, Rng& rng);

// `count` completion times drawn uniformly from `values`.
[[nodiscard]] std::vector<Time> sample_task_batch(std::size_t count,
                                                  const std::vector<Time>& values, Rng& rng);

// Per-policy machine bookkeeping that persists across batches of one
// replication.  queue_counts is only maintained by the shortest-queue
// policy; fifo_cursor only by the rotating one.
struct MachineState {
    LoadVector loads;
    std::vector<std::size_t> queue_counts;
    std::size_t fifo_cursor = 0;

    explicit MachineState(std::size_t machines) : loads(machines, Time{}) {}
};

// Route one batch under the given policy.  Returns how much work each
// machine gained; `state` accumulates.  Only the Random policy draws from
// `rng`.
LoadVector apply_policy(Policy policy, const std::vector<Time>& batch, MachineState& state,
                        Rng& rng);

struct MetricsRecord {
    Policy policy;
    int key = 0; // n for fixed arrivals, run index for Poisson arrivals
    int rep = 0;
    std::uint64_t seed = 0; // arrival-lane seed: identifies the instance
    LoadVector loads;
    Time makespan;
    Time tcd; // finishing-time spread: latest minus earliest machine
};

struct ExperimentTable {
    ExperimentConfig config;
    std::vector<MetricsRecord> records; // ordered by (policy, key, rep)

    struct Aggregate {
        Policy policy;
        int key = 0;
        std::size_t count = 0;
        std::int64_t sum_makespan_ticks = 0;
        std::int64_t sum_tcd_ticks = 0;

        [[nodiscard]] double mean_makespan() const; // seconds
        [[nodiscard]] double mean_tcd() const;      // seconds
    };
    std::vector<Aggregate> aggregates; // ordered by (policy, key)
};

// One complete replication cell: build the arrival sequence for (key, rep)
// and route it under one policy, machines starting empty.  Deterministic in
// (config, policy, key, rep); the arrival draws depend only on (config.seed,
// key, rep), so every policy sees the identical instance.
[[nodiscard]] MetricsRecord run_replication(const ExperimentConfig& config, Policy policy,
                                            int key, int rep);

// Run the full sweep.  Every policy inside one (key, rep) cell sees the
// identical arrival sequence: arrivals come from a seed lane the policies
// cannot touch.
[[nodiscard]] ExperimentTable run_experiment(const ExperimentConfig& config);

} // namespace twsched
