#pragma once

#include "twsched/simulator.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace twsched {

// Per-replication table.  Header: policy,n,rep,seed,makespan,tcd,load1..loadM
// (one load column per machine).  The n column carries the batch size for
// fixed arrivals and the run index for Poisson arrivals.  All numbers are
// printed from integers, so equal inputs give byte-identical files.
[[nodiscard]] std::string results_csv(const ExperimentTable& table);

// Per-(policy, n) means.  Header: policy,n,reps,mean_makespan,mean_tcd.
[[nodiscard]] std::string aggregate_csv(const ExperimentTable& table);

// Mean of `sum_ticks / count` in seconds as exact decimal text: long
// division, truncated after six fractional digits, trailing zeros trimmed.
[[nodiscard]] std::string format_mean(std::int64_t sum_ticks, std::size_t count);

// Throws IoError when the file cannot be created or fully written.
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace twsched
