#pragma once

#include "twsched/time.hpp"

#include <cstddef>
#include <vector>

namespace twsched {

using LoadVector = std::vector<Time>;

// Result of distributing work items over places.
struct Assignment {
    std::vector<std::size_t> place_of; // item index -> place index
    LoadVector loads;                  // per-place load after the distribution

    [[nodiscard]] Time makespan() const;
};

// Longest-processing-time rule with arbitrary starting loads: walk the items
// in descending duration and append each to the currently least-loaded place
// (lowest index on ties).  Each placement is locally optimal -- moving that
// one item elsewhere cannot lower the spread -- which is the guarantee the
// scheduler builds on.  It is not a global optimum: see the documented-gap
// test for a five-item instance where an exhaustive search does better.
[[nodiscard]] Assignment balance_allocate(const std::vector<Time>& items, std::size_t places,
                                          const LoadVector& initial_loads = {});

// Population variance of the loads, in seconds squared.
[[nodiscard]] double variance(const LoadVector& loads);

// Exact integer variance key: places * sum(x^2) - sum(x)^2 in ticks^2.
// Between vectors of equal length, equal keys mean equal variance and
// smaller means smaller; no rounding.
[[nodiscard]] __int128 variance_key(const LoadVector& loads);

// Exact variance comparison that also works across different lengths:
// compares key(a) * |b|^2 against key(b) * |a|^2 in wide integers.
[[nodiscard]] bool variance_less(const LoadVector& a, const LoadVector& b);

// Ground truth from exhaustive enumeration of all places^items assignments.
struct OracleResult {
    double min_variance = 0.0;
    Time min_makespan;
    Assignment variance_witness; // first assignment reaching min_variance
    Assignment makespan_witness; // first assignment reaching min_makespan
};

// Throws OracleCapacityError when places^items exceeds 10^7 enumerations.
[[nodiscard]] OracleResult brute_force_oracle(const std::vector<Time>& items, std::size_t places,
                                              const LoadVector& initial_loads = {});

} // namespace twsched
