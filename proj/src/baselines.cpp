#include "twsched/baselines.hpp"

#include "twsched/errors.hpp"

#include <algorithm>

namespace twsched {

namespace {

void check_machines(std::size_t machines) {
    if (machines == 0) throw ConfigError("cannot assign tasks to zero machines");
}

} // namespace

LoadVector assign_random(const std::vector<Time>& tasks, std::size_t machines, Rng& rng) {
    check_machines(machines);
    LoadVector appended(machines, Time{});
    for (Time task : tasks) appended[rng.below(machines)] += task;
    return appended;
}

LoadVector assign_fifo(const std::vector<Time>& tasks, std::size_t machines,
                       std::size_t& cursor) {
    check_machines(machines);
    LoadVector appended(machines, Time{});
    for (Time task : tasks) {
        appended[cursor % machines] += task;
        cursor = (cursor + 1) % machines;
    }
    return appended;
}

LoadVector assign_greedy(const std::vector<Time>& tasks, std::size_t machines,
                         std::vector<std::size_t>& queue_counts) {
    check_machines(machines);
    if (queue_counts.empty()) queue_counts.assign(machines, 0);
    if (queue_counts.size() != machines)
        throw ConfigError("queue count vector length does not match machine count");
    LoadVector appended(machines, Time{});
    for (Time task : tasks) {
        const auto shortest = std::min_element(queue_counts.begin(), queue_counts.end());
        const auto machine = static_cast<std::size_t>(shortest - queue_counts.begin());
        appended[machine] += task;
        ++queue_counts[machine];
    }
    return appended;
}

} // namespace twsched
