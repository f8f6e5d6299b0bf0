#include <doctest.h>

#include "twsched/baselines.hpp"
#include "twsched/errors.hpp"
#include "twsched/rng.hpp"

#include <algorithm>
#include <numeric>

using namespace twsched;

namespace {

std::vector<Time> secs(std::initializer_list<long long> values) {
    std::vector<Time> out;
    for (long long v : values) out.push_back(Time::seconds(v));
    return out;
}

Time total(const LoadVector& loads) {
    Time sum{};
    for (Time t : loads) sum = sum + t;
    return sum;
}

} // namespace

TEST_CASE("rotation walks the machines in order and persists its cursor") {
    std::size_t cursor = 0;
    const LoadVector first = assign_fifo(secs({10, 12, 13, 15, 20}), 4, cursor);
    // slots 0,1,2,3,0: machine 1 gets tasks 1 and 5
    CHECK(first == secs({30, 12, 13, 15}));
    CHECK(cursor == 1);

    const LoadVector second = assign_fifo(secs({7}), 4, cursor);
    CHECK(second == secs({0, 7, 0, 0})); // continues where it left off
    CHECK(cursor == 2);

    const LoadVector none = assign_fifo({}, 4, cursor);
    CHECK(none == secs({0, 0, 0, 0}));
    CHECK(cursor == 2); // empty batches leave the cursor alone
}

TEST_CASE("shortest-queue counts tasks, not time") {
    std::vector<std::size_t> counts;
    const LoadVector first = assign_greedy(secs({10, 12, 13, 15}), 4, counts);
    CHECK(first == secs({10, 12, 13, 15})); // one task each
    CHECK(counts == std::vector<std::size_t>{1, 1, 1, 1});

    const LoadVector second = assign_greedy(secs({20}), 4, counts);
    CHECK(second == secs({20, 0, 0, 0})); // tie on counts -> lowest index
    CHECK(counts == std::vector<std::size_t>{2, 1, 1, 1});
}

TEST_CASE("the documented shortest-queue batch") {
    std::vector<std::size_t> counts;
    const LoadVector loads = assign_greedy(secs({10, 12, 13, 15, 20}), 4, counts);
    CHECK(loads == secs({30, 12, 13, 15}));
}

TEST_CASE("shortest-queue spreads counts within one of each other") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::size_t> counts;
        std::vector<Time> batch;
        const std::size_t n = rng.below(40);
        for (std::size_t i = 0; i < n; ++i)
            batch.push_back(Time::seconds(1 + static_cast<long long>(rng.below(40))));
        assign_greedy(batch, 4, counts);
        if (n == 0) continue;
        const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
        CHECK(*hi - *lo <= 1);
        CHECK(std::accumulate(counts.begin(), counts.end(), std::size_t{0}) == n);
    }
}

TEST_CASE("queue-count state must match the machine count") {
    std::vector<std::size_t> counts(3, 0);
    CHECK_THROWS_AS(assign_greedy(secs({1}), 4, counts), ConfigError);
}

TEST_CASE("random assignment stays in range and is seed-deterministic") {
    Rng a(42), b(42), c(43);
    const auto batch = secs({10, 12, 13, 15, 20, 32, 40});
    const LoadVector first = assign_random(batch, 4, a);
    const LoadVector second = assign_random(batch, 4, b);
    const LoadVector third = assign_random(batch, 4, c);
    CHECK(first == second);
    CHECK(first.size() == 4);
    CHECK(total(first) == Time::seconds(142));
    CHECK(total(third) == Time::seconds(142)); // different split, same work
}

TEST_CASE("one machine swallows everything under every policy") {
    Rng rng(1);
    std::size_t cursor = 0;
    std::vector<std::size_t> counts;
    const auto batch = secs({3, 4, 5});
    CHECK(assign_random(batch, 1, rng) == secs({12}));
    CHECK(assign_fifo(batch, 1, cursor) == secs({12}));
    CHECK(assign_greedy(batch, 1, counts) == secs({12}));
}

TEST_CASE("all policies preserve total work") {
    const auto batch = secs({10, 12, 13, 15, 20, 32, 40, 13, 12});
    const Time work = total(batch);

    Rng draws(5);
    std::size_t cursor = 2;
    std::vector<std::size_t> counts(4, 1);
    CHECK(total(assign_random(batch, 4, draws)) == work);
    CHECK(total(assign_fifo(batch, 4, cursor)) == work);
    CHECK(total(assign_greedy(batch, 4, counts)) == work);
}
