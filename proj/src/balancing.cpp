#include "twsched/balancing.hpp"

#include "twsched/errors.hpp"

#include <algorithm>
#include <numeric>

namespace twsched {

namespace {

void check_inputs(std::size_t places, const LoadVector& initial, std::size_t items) {
    if (places == 0) throw ConfigError("cannot balance over zero places");
    if (!initial.empty() && initial.size() != places)
        throw ConfigError("initial load vector length does not match place count");
    (void)items;
}

LoadVector starting_loads(std::size_t places, const LoadVector& initial) {
    return initial.empty() ? LoadVector(places, Time{}) : initial;
}

} // namespace

Time Assignment::makespan() const {
    Time best{};
    for (Time load : loads) best = std::max(best, load);
    return best;
}

Assignment balance_allocate(const std::vector<Time>& items, std::size_t places,
                            const LoadVector& initial_loads) {
    check_inputs(places, initial_loads, items.size());

    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return items[a] > items[b]; });

    Assignment result;
    result.place_of.resize(items.size());
    result.loads = starting_loads(places, initial_loads);
    for (std::size_t item : order) {
        const auto lightest = std::min_element(result.loads.begin(), result.loads.end());
        const auto place = static_cast<std::size_t>(lightest - result.loads.begin());
        result.place_of[item] = place;
        result.loads[place] += items[item];
    }
    return result;
}

__int128 variance_key(const LoadVector& loads) {
    __int128 sum = 0, sum_sq = 0;
    for (Time load : loads) {
        const auto x = static_cast<__int128>(load.ticks());
        sum += x;
        sum_sq += x * x;
    }
    return static_cast<__int128>(loads.size()) * sum_sq - sum * sum;
}

bool variance_less(const LoadVector& a, const LoadVector& b) {
    if (a.empty() || b.empty()) throw ConfigError("variance of an empty load vector");
    const auto ma = static_cast<__int128>(a.size());
    const auto mb = static_cast<__int128>(b.size());
    return variance_key(a) * mb * mb < variance_key(b) * ma * ma;
}

double variance(const LoadVector& loads) {
    if (loads.empty()) throw ConfigError("variance of an empty load vector");
    const auto m = static_cast<double>(loads.size());
    const double key = static_cast<double>(variance_key(loads));
    const double per_tick2 = key / (m * m);
    return per_tick2 / (Time::ticks_per_second * Time::ticks_per_second);
}

OracleResult brute_force_oracle(const std::vector<Time>& items, std::size_t places,
                                const LoadVector& initial_loads) {
    check_inputs(places, initial_loads, items.size());

    constexpr std::uint64_t cap = 10'000'000;
    std::uint64_t combinations = 1;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (combinations > cap / places)
            throw OracleCapacityError("exhaustive search too large: " +
                                      std::to_string(places) + "^" +
                                      std::to_string(items.size()) + " assignments");
        combinations *= places;
    }

    const LoadVector base = starting_loads(places, initial_loads);

    // Odometer over place choices; digit i is the place of item i.
    std::vector<std::size_t> digits(items.size(), 0);
    OracleResult best;
    bool first = true;
    for (std::uint64_t step = 0; step < combinations; ++step) {
        LoadVector loads = base;
        for (std::size_t i = 0; i < items.size(); ++i) loads[digits[i]] += items[i];

        const __int128 key = variance_key(loads);
        Time makespan{};
        for (Time load : loads) makespan = std::max(makespan, load);

        if (first || key < variance_key(best.variance_witness.loads)) {
            best.variance_witness = {digits, loads};
            best.min_variance = variance(loads);
        }
        if (first || makespan < best.min_makespan) {
            best.makespan_witness = {digits, loads};
            best.min_makespan = makespan;
        }
        first = false;

        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (++digits[i] < places) break;
            digits[i] = 0;
        }
    }
    return best;
}

} // namespace twsched
