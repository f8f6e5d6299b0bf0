#include "twsched/io.hpp"

#include "twsched/errors.hpp"

#include <fstream>

namespace twsched {

std::string results_csv(const ExperimentTable& table) {
    std::string out = "policy,n,rep,seed,makespan,tcd";
    for (std::size_t m = 1; m <= table.config.machines; ++m)
        out += ",load" + std::to_string(m);
    out += "\n";
    for (const MetricsRecord& record : table.records) {
        out += std::string(to_string(record.policy)) + "," + std::to_string(record.key) + "," +
               std::to_string(record.rep) + "," + std::to_string(record.seed) + "," +
               record.makespan.str() + "," + record.tcd.str();
        for (Time load : record.loads) out += "," + load.str();
        out += "\n";
    }
    return out;
}

std::string aggregate_csv(const ExperimentTable& table) {
    std::string out = "policy,n,reps,mean_makespan,mean_tcd\n";
    for (const auto& aggregate : table.aggregates) {
        out += std::string(to_string(aggregate.policy)) + "," + std::to_string(aggregate.key) +
               "," + std::to_string(aggregate.count) + "," +
               format_mean(aggregate.sum_makespan_ticks, aggregate.count) + "," +
               format_mean(aggregate.sum_tcd_ticks, aggregate.count) + "\n";
    }
    return out;
}

std::string format_mean(std::int64_t sum_ticks, std::size_t count) {
    if (count == 0) throw ConfigError("mean of zero samples");
    const bool negative = sum_ticks < 0;
    auto numerator = static_cast<std::uint64_t>(negative ? -sum_ticks : sum_ticks);
    const auto denominator = static_cast<std::uint64_t>(count) * Time::ticks_per_second;

    std::string out = negative ? "-" : "";
    out += std::to_string(numerator / denominator);
    std::uint64_t remainder = numerator % denominator;
    if (remainder != 0) {
        std::string frac;
        for (int digit = 0; digit < 6 && remainder != 0; ++digit) {
            remainder *= 10;
            frac += static_cast<char>('0' + remainder / denominator);
            remainder %= denominator;
        }
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
    }
    return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open for writing: " + path.string());
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    file.flush();
    if (!file) throw IoError("write failed: " + path.string());
}

} // namespace twsched
