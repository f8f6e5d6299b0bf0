#include "twsched/cli.hpp"

#include "twsched/errors.hpp"
#include "twsched/io.hpp"
#include "twsched/plot.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace twsched {

namespace {

std::vector<Time> parse_exec_times(const std::string& text) {
    std::vector<Time> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item.empty()) throw ConfigError("empty entry in --exec-times");
        values.push_back(Time::parse(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return values;
}

std::vector<Policy> parse_policies(const std::string& text) {
    std::vector<Policy> policies;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item.empty()) throw ConfigError("empty entry in --policies");
        policies.push_back(policy_from_string(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return policies;
}

std::pair<int, int> parse_n_range(const std::string& text) {
    const std::size_t dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int n = std::stoi(text);
            return {n, n};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw ConfigError("--n-range wants <n> or <lo>..<hi>, got: " + text);
    }
}

std::uint64_t seed_from_environment() {
    const char* env = std::getenv("TWSCHED_SEED");
    if (env == nullptr) return 1;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw ConfigError(std::string("TWSCHED_SEED is not a number: ") + env);
    }
}

const std::vector<Time> default_exec_values = {Time::seconds(10), Time::seconds(12),
                                               Time::seconds(13), Time::seconds(15),
                                               Time::seconds(20), Time::seconds(32),
                                               Time::seconds(40)};

// Means keyed by (policy, n/run) for chart building.
std::map<std::pair<Policy, int>, double> mean_makespans(const ExperimentTable& table) {
    std::map<std::pair<Policy, int>, double> means;
    for (const auto& a : table.aggregates) means[{a.policy, a.key}] = a.mean_makespan();
    return means;
}

std::map<std::pair<Policy, int>, double> mean_tcds(const ExperimentTable& table) {
    std::map<std::pair<Policy, int>, double> means;
    for (const auto& a : table.aggregates) means[{a.policy, a.key}] = a.mean_tcd();
    return means;
}

std::vector<int> keys_of(const ExperimentTable& table) {
    std::vector<int> keys;
    for (const auto& a : table.aggregates) {
        if (a.policy != table.config.policies.front()) break;
        keys.push_back(a.key);
    }
    return keys;
}

Series mean_series(const ExperimentTable& table, Policy policy,
                   const std::map<std::pair<Policy, int>, double>& means) {
    Series series{std::string(to_string(policy)), {}};
    for (int key : keys_of(table))
        series.points.emplace_back(key, means.at({policy, key}));
    return series;
}

Series gap_series(const ExperimentTable& table, Policy policy,
                  const std::map<std::pair<Policy, int>, double>& means) {
    Series series{std::string(to_string(policy)) + " - ours", {}};
    for (int key : keys_of(table))
        series.points.emplace_back(key, means.at({policy, key}) - means.at({Policy::Ours, key}));
    return series;
}

bool has_policy(const ExperimentConfig& config, Policy policy) {
    return std::find(config.policies.begin(), config.policies.end(), policy) !=
           config.policies.end();
}

std::size_t write_charts(const ExperimentTable& table, const std::filesystem::path& dir) {
    const ExperimentConfig& config = table.config;
    const auto makespans = mean_makespans(table);
    const auto tcds = mean_tcds(table);
    std::size_t charts = 0;

    if (config.arrival == ArrivalKind::Fixed) {
        std::vector<Series> mean_plot, gap_plot, tcd_plot;
        for (Policy policy : config.policies) {
            mean_plot.push_back(mean_series(table, policy, makespans));
            tcd_plot.push_back(mean_series(table, policy, tcds));
            if (policy != Policy::Ours && has_policy(config, Policy::Ours))
                gap_plot.push_back(gap_series(table, policy, makespans));
        }
        write_file(dir / "makespan_vs_n.svg",
                   line_chart_svg("Mean completion time by batch size", "tasks per batch",
                                  "mean completion time [s]", mean_plot));
        write_file(dir / "makespan_gap_vs_n.svg",
                   line_chart_svg("Completion time gap to the balancing rule", "tasks per batch",
                                  "mean gap [s]", gap_plot));
        write_file(dir / "tcd_vs_n.svg",
                   line_chart_svg("Mean finishing-time spread by batch size", "tasks per batch",
                                  "mean spread [s]", tcd_plot));
        charts = 3;
    } else {
        std::vector<Series> rep_plot, mean_plot, gap_plot, tcd_plot;
        for (Policy policy : config.policies) {
            Series reps{std::string(to_string(policy)), {}};
            for (const MetricsRecord& record : table.records)
                if (record.policy == policy && record.key == 1)
                    reps.points.emplace_back(record.rep, record.makespan.to_seconds());
            rep_plot.push_back(std::move(reps));
            mean_plot.push_back(mean_series(table, policy, makespans));
            tcd_plot.push_back(mean_series(table, policy, tcds));
            if (policy != Policy::Ours && has_policy(config, Policy::Ours))
                gap_plot.push_back(gap_series(table, policy, makespans));
        }
        write_file(dir / "rep_makespan_run1.svg",
                   line_chart_svg("Completion time per replication, first run", "replication",
                                  "completion time [s]", rep_plot));
        write_file(dir / "mean_makespan_per_run.svg",
                   line_chart_svg("Mean completion time per run", "run",
                                  "mean completion time [s]", mean_plot));
        write_file(dir / "makespan_gap_per_run.svg",
                   line_chart_svg("Completion time gap to the balancing rule per run", "run",
                                  "mean gap [s]", gap_plot));
        write_file(dir / "mean_tcd_per_run.svg",
                   line_chart_svg("Mean finishing-time spread per run", "run", "mean spread [s]",
                                  tcd_plot));
        charts = 4;
    }
    return charts;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Task allocation experiments: variance-minimizing balancing "
                 "against random, rotating, and shortest-queue baselines"};
    app.get_formatter()->column_width(28);

    std::string preset;
    app.add_option("--preset", preset, "fig1-2-3 | fig4-5-6-7 | fig8 | custom")
        ->required()
        ->check(CLI::IsMember({"fig1-2-3", "fig4-5-6-7", "fig8", "custom"}));
    std::size_t machines = 0;
    auto* machines_opt = app.add_option("--machines", machines, "number of machines");
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "root seed (default: $TWSCHED_SEED, then 1)");
    int reps = 0;
    auto* reps_opt = app.add_option("--reps", reps, "replications per point");
    int runs = 0;
    auto* runs_opt = app.add_option("--runs", runs, "independent runs (batch-process arrivals)");
    double lambda = 0.0;
    auto* lambda_opt = app.add_option("--lambda", lambda, "mean batch size (Poisson arrivals)");
    int steps = 0;
    auto* steps_opt = app.add_option("--steps", steps, "arrival steps per replication");
    std::string n_range;
    auto* n_range_opt =
        app.add_option("--n-range", n_range, "batch sizes <n> or <lo>..<hi> (fixed arrivals)");
    std::string exec_times;
    auto* exec_opt =
        app.add_option("--exec-times", exec_times, "comma-separated completion times [s]");
    std::string policy_list;
    auto* policies_opt =
        app.add_option("--policies", policy_list, "comma-separated: ours,random,fifo,greedy");
    std::string out_dir = "out";
    app.add_option("--out-dir", out_dir, "output directory (default: out)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        ExperimentConfig config;
        config.exec_values = default_exec_values;
        if (preset == "fig1-2-3") {
            config.arrival = ArrivalKind::Fixed;
            config.n_lo = 1;
            config.n_hi = 20;
            config.replications = 1000;
        } else if (preset == "fig8") {
            config.arrival = ArrivalKind::Fixed;
            config.n_lo = 1;
            config.n_hi = 101;
            config.replications = 200;
        } else if (preset == "fig4-5-6-7") {
            config.arrival = ArrivalKind::Poisson;
            config.lambda = 7.0;
            config.steps = 101;
            config.replications = 50;
            config.runs = 20;
        } else { // custom: arrival kind follows the flags given
            const bool wants_poisson =
                lambda_opt->count() > 0 || steps_opt->count() > 0 || runs_opt->count() > 0;
            if (wants_poisson && n_range_opt->count() > 0)
                throw ConfigError("--n-range cannot be combined with --lambda/--steps/--runs");
            config.arrival = wants_poisson ? ArrivalKind::Poisson : ArrivalKind::Fixed;
            config.n_lo = 1;
            config.n_hi = 20;
        }

        if (machines_opt->count() > 0) config.machines = machines;
        if (reps_opt->count() > 0) config.replications = reps;
        if (runs_opt->count() > 0) config.runs = runs;
        if (lambda_opt->count() > 0) config.lambda = lambda;
        if (steps_opt->count() > 0) config.steps = steps;
        if (n_range_opt->count() > 0) {
            if (config.arrival != ArrivalKind::Fixed)
                throw ConfigError("--n-range only applies to fixed arrivals");
            std::tie(config.n_lo, config.n_hi) = parse_n_range(n_range);
        }
        if (exec_opt->count() > 0) config.exec_values = parse_exec_times(exec_times);
        if (policies_opt->count() > 0) config.policies = parse_policies(policy_list);
        config.seed = seed_opt->count() > 0 ? seed : seed_from_environment();

        validate(config);

        const std::filesystem::path dir(out_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw IoError("cannot create output directory " + dir.string() + ": " +
                              ec.message());

        const ExperimentTable table = run_experiment(config);
        write_file(dir / "results.csv", results_csv(table));
        write_file(dir / "aggregate.csv", aggregate_csv(table));
        const std::size_t charts = write_charts(table, dir);

        out << "wrote results.csv, aggregate.csv and " << charts << " charts to " << dir.string()
            << " (" << table.records.size() << " rows, seed " << config.seed << ")\n";
        return 0;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace twsched
