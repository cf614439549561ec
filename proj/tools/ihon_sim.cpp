// SPDX-License-Identifier: Apache-2.0
//
// ihon-sim: single runs, load sweeps and link-budget tables for the
// IHON/Fusion node model.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 I/O error,
// 3 model invariant violated.

#include "ihon/config.hpp"
#include "ihon/error.hpp"
#include "ihon/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitInvariant = 3;

struct IoError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::vector<std::uint64_t> parse_seed_list(const std::string& text)
{
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size())
            throw ihon::ConfigError("--seed-override", "not an integer: \"" + item + "\"");
        seeds.push_back(v);
    }
    if (seeds.empty())
        throw ihon::ConfigError("--seed-override", "empty seed list");
    return seeds;
}

void write_to(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out.flush())
        throw IoError("write to " + path + " failed");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete-event simulator of an IHON/Fusion node and fronthaul budget calculator"};

    std::string mode = "auto";
    std::string config_path;
    std::string out_path;
    std::string seed_override;
    std::string event_log_path;
    unsigned threads = 1;
    std::optional<double> gst_load;
    std::optional<double> sm_load;
    std::optional<std::uint64_t> packets;
    std::optional<std::string> scheduler;
    std::optional<std::string> stop_rule;

    app.add_option("--mode", mode, "single | sweep | budget (default: sweep if the config has one)")
        ->check(CLI::IsMember({"auto", "single", "sweep", "budget"}));
    app.add_option("--config", config_path, "JSON configuration, or a results CSV to re-run");
    app.add_option("--out", out_path, "CSV destination (default stdout)");
    app.add_option("--seed-override", seed_override, "comma-separated seeds");
    app.add_option("--event-log", event_log_path, "write the raw event log (single mode)");
    app.add_option("--threads", threads, "parallel seeds per batch")->check(CLI::PositiveNumber);
    app.add_option("--gst-load", gst_load, "override run.gst_load");
    app.add_option("--sm-load", sm_load, "override run.sm_load");
    app.add_option("--packets", packets, "override run.n_packets");
    app.add_option("--stop-rule", stop_rule, "override run.stop_rule")
        ->check(CLI::IsMember({"common_horizon", "per_class"}));
    app.add_option("--scheduler", scheduler, "override run.scheduler_mode")
        ->check(CLI::IsMember({"fusion", "strict_priority"}));

    CLI11_PARSE(app, argc, argv);

    try {
        ihon::ExperimentConfig cfg;
        if (!config_path.empty()) {
            try {
                cfg = ihon::load_config_file(config_path);
            } catch (const ihon::ConfigError&) {
                throw;
            } catch (const std::runtime_error& e) {
                throw IoError(e.what());
            }
        }
        if (!seed_override.empty())
            cfg.run.seeds = parse_seed_list(seed_override);
        if (gst_load)
            cfg.run.gst_load = *gst_load;
        if (sm_load)
            cfg.run.sm_load = *sm_load;
        if (packets)
            cfg.run.n_packets = *packets;
        if (scheduler)
            cfg.run.scheduler_mode = ihon::scheduler_mode_from_string(*scheduler);
        if (stop_rule)
            cfg.run.stop_rule = ihon::stop_rule_from_string(*stop_rule);
        ihon::validate(cfg.run);

        if (mode == "auto")
            mode = cfg.sweep ? "sweep" : "single";

        std::ostringstream csv;
        if (mode == "budget") {
            const auto rows =
                ihon::budget_table(cfg.budget.spec, cfg.budget.n_min, cfg.budget.n_max);
            ihon::emit_budget_csv(csv, cfg, rows);
        } else if (mode == "sweep") {
            if (!cfg.sweep)
                throw ihon::ConfigError("sweep", "--mode sweep needs a sweep section");
            if (!event_log_path.empty())
                throw ihon::ConfigError("--event-log", "only supported in single mode");
            const auto points =
                ihon::run_sweep(*cfg.sweep, cfg.run, ihon::RunOptions{threads, false});
            std::vector<ihon::RunResult> results;
            for (const auto& p : points)
                results.push_back(p.result);
            ihon::emit_csv(csv, cfg, mode, results);
        } else {
            cfg.sweep.reset();
            const auto result =
                ihon::run_single(cfg.run, ihon::RunOptions{threads, !event_log_path.empty()});
            ihon::emit_csv(csv, cfg, mode, std::span(&result, 1));
            if (!event_log_path.empty()) {
                std::ostringstream log;
                ihon::write_event_log(log, result);
                write_to(event_log_path, log.str());
            }
            std::cerr << ihon::profile_report(result, cfg.profiles);
        }
        write_to(out_path, csv.str());
    } catch (const ihon::InvariantViolation& e) {
        std::cerr << "ihon-sim: invariant violation: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const IoError& e) {
        std::cerr << "ihon-sim: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ihon-sim: invalid configuration: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "ihon-sim: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
