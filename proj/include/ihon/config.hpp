// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ihon/budget.hpp"
#include "ihon/fusion_node.hpp"
#include "ihon/simulation.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ihon {

inline const std::vector<std::uint64_t> kDefaultSeeds{907, 234, 326, 104, 711,
                                                      523, 883, 113, 417, 656};

/// Parameters of one batch of sub-simulations (one per seed).
///
/// In StrictPriority mode the priority class (HP) takes gst_load and
/// gst_length, the low class (LP) takes sm_load and lp_length.
struct RunConfig
{
    std::int64_t link_capacity_bps = 10'000'000'000;
    std::uint32_t gst_length = 1200;
    std::uint32_t sm_length_min = 40;
    std::uint32_t sm_length_max = 1500;
    std::uint32_t lp_length = 1500;
    double gst_load = 0.5;
    double sm_load = 0.3;
    std::uint32_t n_interfaces = 1;
    std::uint64_t n_packets = 40'000;
    std::vector<std::uint64_t> seeds = kDefaultSeeds;
    std::uint64_t buffer_capacity = 16ull * 1024 * 1024;
    SchedulerMode scheduler_mode = SchedulerMode::Fusion;
    std::uint32_t scan_depth = 1;
    /// Defaults to the service time of the largest SM packet.
    std::optional<Picoseconds> fdl_delay;
    StopRule stop_rule = StopRule::CommonHorizon;

    double system_load() const noexcept { return gst_load + sm_load; }
    Picoseconds effective_fdl_delay() const;
};

std::string to_string(StopRule rule);
StopRule stop_rule_from_string(const std::string& name);

/// Throws ConfigError naming the first invalid field.
void validate(const RunConfig& config);

/// Sub-simulation inputs for one seed.
SimulationSetup make_setup(const RunConfig& config, std::uint64_t seed);

/// A parameter swept over a list of values; every point is a full batch.
struct SweepSpec
{
    std::string parameter = "gst_load"; // gst_load | sm_load
    std::vector<double> values;
};

/// Inclusive arithmetic range, robust to float accumulation.
std::vector<double> sweep_range(double start, double stop, double step);

RunConfig apply_sweep_value(RunConfig base, const std::string& parameter, double value);

struct BudgetConfig
{
    BudgetSpec spec;
    std::uint32_t n_min = 2;
    std::uint32_t n_max = 6;
    /// Optional node-only allowance (propagation excluded), e.g. 5 us.
    std::optional<Picoseconds> node_budget;
};

/// Whole configuration document: sections run, sweep, budget, profiles.
struct ExperimentConfig
{
    RunConfig run;
    std::optional<SweepSpec> sweep;
    BudgetConfig budget;
    std::vector<ServiceClassProfile> profiles{fronthaul_profile()};
};

ExperimentConfig parse_config(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentConfig& config);

/// Reads a JSON document, or the `# config ` line of a results CSV.
ExperimentConfig load_config_file(const std::string& path);

std::string to_string(SchedulerMode mode);
SchedulerMode scheduler_mode_from_string(const std::string& name);

} // namespace ihon
