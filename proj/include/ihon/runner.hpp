// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ihon/budget.hpp"
#include "ihon/config.hpp"
#include "ihon/metrics.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ihon {

struct RunOptions
{
    /// Seeds of one batch run on up to this many threads. Output never
    /// depends on it.
    unsigned threads = 1;
    bool capture_event_log = false;
};

struct RunResult
{
    RunConfig config;
    std::vector<RunMetrics> per_seed;
    std::vector<std::string> event_logs; // per seed, if captured
    std::array<BatchSummary, kAllClasses.size()> classes;
    std::array<MetricStats, kAllClasses.size()> offered_load;
    MetricStats utilization;

    const BatchSummary& of(TrafficClass c) const { return classes[static_cast<std::size_t>(c)]; }
    const MetricStats& offered(TrafficClass c) const
    {
        return offered_load[static_cast<std::size_t>(c)];
    }
};

/// Priority and best-effort class of a scheduler mode: (GST, SM) or (HP, LP).
std::array<TrafficClass, 2> active_classes(SchedulerMode mode) noexcept;

/// One sub-simulation per seed, aggregated in seed order.
RunResult run_single(const RunConfig& config, const RunOptions& options = {});

struct SweepPoint
{
    double value;
    RunResult result;
};

std::vector<SweepPoint> run_sweep(const SweepSpec& sweep, const RunConfig& base,
                                  const RunOptions& options = {});

/// Header comment block (effective config), column header, one row per result.
void emit_csv(std::ostream& out, const ExperimentConfig& effective, std::string_view mode,
              std::span<const RunResult> results);

std::vector<std::string> csv_columns(SchedulerMode mode);

void emit_budget_csv(std::ostream& out, const ExperimentConfig& effective,
                     std::span<const BudgetRow> rows);

/// Human-readable per-class summary with a verdict against every profile.
std::string profile_report(const RunResult& result,
                           std::span<const ServiceClassProfile> profiles);

ClassQos class_qos(const BatchSummary& summary);

/// Writes the captured per-seed logs, each preceded by `# seed <n>`.
void write_event_log(std::ostream& out, const RunResult& result);

} // namespace ihon
