// SPDX-License-Identifier: Apache-2.0
#include "ihon/runner.hpp"

#include "ihon/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <exception>
#include <ostream>
#include <sstream>
#include <thread>

namespace ihon {

std::array<TrafficClass, 2> active_classes(SchedulerMode mode) noexcept
{
    if (mode == SchedulerMode::Fusion)
        return {TrafficClass::GST, TrafficClass::SM};
    return {TrafficClass::HP, TrafficClass::LP};
}

namespace {

struct SeedOutcome
{
    RunMetrics metrics;
    std::string log;
};

SeedOutcome run_seed(const RunConfig& config, std::uint64_t seed, bool capture_log)
{
    Simulation sim(make_setup(config, seed));
    std::ostringstream log;
    if (capture_log)
        sim.set_event_log(&log);
    sim.run(config.n_packets);
    return {sim.metrics(), capture_log ? log.str() : std::string{}};
}

std::vector<SeedOutcome> run_seeds(const RunConfig& config, const RunOptions& options)
{
    const std::size_t n = config.seeds.size();
    std::vector<SeedOutcome> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = run_seed(config, config.seeds[i], options.capture_event_log);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned threads =
        static_cast<unsigned>(std::clamp<std::size_t>(options.threads, 1, n));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace

RunResult run_single(const RunConfig& config, const RunOptions& options)
{
    validate(config);
    RunResult r;
    r.config = config;
    for (auto& outcome : run_seeds(config, options)) {
        r.per_seed.push_back(std::move(outcome.metrics));
        if (options.capture_event_log)
            r.event_logs.push_back(std::move(outcome.log));
    }
    for (TrafficClass c : kAllClasses) {
        const auto idx = static_cast<std::size_t>(c);
        std::vector<ClassMetrics> batch;
        std::vector<double> loads;
        for (const auto& m : r.per_seed) {
            batch.push_back(m.of(c));
            if (auto l = offered_load(m.of(c), config.link_capacity_bps))
                loads.push_back(*l);
        }
        r.classes[idx] = aggregate(batch);
        r.offered_load[idx] = stats_of(loads);
    }
    std::vector<double> util;
    for (const auto& m : r.per_seed)
        if (auto u = utilization(m))
            util.push_back(*u);
    r.utilization = stats_of(util);
    return r;
}

std::vector<SweepPoint> run_sweep(const SweepSpec& sweep, const RunConfig& base,
                                  const RunOptions& options)
{
    std::vector<RunConfig> configs;
    for (double v : sweep.values) {
        configs.push_back(apply_sweep_value(base, sweep.parameter, v));
        validate(configs.back());
    }
    std::vector<SweepPoint> out;
    out.reserve(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i)
        out.push_back({sweep.values[i], run_single(configs[i], options)});
    return out;
}

// ------------------------------------------------------------------- CSV

namespace {

std::string fmt(const char* spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// Times are carried in picoseconds and printed in microseconds.
std::string us_or_empty(const MetricStats& s)
{
    return s.has_data() ? fmt("%.3f", s.mean / 1e6) : std::string{};
}

std::string sd_us_or_empty(const MetricStats& s)
{
    return s.has_data() ? fmt("%.3f", s.stddev / 1e6) : std::string{};
}

std::string ratio_or_empty(const MetricStats& s, bool sd = false)
{
    return s.has_data() ? fmt("%.9g", sd ? s.stddev : s.mean) : std::string{};
}

const char* kClassColumns[] = {"generated",       "delivered",        "dropped",
                               "latency_mean_us", "latency_mean_sd_us", "latency_min_us",
                               "latency_max_us",  "pdv_us",           "pdv_sd_us",
                               "pdv_mean_us",     "plr",              "plr_sd",
                               "offered_load"};

} // namespace

std::vector<std::string> csv_columns(SchedulerMode mode)
{
    std::vector<std::string> cols{"gst_load", "sm_load", "system_load"};
    for (TrafficClass c : active_classes(mode))
        for (const char* col : kClassColumns)
            cols.push_back(std::string(to_string(c)) + "_" + col);
    cols.push_back("utilization");
    return cols;
}

namespace {

void write_header(std::ostream& out, const ExperimentConfig& effective, std::string_view mode)
{
    out << "# ihon-sim results\n";
    out << "# mode " << mode << '\n';
    out << "# config " << to_json(effective).dump() << '\n';
    out << "# seeds";
    for (auto s : effective.run.seeds)
        out << ' ' << s;
    out << '\n';
}

} // namespace

void emit_csv(std::ostream& out, const ExperimentConfig& effective, std::string_view mode,
              std::span<const RunResult> results)
{
    write_header(out, effective, mode);
    const auto cols = csv_columns(effective.run.scheduler_mode);
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << '\n';

    for (const RunResult& r : results) {
        std::vector<std::string> row{fmt("%.9g", r.config.gst_load),
                                     fmt("%.9g", r.config.sm_load),
                                     fmt("%.9g", r.config.system_load())};
        for (TrafficClass c : active_classes(r.config.scheduler_mode)) {
            const BatchSummary& s = r.of(c);
            row.push_back(std::to_string(s.generated));
            row.push_back(std::to_string(s.delivered));
            row.push_back(std::to_string(s.dropped));
            row.push_back(us_or_empty(s.latency_mean));
            row.push_back(sd_us_or_empty(s.latency_mean));
            row.push_back(us_or_empty(s.latency_min));
            row.push_back(us_or_empty(s.latency_max));
            row.push_back(us_or_empty(s.pdv));
            row.push_back(sd_us_or_empty(s.pdv));
            row.push_back(us_or_empty(s.pdv_mean));
            row.push_back(ratio_or_empty(s.plr));
            row.push_back(ratio_or_empty(s.plr, true));
            row.push_back(r.offered(c).has_data() ? fmt("%.6f", r.offered(c).mean)
                                                  : std::string{});
        }
        row.push_back(r.utilization.has_data() ? fmt("%.6f", r.utilization.mean)
                                               : std::string{});
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

void emit_budget_csv(std::ostream& out, const ExperimentConfig& effective,
                     std::span<const BudgetRow> rows)
{
    write_header(out, effective, "budget");
    const bool with_node_budget = effective.budget.node_budget.has_value();
    out << "nodes,node_delay_total_us,link_length_km,feasible";
    if (with_node_budget)
        out << ",within_node_budget";
    out << '\n';
    for (const auto& r : rows) {
        out << r.nodes << ',' << fmt("%.3f", to_us(r.node_delay_total)) << ','
            << fmt("%.2f", r.link.km) << ',' << (r.link.feasible ? 1 : 0);
        if (with_node_budget)
            out << ',' << (r.node_delay_total <= *effective.budget.node_budget ? 1 : 0);
        out << '\n';
    }
}

ClassQos class_qos(const BatchSummary& s)
{
    ClassQos q;
    if (s.latency_mean.has_data())
        q.mean_latency = round_ps(s.latency_mean.mean);
    if (s.pdv.has_data())
        q.pdv = round_ps(s.pdv.mean);
    if (s.plr.has_data())
        q.plr = s.plr.mean;
    return q;
}

std::string profile_report(const RunResult& r, std::span<const ServiceClassProfile> profiles)
{
    std::ostringstream out;
    auto verdict = [](const std::optional<bool>& b) {
        return !b ? "skip" : (*b ? "pass" : "FAIL");
    };
    out << "gst_load=" << r.config.gst_load << " sm_load=" << r.config.sm_load
        << " seeds=" << r.config.seeds.size() << '\n';
    for (TrafficClass c : active_classes(r.config.scheduler_mode)) {
        const BatchSummary& s = r.of(c);
        const ClassQos q = class_qos(s);
        out << "  " << to_string(c) << ": generated=" << s.generated
            << " delivered=" << s.delivered << " dropped=" << s.dropped;
        if (q.mean_latency)
            out << " latency=" << fmt("%.3f", to_us(*q.mean_latency)) << "us";
        if (q.pdv)
            out << " pdv=" << fmt("%.3f", to_us(*q.pdv)) << "us";
        if (q.plr)
            out << " plr=" << fmt("%.3g", *q.plr);
        out << '\n';
        for (const auto& p : profiles) {
            const ProfileVerdict v = check_profile(q, p);
            out << "    " << p.name << ": " << (v.pass ? "PASS" : "FAIL")
                << " (plr " << verdict(v.plr_ok) << ", delay " << verdict(v.delay_ok)
                << ", jitter " << verdict(v.jitter_ok) << ")\n";
        }
    }
    return out.str();
}

void write_event_log(std::ostream& out, const RunResult& r)
{
    for (std::size_t i = 0; i < r.event_logs.size(); ++i)
        out << "# seed " << r.config.seeds[i] << '\n' << r.event_logs[i];
}

} // namespace ihon
