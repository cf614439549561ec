// SPDX-License-Identifier: Apache-2.0
#include "ihon/config.hpp"

#include "ihon/error.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ihon {

using nlohmann::json;

std::string to_string(SchedulerMode mode)
{
    return mode == SchedulerMode::Fusion ? "fusion" : "strict_priority";
}

SchedulerMode scheduler_mode_from_string(const std::string& name)
{
    if (name == "fusion")
        return SchedulerMode::Fusion;
    if (name == "strict_priority")
        return SchedulerMode::StrictPriority;
    throw ConfigError("run.scheduler_mode", "expected \"fusion\" or \"strict_priority\", got \"" +
                                                name + "\"");
}

std::string to_string(StopRule rule)
{
    return rule == StopRule::CommonHorizon ? "common_horizon" : "per_class";
}

StopRule stop_rule_from_string(const std::string& name)
{
    if (name == "common_horizon")
        return StopRule::CommonHorizon;
    if (name == "per_class")
        return StopRule::PerClass;
    throw ConfigError("run.stop_rule",
                      "expected \"common_horizon\" or \"per_class\", got \"" + name + "\"");
}

Picoseconds RunConfig::effective_fdl_delay() const
{
    return fdl_delay.value_or(service_time(sm_length_max, link_capacity_bps));
}

void validate(const RunConfig& c)
{
    auto load_ok = [](double v) { return std::isfinite(v) && v >= 0.0 && v < 1.0; };
    if (c.link_capacity_bps <= 0)
        throw ConfigError("run.link_capacity_bps", "must be positive");
    if (!load_ok(c.gst_load))
        throw ConfigError("run.gst_load", "must lie in [0, 1)");
    if (!load_ok(c.sm_load))
        throw ConfigError("run.sm_load", "must lie in [0, 1)");
    if (c.gst_length == 0)
        throw ConfigError("run.gst_length", "must be positive");
    if (c.lp_length == 0)
        throw ConfigError("run.lp_length", "must be positive");
    if (c.sm_length_min == 0)
        throw ConfigError("run.sm_length_min", "must be positive");
    if (c.sm_length_min > c.sm_length_max)
        throw ConfigError("run.sm_length_max", "must be >= sm_length_min");
    if (c.n_interfaces == 0)
        throw ConfigError("run.n_interfaces", "must be >= 1");
    if (c.seeds.empty())
        throw ConfigError("run.seeds", "at least one seed is required");
    if (c.scan_depth == 0)
        throw ConfigError("run.scan_depth", "must be >= 1");
    const std::uint32_t largest_low = c.scheduler_mode == SchedulerMode::Fusion
                                          ? c.sm_length_max
                                          : std::max(c.lp_length, c.gst_length);
    if (c.buffer_capacity <= largest_low)
        throw ConfigError("run.buffer_capacity", "must exceed the largest packet length");
    if (c.fdl_delay && *c.fdl_delay < service_time(c.sm_length_max, c.link_capacity_bps))
        throw ConfigError("run.fdl_delay_ps",
                          "must cover the service time of the largest SM packet");
}

SimulationSetup make_setup(const RunConfig& c, std::uint64_t seed)
{
    SimulationSetup s;
    s.seed = seed;
    s.node.link_capacity_bps = c.link_capacity_bps;
    s.node.fdl_delay = c.effective_fdl_delay();
    s.node.buffer_capacity = c.buffer_capacity;
    s.node.mode = c.scheduler_mode;
    s.node.scan_depth = c.scan_depth;
    s.stop_rule = c.stop_rule;
    if (c.scheduler_mode == SchedulerMode::Fusion) {
        s.priority = {TrafficClass::GST, c.gst_load, Deterministic{c.gst_length}, 1};
        s.best_effort = {TrafficClass::SM, c.sm_load, UniformInt{c.sm_length_min, c.sm_length_max},
                         c.n_interfaces};
    } else {
        s.priority = {TrafficClass::HP, c.gst_load, Deterministic{c.gst_length}, 1};
        s.best_effort = {TrafficClass::LP, c.sm_load, Deterministic{c.lp_length}, c.n_interfaces};
    }
    return s;
}

std::vector<double> sweep_range(double start, double stop, double step)
{
    if (!(step > 0.0))
        throw ConfigError("sweep.step", "must be positive");
    if (stop < start)
        throw ConfigError("sweep.stop", "must be >= start");
    std::vector<double> out;
    for (long i = 0;; ++i) {
        // Round to 1e-9 so 0.1 + 2 * 0.1 reads back as 0.3.
        const double v = std::round((start + static_cast<double>(i) * step) * 1e9) / 1e9;
        if (v > stop + 1e-12)
            break;
        out.push_back(v);
    }
    return out;
}

RunConfig apply_sweep_value(RunConfig base, const std::string& parameter, double value)
{
    if (parameter == "gst_load")
        base.gst_load = value;
    else if (parameter == "sm_load")
        base.sm_load = value;
    else
        throw ConfigError("sweep.parameter", "unsupported parameter \"" + parameter + "\"");
    return base;
}

// ------------------------------------------------------------------ JSON

namespace {

void reject_unknown(const json& obj, const std::string& section,
                    std::initializer_list<const char*> allowed)
{
    if (!obj.is_object())
        throw ConfigError(section, "expected an object");
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items())
        if (!keys.count(key))
            throw ConfigError(section + "." + key, "unknown key");
}

template <typename T>
void read(const json& obj, const std::string& section, const char* key, T& out)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        return;
    try {
        out = it->get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(section + "." + key, e.what());
    }
}

void read_unsigned(const json& obj, const std::string& section, const char* key,
                   std::uint64_t& out)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        return;
    if (!it->is_number_integer() || (!it->is_number_unsigned() && it->get<std::int64_t>() < 0))
        throw ConfigError(section + "." + key, "expected a non-negative integer");
    out = it->get<std::uint64_t>();
}

void read_u32(const json& obj, const std::string& section, const char* key, std::uint32_t& out)
{
    std::uint64_t v = out;
    read_unsigned(obj, section, key, v);
    if (v > 0xffffffffu)
        throw ConfigError(section + "." + key, "out of range");
    out = static_cast<std::uint32_t>(v);
}

std::optional<Picoseconds> read_optional_us(const json& obj, const std::string& section,
                                            const char* key)
{
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return std::nullopt;
    if (!it->is_number())
        throw ConfigError(section + "." + key, "expected a number of microseconds or null");
    return from_us(it->get<double>());
}

RunConfig parse_run(const json& j)
{
    const std::string s = "run";
    reject_unknown(j, s,
                   {"link_capacity_bps", "gst_length", "sm_length_min", "sm_length_max",
                    "lp_length", "gst_load", "sm_load", "n_interfaces", "n_packets", "seeds",
                    "buffer_capacity", "scheduler_mode", "scan_depth", "fdl_delay_ps", "stop_rule"});
    RunConfig c;
    std::uint64_t capacity = static_cast<std::uint64_t>(c.link_capacity_bps);
    read_unsigned(j, s, "link_capacity_bps", capacity);
    c.link_capacity_bps = static_cast<std::int64_t>(capacity);
    read_u32(j, s, "gst_length", c.gst_length);
    read_u32(j, s, "sm_length_min", c.sm_length_min);
    read_u32(j, s, "sm_length_max", c.sm_length_max);
    read_u32(j, s, "lp_length", c.lp_length);
    read(j, s, "gst_load", c.gst_load);
    read(j, s, "sm_load", c.sm_load);
    read_u32(j, s, "n_interfaces", c.n_interfaces);
    read_unsigned(j, s, "n_packets", c.n_packets);
    read(j, s, "seeds", c.seeds);
    read_unsigned(j, s, "buffer_capacity", c.buffer_capacity);
    if (auto it = j.find("scheduler_mode"); it != j.end()) {
        if (!it->is_string())
            throw ConfigError("run.scheduler_mode", "expected a string");
        c.scheduler_mode = scheduler_mode_from_string(it->get<std::string>());
    }
    read_u32(j, s, "scan_depth", c.scan_depth);
    if (auto it = j.find("stop_rule"); it != j.end()) {
        if (!it->is_string())
            throw ConfigError("run.stop_rule", "expected a string");
        c.stop_rule = stop_rule_from_string(it->get<std::string>());
    }
    if (auto it = j.find("fdl_delay_ps"); it != j.end() && !it->is_null()) {
        std::uint64_t ps = 0;
        read_unsigned(j, s, "fdl_delay_ps", ps);
        c.fdl_delay = Picoseconds{static_cast<std::int64_t>(ps)};
    }
    return c;
}

SweepSpec parse_sweep(const json& j)
{
    reject_unknown(j, "sweep", {"parameter", "values", "start", "stop", "step"});
    SweepSpec sw;
    read(j, "sweep", "parameter", sw.parameter);
    if (j.contains("values")) {
        read(j, "sweep", "values", sw.values);
    } else if (j.contains("start") && j.contains("stop") && j.contains("step")) {
        double start = 0, stop = 0, step = 0;
        read(j, "sweep", "start", start);
        read(j, "sweep", "stop", stop);
        read(j, "sweep", "step", step);
        sw.values = sweep_range(start, stop, step);
    } else {
        throw ConfigError("sweep.values", "give either values or start/stop/step");
    }
    if (sw.values.empty())
        throw ConfigError("sweep.values", "must not be empty");
    return sw;
}

BudgetConfig parse_budget(const json& j)
{
    const std::string s = "budget";
    reject_unknown(j, s,
                   {"n_min", "n_max", "node_delay_us", "node_pdv_us", "propagation_us_per_km",
                    "total_us", "node_budget_us"});
    BudgetConfig b;
    read_u32(j, s, "n_min", b.n_min);
    read_u32(j, s, "n_max", b.n_max);
    if (b.n_min > b.n_max)
        throw ConfigError("budget.n_max", "must be >= n_min");
    auto us = [&](const char* key, Picoseconds& out) {
        if (auto v = read_optional_us(j, s, key))
            out = *v;
    };
    us("node_delay_us", b.spec.node_delay);
    us("node_pdv_us", b.spec.node_pdv);
    us("propagation_us_per_km", b.spec.propagation_per_km);
    us("total_us", b.spec.total);
    if (b.spec.node_delay < Picoseconds::zero())
        throw ConfigError("budget.node_delay_us", "must be >= 0");
    if (b.spec.node_pdv < Picoseconds::zero())
        throw ConfigError("budget.node_pdv_us", "must be >= 0");
    if (b.spec.propagation_per_km <= Picoseconds::zero())
        throw ConfigError("budget.propagation_us_per_km", "must be > 0");
    if (b.spec.total < Picoseconds::zero())
        throw ConfigError("budget.total_us", "must be >= 0");
    b.node_budget = read_optional_us(j, s, "node_budget_us");
    return b;
}

std::vector<ServiceClassProfile> parse_profiles(const json& j)
{
    if (!j.is_array())
        throw ConfigError("profiles", "expected an array");
    std::vector<ServiceClassProfile> out;
    for (const auto& item : j) {
        if (item.is_string()) {
            auto p = find_builtin_profile(item.get<std::string>());
            if (!p)
                throw ConfigError("profiles", "unknown built-in profile \"" +
                                                  item.get<std::string>() + "\"");
            out.push_back(*p);
            continue;
        }
        reject_unknown(item, "profiles[]",
                       {"name", "plr_bound", "delay_bound_us", "jitter_bound_us"});
        ServiceClassProfile p;
        read(item, "profiles[]", "name", p.name);
        if (p.name.empty())
            throw ConfigError("profiles[].name", "required");
        if (auto it = item.find("plr_bound"); it != item.end() && !it->is_null()) {
            if (!it->is_number())
                throw ConfigError("profiles[].plr_bound", "expected a number or null");
            p.plr_bound = it->get<double>();
        }
        p.delay_bound = read_optional_us(item, "profiles[]", "delay_bound_us");
        p.jitter_bound = read_optional_us(item, "profiles[]", "jitter_bound_us");
        out.push_back(std::move(p));
    }
    return out;
}

json optional_us(std::optional<Picoseconds> t)
{
    return t ? json(to_us(*t)) : json(nullptr);
}

} // namespace

ExperimentConfig parse_config(const json& doc)
{
    reject_unknown(doc, "config", {"run", "sweep", "budget", "profiles"});
    ExperimentConfig cfg;
    if (doc.contains("run"))
        cfg.run = parse_run(doc["run"]);
    if (doc.contains("sweep") && !doc["sweep"].is_null())
        cfg.sweep = parse_sweep(doc["sweep"]);
    if (doc.contains("budget"))
        cfg.budget = parse_budget(doc["budget"]);
    if (doc.contains("profiles"))
        cfg.profiles = parse_profiles(doc["profiles"]);
    validate(cfg.run);
    return cfg;
}

json to_json(const ExperimentConfig& cfg)
{
    const RunConfig& r = cfg.run;
    json run = {
        {"link_capacity_bps", r.link_capacity_bps},
        {"gst_length", r.gst_length},
        {"sm_length_min", r.sm_length_min},
        {"sm_length_max", r.sm_length_max},
        {"lp_length", r.lp_length},
        {"gst_load", r.gst_load},
        {"sm_load", r.sm_load},
        {"n_interfaces", r.n_interfaces},
        {"n_packets", r.n_packets},
        {"seeds", r.seeds},
        {"buffer_capacity", r.buffer_capacity},
        {"scheduler_mode", to_string(r.scheduler_mode)},
        {"scan_depth", r.scan_depth},
        {"fdl_delay_ps", r.effective_fdl_delay().count()},
        {"stop_rule", to_string(r.stop_rule)},
    };
    const BudgetConfig& b = cfg.budget;
    json budget = {
        {"n_min", b.n_min},
        {"n_max", b.n_max},
        {"node_delay_us", to_us(b.spec.node_delay)},
        {"node_pdv_us", to_us(b.spec.node_pdv)},
        {"propagation_us_per_km", to_us(b.spec.propagation_per_km)},
        {"total_us", to_us(b.spec.total)},
        {"node_budget_us", optional_us(b.node_budget)},
    };
    json profiles = json::array();
    for (const auto& p : cfg.profiles) {
        profiles.push_back({
            {"name", p.name},
            {"plr_bound", p.plr_bound ? json(*p.plr_bound) : json(nullptr)},
            {"delay_bound_us", optional_us(p.delay_bound)},
            {"jitter_bound_us", optional_us(p.jitter_bound)},
        });
    }
    json doc = {{"run", run}, {"budget", budget}, {"profiles", profiles}};
    if (cfg.sweep)
        doc["sweep"] = {{"parameter", cfg.sweep->parameter}, {"values", cfg.sweep->values}};
    return doc;
}

ExperimentConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    // A results CSV carries its effective configuration on a comment line.
    constexpr std::string_view marker = "# config ";
    std::string body = text;
    if (text.rfind('#', 0) == 0) {
        std::istringstream lines(text);
        std::string line;
        body.clear();
        while (std::getline(lines, line))
            if (line.rfind(marker, 0) == 0) {
                body = line.substr(marker.size());
                break;
            }
        if (body.empty())
            throw ConfigError("config", "no '# config' line in " + path);
    }
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

} // namespace ihon
