// SPDX-License-Identifier: Apache-2.0
#include "ihon/budget.hpp"

#include <cmath>
#include <stdexcept>

namespace ihon {

namespace {

void validate(const BudgetSpec& spec)
{
    if (spec.node_delay < Picoseconds::zero() || spec.node_pdv < Picoseconds::zero() ||
        spec.total < Picoseconds::zero())
        throw std::invalid_argument("budget fields must be non-negative");
    if (spec.propagation_per_km <= Picoseconds::zero())
        throw std::invalid_argument("propagation delay per km must be positive");
}

Picoseconds node_total(const BudgetSpec& spec)
{
    return static_cast<std::int64_t>(spec.nodes) * (spec.node_delay + spec.node_pdv);
}

} // namespace

LinkLength max_link_length(const BudgetSpec& spec)
{
    validate(spec);
    const Picoseconds remainder = spec.total - node_total(spec);
    if (remainder < Picoseconds::zero())
        return {0.0, false};
    // Both operands are exact integers, so the quotient is correctly rounded.
    return {static_cast<double>(remainder.count()) /
                static_cast<double>(spec.propagation_per_km.count()),
            true};
}

Picoseconds total_latency(const BudgetSpec& spec, double km)
{
    validate(spec);
    return node_total(spec) +
           round_ps(static_cast<double>(spec.propagation_per_km.count()) * km);
}

std::vector<BudgetRow> budget_table(BudgetSpec base, std::uint32_t n_min, std::uint32_t n_max)
{
    if (n_min > n_max)
        throw std::invalid_argument("budget_table: n_min > n_max");
    std::vector<BudgetRow> rows;
    rows.reserve(n_max - n_min + 1);
    for (std::uint32_t n = n_min; n <= n_max; ++n) {
        base.nodes = n;
        rows.push_back({n, node_total(base), max_link_length(base)});
    }
    return rows;
}

bool within_node_budget(const BudgetSpec& spec, Picoseconds node_budget)
{
    return node_total(spec) <= node_budget;
}

ProfileVerdict check_profile(const ClassQos& qos, const ServiceClassProfile& profile)
{
    ProfileVerdict v;
    if (profile.plr_bound)
        v.plr_ok = qos.plr.has_value() && *qos.plr <= *profile.plr_bound;
    if (profile.delay_bound)
        v.delay_ok = qos.mean_latency.has_value() && *qos.mean_latency <= *profile.delay_bound;
    if (profile.jitter_bound)
        v.jitter_ok = qos.pdv.has_value() && *qos.pdv <= *profile.jitter_bound;
    v.pass = v.plr_ok.value_or(true) && v.delay_ok.value_or(true) && v.jitter_ok.value_or(true);
    return v;
}

ServiceClassProfile fronthaul_profile(double plr_bound)
{
    if (!(plr_bound >= 1e-9 && plr_bound <= 1e-6))
        throw std::invalid_argument("fronthaul PLR bound must lie in [1e-9, 1e-6]");
    return {"fronthaul", plr_bound, from_us(50.0), from_us(5.0)};
}

std::vector<ServiceClassProfile> y1541_profiles()
{
    const auto ms = [](double v) { return from_us(v * 1000.0); };
    std::vector<ServiceClassProfile> out;
    auto dual = [&](const std::string& name, std::optional<double> plr,
                    std::optional<Picoseconds> jitter) {
        out.push_back({name + "_100ms", plr, ms(100), jitter});
        out.push_back({name + "_400ms", plr, ms(400), jitter});
    };
    dual("video_streaming", 1e-5, ms(50));
    dual("video_conversational", 1e-3, ms(50));
    dual("music_streaming", 1e-5, ms(50));
    dual("voice_conversational", 1e-3, ms(50));
    dual("interactive_messaging", 1e-3, std::nullopt);
    out.push_back({"control_traffic", 1e-3, ms(100), std::nullopt});
    // "1e-3 or undefined": the defined bound is kept.
    out.push_back({"general_data_transfer", 1e-3, std::nullopt, std::nullopt});
    return out;
}

std::vector<ServiceClassProfile> builtin_profiles()
{
    std::vector<ServiceClassProfile> out{fronthaul_profile()};
    for (auto& p : y1541_profiles())
        out.push_back(std::move(p));
    return out;
}

std::optional<ServiceClassProfile> find_builtin_profile(const std::string& name)
{
    for (auto& p : builtin_profiles())
        if (p.name == name)
            return p;
    return std::nullopt;
}

} // namespace ihon
