// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ihon/time.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ihon {

/// End-to-end latency budget of a chain of N nodes between BBU and RRH:
///   total = N * (node_delay + node_pdv) + propagation_per_km * link_km
struct BudgetSpec
{
    std::uint32_t nodes = 2;
    Picoseconds node_delay{1'200'000};
    Picoseconds node_pdv{0};
    Picoseconds propagation_per_km{5'000'000};
    Picoseconds total{50'000'000};
};

struct LinkLength
{
    double km = 0.0;
    bool feasible = true;
};

/// Longest fiber that still fits the budget. When the node delays alone
/// exceed the budget the result is 0 km with `feasible == false`.
LinkLength max_link_length(const BudgetSpec& spec);

/// Inverse of max_link_length: budget consumed by `nodes` nodes plus `km`
/// of fiber.
Picoseconds total_latency(const BudgetSpec& spec, double km);

struct BudgetRow
{
    std::uint32_t nodes;
    Picoseconds node_delay_total;
    LinkLength link;
};

/// One row per node count in [n_min, n_max].
std::vector<BudgetRow> budget_table(BudgetSpec base, std::uint32_t n_min, std::uint32_t n_max);

/// Node-only budget check (propagation excluded), e.g. the 5 us fronthaul
/// allowance.
bool within_node_budget(const BudgetSpec& spec, Picoseconds node_budget);

/// Upper bounds a traffic class must stay under. An absent bound is
/// "undefined" and skipped.
struct ServiceClassProfile
{
    std::string name;
    std::optional<double> plr_bound;
    std::optional<Picoseconds> delay_bound;
    std::optional<Picoseconds> jitter_bound;
};

/// Measured values a profile is checked against. Absent values (no
/// deliveries) fail any defined bound.
struct ClassQos
{
    std::optional<Picoseconds> mean_latency;
    std::optional<Picoseconds> pdv;
    std::optional<double> plr;
};

struct ProfileVerdict
{
    std::optional<bool> plr_ok;
    std::optional<bool> delay_ok;
    std::optional<bool> jitter_ok;
    bool pass = true;
};

ProfileVerdict check_profile(const ClassQos& qos, const ServiceClassProfile& profile);

/// IEEE 802.1CM-style fronthaul: 50 us end to end, 5 us PDV. The PLR bound
/// is configurable inside [1e-9, 1e-6]; 1e-6 by default.
ServiceClassProfile fronthaul_profile(double plr_bound = 1e-6);

/// Y.1541 access-network service classes. Classes with the dual
/// "100 ms or 400 ms" delay bound appear twice, suffixed _100ms / _400ms.
std::vector<ServiceClassProfile> y1541_profiles();

/// fronthaul_profile() followed by y1541_profiles().
std::vector<ServiceClassProfile> builtin_profiles();

std::optional<ServiceClassProfile> find_builtin_profile(const std::string& name);

} // namespace ihon
