// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ihon/time.hpp"
#include "ihon/traffic.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ihon {

/// Per-class counters and delay statistics of one sub-simulation.
///
/// Delay is arrival to transmission start: for GST that is arrival to FDL
/// exit, for SM/HP/LP the waiting time in the node.
struct ClassMetrics
{
    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped = 0;
    Picoseconds sum_delay{0};
    Picoseconds min_delay = Picoseconds::max();
    Picoseconds max_delay = Picoseconds::min();

    std::uint64_t offered_bytes = 0;
    std::uint64_t delivered_bytes = 0;
    Picoseconds last_arrival{0};

    void record_generated(std::uint32_t bytes, Picoseconds arrival);
    /// Throws InvariantViolation on a negative delay.
    void record_delivery(Picoseconds delay, std::uint32_t bytes = 0);
    void record_drop() noexcept { ++dropped; }

    bool operator==(const ClassMetrics&) const = default;
};

std::optional<Picoseconds> mean_delay(const ClassMetrics& m);

/// Peak-to-peak delay variation against the minimum-delay reference.
std::optional<Picoseconds> pdv(const ClassMetrics& m);

/// Mean of (delay - min delay).
std::optional<Picoseconds> pdv_mean(const ClassMetrics& m);

/// dropped / generated.
std::optional<double> plr(const ClassMetrics& m);

/// Offered bits / (capacity * time of the last arrival).
std::optional<double> offered_load(const ClassMetrics& m, std::int64_t capacity_bps);

/// Everything one sub-simulation measures.
struct RunMetrics
{
    std::array<ClassMetrics, kAllClasses.size()> classes{};
    Picoseconds link_busy{0};
    Picoseconds elapsed{0};
    std::uint64_t max_buffer_occupancy = 0;
    /// Smallest (next GST exit - SM transmission end) over all insertions
    /// made while a GST packet was in the delay line.
    std::optional<Picoseconds> min_insertion_slack;

    ClassMetrics& of(TrafficClass c) { return classes[static_cast<std::size_t>(c)]; }
    const ClassMetrics& of(TrafficClass c) const { return classes[static_cast<std::size_t>(c)]; }
};

/// Busy time over elapsed time on the output link.
std::optional<double> utilization(const RunMetrics& m);

struct MetricStats
{
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation, 0 for a single sample
    std::size_t samples = 0;

    bool has_data() const noexcept { return samples > 0; }
};

MetricStats stats_of(std::span<const double> values);

/// Cross-seed view of one traffic class. Times are in picoseconds.
struct BatchSummary
{
    std::vector<ClassMetrics> per_seed;
    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped = 0;
    MetricStats latency_mean;
    MetricStats latency_min;
    MetricStats latency_max;
    MetricStats pdv;
    MetricStats pdv_mean;
    MetricStats plr;
};

BatchSummary aggregate(std::span<const ClassMetrics> batch);

} // namespace ihon
