// SPDX-License-Identifier: Apache-2.0
#include "ihon/metrics.hpp"

#include "ihon/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ihon {

void ClassMetrics::record_generated(std::uint32_t bytes, Picoseconds arrival)
{
    ++generated;
    offered_bytes += bytes;
    last_arrival = std::max(last_arrival, arrival);
}

void ClassMetrics::record_delivery(Picoseconds delay, std::uint32_t bytes)
{
    if (delay < Picoseconds::zero())
        throw InvariantViolation("negative delay recorded: " + std::to_string(delay.count()) +
                                 " ps");
    ++delivered;
    delivered_bytes += bytes;
    sum_delay += delay;
    min_delay = std::min(min_delay, delay);
    max_delay = std::max(max_delay, delay);
}

std::optional<Picoseconds> mean_delay(const ClassMetrics& m)
{
    if (m.delivered == 0)
        return std::nullopt;
    return Picoseconds{m.sum_delay.count() / static_cast<std::int64_t>(m.delivered)};
}

std::optional<Picoseconds> pdv(const ClassMetrics& m)
{
    if (m.delivered == 0)
        return std::nullopt;
    return m.max_delay - m.min_delay;
}

std::optional<Picoseconds> pdv_mean(const ClassMetrics& m)
{
    auto mean = mean_delay(m);
    if (!mean)
        return std::nullopt;
    return *mean - m.min_delay;
}

std::optional<double> plr(const ClassMetrics& m)
{
    if (m.generated == 0)
        return std::nullopt;
    return static_cast<double>(m.dropped) / static_cast<double>(m.generated);
}

std::optional<double> offered_load(const ClassMetrics& m, std::int64_t capacity_bps)
{
    if (m.generated == 0 || m.last_arrival <= Picoseconds::zero())
        return std::nullopt;
    const double horizon_s = static_cast<double>(m.last_arrival.count()) * 1e-12;
    return static_cast<double>(m.offered_bytes) * 8.0 /
           (static_cast<double>(capacity_bps) * horizon_s);
}

std::optional<double> utilization(const RunMetrics& m)
{
    if (m.elapsed <= Picoseconds::zero())
        return std::nullopt;
    return static_cast<double>(m.link_busy.count()) / static_cast<double>(m.elapsed.count());
}

MetricStats stats_of(std::span<const double> values)
{
    MetricStats s;
    s.samples = values.size();
    if (values.empty())
        return s;
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.samples);
    if (s.samples > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(s.samples - 1));
    }
    return s;
}

namespace {

template <typename F>
MetricStats collect(std::span<const ClassMetrics> batch, F&& metric)
{
    std::vector<double> values;
    values.reserve(batch.size());
    for (const auto& m : batch)
        if (auto v = metric(m))
            values.push_back(*v);
    return stats_of(values);
}

std::optional<double> as_double(std::optional<Picoseconds> t)
{
    if (!t)
        return std::nullopt;
    return static_cast<double>(t->count());
}

} // namespace

BatchSummary aggregate(std::span<const ClassMetrics> batch)
{
    BatchSummary out;
    out.per_seed.assign(batch.begin(), batch.end());
    for (const auto& m : batch) {
        out.generated += m.generated;
        out.delivered += m.delivered;
        out.dropped += m.dropped;
    }
    out.latency_mean = collect(batch, [](const auto& m) { return as_double(mean_delay(m)); });
    out.latency_min = collect(batch, [](const auto& m) -> std::optional<double> {
        if (m.delivered == 0)
            return std::nullopt;
        return static_cast<double>(m.min_delay.count());
    });
    out.latency_max = collect(batch, [](const auto& m) -> std::optional<double> {
        if (m.delivered == 0)
            return std::nullopt;
        return static_cast<double>(m.max_delay.count());
    });
    out.pdv = collect(batch, [](const auto& m) { return as_double(pdv(m)); });
    out.pdv_mean = collect(batch, [](const auto& m) { return as_double(pdv_mean(m)); });
    out.plr = collect(batch, [](const auto& m) { return plr(m); });
    return out;
}

} // namespace ihon
