// SPDX-License-Identifier: Apache-2.0
#include "ihon/traffic.hpp"

#include <stdexcept>

namespace ihon {

std::string_view to_string(TrafficClass c) noexcept
{
    switch (c) {
    case TrafficClass::GST: return "gst";
    case TrafficClass::SM: return "sm";
    case TrafficClass::HP: return "hp";
    case TrafficClass::LP: return "lp";
    }
    return "unknown";
}

std::optional<TrafficClass> class_from_string(std::string_view name) noexcept
{
    for (TrafficClass c : kAllClasses)
        if (to_string(c) == name)
            return c;
    return std::nullopt;
}

double mean_length(const LengthModel& model) noexcept
{
    return std::visit(
        [](const auto& m) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, Deterministic>)
                return m.bytes;
            else
                return (static_cast<double>(m.lo) + m.hi) / 2.0;
        },
        model);
}

std::uint32_t max_length(const LengthModel& model) noexcept
{
    if (const auto* d = std::get_if<Deterministic>(&model))
        return d->bytes;
    return std::get<UniformInt>(model).hi;
}

std::uint32_t draw_length(RngStream& stream, const LengthModel& model)
{
    if (const auto* d = std::get_if<Deterministic>(&model))
        return d->bytes;
    const auto& u = std::get<UniformInt>(model);
    return uniform_int_sample(stream, u.lo, u.hi);
}

namespace {

void check_load(const TrafficSpec& spec)
{
    if (!(spec.load >= 0.0 && spec.load < 1.0))
        throw std::invalid_argument("traffic load must lie in [0, 1)");
}

Picoseconds shifted_exponential(RngStream& stream, std::uint32_t bytes, double load,
                                std::int64_t capacity_bps)
{
    const Picoseconds s = service_time(bytes, capacity_bps);
    const double idle_mean = static_cast<double>(s.count()) * (1.0 / load - 1.0);
    if (!(idle_mean > 0.0))
        return s;
    return s + round_ps(exp_sample(stream, idle_mean));
}

Picoseconds plain_exponential(RngStream& stream, double mean_bytes, double load,
                              std::int64_t capacity_bps)
{
    const double mean_ps = mean_bytes * 8.0 * 1e12 / (static_cast<double>(capacity_bps) * load);
    return round_ps(exp_sample(stream, mean_ps));
}

} // namespace

Picoseconds next_gst_interarrival(RngStream& stream, const TrafficSpec& spec,
                                  std::int64_t capacity_bps)
{
    if (spec.cls != TrafficClass::GST)
        throw std::invalid_argument("next_gst_interarrival: spec is not GST");
    check_load(spec);
    if (spec.load == 0.0)
        return kNever;
    const auto* d = std::get_if<Deterministic>(&spec.length);
    if (d == nullptr)
        throw std::invalid_argument("GST packets have a deterministic length");
    return shifted_exponential(stream, d->bytes, spec.load, capacity_bps);
}

Arrival next_sm_arrival(RngStream& stream, const TrafficSpec& spec, std::int64_t capacity_bps)
{
    if (spec.cls != TrafficClass::SM)
        throw std::invalid_argument("next_sm_arrival: spec is not SM");
    check_load(spec);
    if (spec.load == 0.0)
        return {kNever, 0};
    const Picoseconds gap = plain_exponential(stream, mean_length(spec.length), spec.load,
                                              capacity_bps);
    return {gap, draw_length(stream, spec.length)};
}

Arrival next_hp_lp_arrival(RngStream& stream, const TrafficSpec& spec, std::int64_t capacity_bps)
{
    if (spec.cls != TrafficClass::HP && spec.cls != TrafficClass::LP)
        throw std::invalid_argument("next_hp_lp_arrival: spec is not HP/LP");
    check_load(spec);
    const auto* d = std::get_if<Deterministic>(&spec.length);
    if (d == nullptr)
        throw std::invalid_argument("HP/LP packets have a deterministic length");
    if (spec.load == 0.0)
        return {kNever, d->bytes};
    if (spec.cls == TrafficClass::HP)
        return {shifted_exponential(stream, d->bytes, spec.load, capacity_bps), d->bytes};
    return {plain_exponential(stream, d->bytes, spec.load, capacity_bps), d->bytes};
}

TrafficSource::TrafficSource(TrafficSpec spec, std::int64_t capacity_bps, std::uint64_t seed,
                             std::uint64_t stream_id)
    : spec_(spec), capacity_bps_(capacity_bps), stream_(seed, stream_id)
{
    check_load(spec_);
    if (spec_.n_interfaces == 0)
        throw std::invalid_argument("n_interfaces must be >= 1");
}

Packet TrafficSource::next()
{
    Arrival a{};
    switch (spec_.cls) {
    case TrafficClass::GST:
        a = {next_gst_interarrival(stream_, spec_, capacity_bps_),
             std::get<Deterministic>(spec_.length).bytes};
        break;
    case TrafficClass::SM: a = next_sm_arrival(stream_, spec_, capacity_bps_); break;
    case TrafficClass::HP:
    case TrafficClass::LP: a = next_hp_lp_arrival(stream_, spec_, capacity_bps_); break;
    }
    if (a.gap == kNever)
        throw std::logic_error("TrafficSource::next on a disabled source");
    clock_ += a.gap;
    Packet p;
    p.cls = spec_.cls;
    p.length = a.length;
    p.arrival = clock_;
    p.source_interface = static_cast<std::uint32_t>(emitted_ % spec_.n_interfaces);
    ++emitted_;
    return p;
}

} // namespace ihon
