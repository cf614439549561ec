// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ihon/sim_kernel.hpp"
#include "ihon/time.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

namespace ihon {

enum class TrafficClass : std::uint8_t
{
    GST,
    SM,
    HP,
    LP,
};

inline constexpr std::array<TrafficClass, 4> kAllClasses{TrafficClass::GST, TrafficClass::SM,
                                                         TrafficClass::HP, TrafficClass::LP};

std::string_view to_string(TrafficClass c) noexcept;
std::optional<TrafficClass> class_from_string(std::string_view name) noexcept;

struct Packet
{
    PacketId id = 0;
    TrafficClass cls = TrafficClass::GST;
    std::uint32_t length = 0; // bytes
    Picoseconds arrival{};
    std::optional<Picoseconds> fdl_exit;
    std::optional<Picoseconds> tx_start;
    std::uint32_t source_interface = 0;
    bool dropped = false;
};

struct Deterministic
{
    std::uint32_t bytes;
};

struct UniformInt
{
    std::uint32_t lo;
    std::uint32_t hi;
};

using LengthModel = std::variant<Deterministic, UniformInt>;

double mean_length(const LengthModel& model) noexcept;
std::uint32_t max_length(const LengthModel& model) noexcept;
std::uint32_t draw_length(RngStream& stream, const LengthModel& model);

/// One arrival process. `load` is the offered fraction of the output link
/// capacity (the 10GE aggregate for SM). `n_interfaces` only tags packets
/// with a round-robin source interface.
struct TrafficSpec
{
    TrafficClass cls = TrafficClass::GST;
    double load = 0.0;
    LengthModel length = Deterministic{1200};
    std::uint32_t n_interfaces = 1;
};

struct Arrival
{
    Picoseconds gap;
    std::uint32_t length;
};

/// Shifted exponential: one service time plus an exponential idle period of
/// mean s * (1/L - 1), so consecutive frames on the input wavelength never
/// overlap and the long-run load is L. Returns kNever for L == 0.
Picoseconds next_gst_interarrival(RngStream& stream, const TrafficSpec& spec,
                                  std::int64_t capacity_bps);

/// Exponential inter-arrival with mean E[len] * 8 / (C * L); the length is
/// drawn independently from the spec's length model.
Arrival next_sm_arrival(RngStream& stream, const TrafficSpec& spec, std::int64_t capacity_bps);

/// HP arrivals use the GST construction (serialized), LP arrivals the plain
/// exponential one. Both have deterministic lengths.
Arrival next_hp_lp_arrival(RngStream& stream, const TrafficSpec& spec, std::int64_t capacity_bps);

/// Stateful per-class source: owns its random stream and produces the
/// absolute arrival time and length of each successive packet.
class TrafficSource
{
public:
    TrafficSource(TrafficSpec spec, std::int64_t capacity_bps, std::uint64_t seed,
                  std::uint64_t stream_id);

    bool enabled() const noexcept { return spec_.load > 0.0; }
    const TrafficSpec& spec() const noexcept { return spec_; }
    std::uint64_t emitted() const noexcept { return emitted_; }

    /// Next packet (id left for the caller to assign).
    Packet next();

private:
    TrafficSpec spec_;
    std::int64_t capacity_bps_;
    RngStream stream_;
    Picoseconds clock_{0};
    std::uint64_t emitted_ = 0;
};

} // namespace ihon
