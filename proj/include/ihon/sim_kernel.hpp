// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ihon/time.hpp"

#include <cstdint>
#include <queue>
#include <random>
#include <string_view>
#include <vector>

namespace ihon {

using PacketId = std::uint64_t;

enum class EventKind : std::uint8_t
{
    GstArrival,
    SmArrival,
    HpArrival,
    LpArrival,
    FdlExit,
    TxComplete,
};

std::string_view to_string(EventKind kind) noexcept;

/// Rank used to order events that share a timestamp. A GST leaving the
/// delay line must claim the link before any SM insertion decision taken
/// at the same instant, so: FdlExit < TxComplete < low-class arrival <
/// priority-class arrival.
constexpr int tie_rank(EventKind kind) noexcept
{
    switch (kind) {
    case EventKind::FdlExit: return 0;
    case EventKind::TxComplete: return 1;
    case EventKind::SmArrival:
    case EventKind::LpArrival: return 2;
    case EventKind::GstArrival:
    case EventKind::HpArrival: return 3;
    }
    return 4;
}

struct SimEvent
{
    Picoseconds time{};
    EventKind kind{};
    PacketId packet = 0;
};

/// Time-ordered event queue that also owns the virtual clock.
///
/// Dispatch order is (time, tie_rank(kind), insertion sequence), a total
/// order, so a run is fully determined by the sequence of schedule calls.
class EventQueue
{
public:
    /// Throws InvariantViolation if `event.time` is earlier than now().
    void schedule(const SimEvent& event);

    /// Removes the next event and advances the clock to its time.
    SimEvent pop();

    bool empty() const noexcept { return heap_.empty(); }
    std::size_t size() const noexcept { return heap_.size(); }
    Picoseconds now() const noexcept { return now_; }
    std::uint64_t dispatched() const noexcept { return dispatched_; }

private:
    struct Entry
    {
        SimEvent event;
        std::uint64_t seq;
    };
    struct Later
    {
        bool operator()(const Entry& a, const Entry& b) const noexcept;
    };

    std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
    Picoseconds now_{0};
    std::uint64_t next_seq_ = 0;
    std::uint64_t dispatched_ = 0;
};

/// Seeded random stream. Backed by std::mt19937_64, whose output sequence
/// is fixed by the standard; the distributions below are implemented here
/// rather than through <random> distributions, which are not portable
/// bit-for-bit across standard libraries.
class RngStream
{
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit();

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
};

/// Exponential variate with the given mean (any time unit). Throws
/// std::invalid_argument when mean <= 0.
double exp_sample(RngStream& stream, double mean);

/// Equiprobable integer in [lo, hi]. Throws std::invalid_argument when lo > hi.
std::uint32_t uniform_int_sample(RngStream& stream, std::uint32_t lo, std::uint32_t hi);

} // namespace ihon
