// SPDX-License-Identifier: Apache-2.0
#include "ihon/sim_kernel.hpp"

#include "ihon/error.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ihon {

std::string_view to_string(EventKind kind) noexcept
{
    switch (kind) {
    case EventKind::GstArrival: return "gst_arrival";
    case EventKind::SmArrival: return "sm_arrival";
    case EventKind::HpArrival: return "hp_arrival";
    case EventKind::LpArrival: return "lp_arrival";
    case EventKind::FdlExit: return "fdl_exit";
    case EventKind::TxComplete: return "tx_complete";
    }
    return "unknown";
}

bool EventQueue::Later::operator()(const Entry& a, const Entry& b) const noexcept
{
    if (a.event.time != b.event.time)
        return a.event.time > b.event.time;
    const int ra = tie_rank(a.event.kind);
    const int rb = tie_rank(b.event.kind);
    if (ra != rb)
        return ra > rb;
    return a.seq > b.seq;
}

void EventQueue::schedule(const SimEvent& event)
{
    if (event.time < now_) {
        throw InvariantViolation("event scheduled in the past: t=" +
                                 std::to_string(event.time.count()) + " ps < clock=" +
                                 std::to_string(now_.count()) + " ps");
    }
    heap_.push(Entry{event, next_seq_++});
}

SimEvent EventQueue::pop()
{
    if (heap_.empty())
        throw InvariantViolation("pop from empty event queue");
    SimEvent e = heap_.top().event;
    heap_.pop();
    now_ = e.time;
    ++dispatched_;
    return e;
}

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    return std::mt19937_64(seq);
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : engine_(make_engine(seed, stream_id)), seed_(seed), stream_id_(stream_id)
{
}

double RngStream::next_unit()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double exp_sample(RngStream& stream, double mean)
{
    if (!(mean > 0.0) || !std::isfinite(mean))
        throw std::invalid_argument("exp_sample: mean must be positive and finite");
    return -mean * std::log1p(-stream.next_unit());
}

std::uint32_t uniform_int_sample(RngStream& stream, std::uint32_t lo, std::uint32_t hi)
{
    if (lo > hi)
        throw std::invalid_argument("uniform_int_sample: lo > hi");
    const std::uint64_t range = std::uint64_t{hi} - lo + 1;
    if (range == 1)
        return lo;
    // Rejection sampling: discard the top partial block so every residue is
    // equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = 0;
    do {
        x = stream.next_u64();
    } while (x >= limit);
    return static_cast<std::uint32_t>(lo + x % range);
}

} // namespace ihon
