// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ihon/metrics.hpp"
#include "ihon/sim_kernel.hpp"
#include "ihon/time.hpp"
#include "ihon/traffic.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

namespace ihon {

enum class SchedulerMode : std::uint8_t
{
    Fusion,
    StrictPriority,
};

struct NodeParams
{
    std::int64_t link_capacity_bps = 10'000'000'000;
    Picoseconds fdl_delay{1'200'000};
    std::uint64_t buffer_capacity = 16ull * 1024 * 1024;
    SchedulerMode mode = SchedulerMode::Fusion;
    /// How many SM packets from the head of the queue the gap test may look
    /// at (first fit). 1 keeps strict FIFO.
    std::uint32_t scan_depth = 1;
};

/// Output wavelength: one transmission at a time, never preempted.
struct LinkState
{
    Picoseconds busy_until{0};
    std::optional<PacketId> current;

    bool busy(Picoseconds t) const noexcept { return busy_until > t; }
};

/// What a node needs from the simulation that owns it.
struct NodeContext
{
    EventQueue& events;
    std::vector<Packet>& packets;
    RunMetrics& metrics;
};

class OutputNode
{
public:
    virtual ~OutputNode() = default;

    virtual void on_arrival(Picoseconds t, PacketId id) = 0;
    virtual void on_fdl_exit(Picoseconds t, PacketId id) = 0;
    virtual void on_tx_complete(Picoseconds t, PacketId id) = 0;

    /// Packets still queued or in flight inside the node.
    virtual std::size_t residual() const noexcept = 0;
    const LinkState& link() const noexcept { return link_; }

protected:
    OutputNode(const NodeParams& params, NodeContext ctx) : params_(params), ctx_(ctx) {}

    /// Starts transmitting `id` at `t`, records its delay and schedules the
    /// completion. Throws InvariantViolation if the link is busy.
    void transmit(Picoseconds t, PacketId id);

    Packet& packet(PacketId id) { return ctx_.packets[id]; }

    NodeParams params_;
    NodeContext ctx_;
    LinkState link_;
};

/// IHON/Fusion data plane: GST passes a fixed delay line and leaves it with
/// absolute priority; SM waits in a drop-tail FIFO and is inserted only
/// into gaps that end before the next GST leaves the delay line.
class FusionNode final : public OutputNode
{
public:
    FusionNode(const NodeParams& params, NodeContext ctx);

    void on_arrival(Picoseconds t, PacketId id) override;
    void on_fdl_exit(Picoseconds t, PacketId id) override;
    void on_tx_complete(Picoseconds t, PacketId id) override;

    /// Inserts an SM packet at `t` if the link is idle and it fits before
    /// the earliest FDL exit. An empty delay line is an unbounded gap: any
    /// GST arriving after `t` exits after t + fdl_delay, and fdl_delay
    /// covers the largest SM service time.
    bool try_insert_sm(Picoseconds t);

    std::size_t residual() const noexcept override;
    std::uint64_t buffer_occupancy() const noexcept { return occupancy_; }
    std::size_t fdl_size() const noexcept { return fdl_.size(); }

private:
    void on_gst_arrival(Picoseconds t, PacketId id);
    void on_sm_arrival(Picoseconds t, PacketId id);

    struct FdlEntry
    {
        PacketId id;
        Picoseconds exit;
    };
    std::deque<FdlEntry> fdl_;
    std::deque<PacketId> buffer_;
    std::uint64_t occupancy_ = 0;
};

/// Ethernet-switch comparison model: non-preemptive strict priority, HP
/// before LP, no delay line, one shared drop-tail buffer.
class StrictPriorityNode final : public OutputNode
{
public:
    StrictPriorityNode(const NodeParams& params, NodeContext ctx);

    void on_arrival(Picoseconds t, PacketId id) override;
    void on_fdl_exit(Picoseconds t, PacketId id) override;
    void on_tx_complete(Picoseconds t, PacketId id) override;

    /// Starts the head HP packet, else the head LP packet, if the link is idle.
    void strict_priority_step(Picoseconds t);

    std::size_t residual() const noexcept override;

private:
    std::deque<PacketId> hp_;
    std::deque<PacketId> lp_;
    std::uint64_t occupancy_ = 0;
};

} // namespace ihon
