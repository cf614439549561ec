// SPDX-License-Identifier: Apache-2.0
#include "ihon/fusion_node.hpp"

#include "ihon/error.hpp"

#include <algorithm>
#include <string>

namespace ihon {

void OutputNode::transmit(Picoseconds t, PacketId id)
{
    if (link_.busy(t)) {
        throw InvariantViolation("link busy at t=" + std::to_string(t.count()) +
                                 " ps (until " + std::to_string(link_.busy_until.count()) +
                                 " ps) when starting packet " + std::to_string(id));
    }
    Packet& p = packet(id);
    const Picoseconds service = service_time(p.length, params_.link_capacity_bps);
    p.tx_start = t;
    link_.busy_until = t + service;
    link_.current = id;
    ctx_.metrics.link_busy += service;
    ctx_.metrics.of(p.cls).record_delivery(t - p.arrival, p.length);
    ctx_.events.schedule({link_.busy_until, EventKind::TxComplete, id});
}

// ---------------------------------------------------------------- Fusion

FusionNode::FusionNode(const NodeParams& params, NodeContext ctx) : OutputNode(params, ctx) {}

void FusionNode::on_arrival(Picoseconds t, PacketId id)
{
    switch (packet(id).cls) {
    case TrafficClass::GST: on_gst_arrival(t, id); break;
    case TrafficClass::SM: on_sm_arrival(t, id); break;
    default: throw InvariantViolation("fusion node received an HP/LP packet");
    }
}

void FusionNode::on_gst_arrival(Picoseconds t, PacketId id)
{
    const Picoseconds exit = t + params_.fdl_delay;
    if (!fdl_.empty() && fdl_.back().exit > exit)
        throw InvariantViolation("delay line entries out of order");
    fdl_.push_back({id, exit});
    ctx_.events.schedule({exit, EventKind::FdlExit, id});
}

void FusionNode::on_fdl_exit(Picoseconds t, PacketId id)
{
    if (fdl_.empty() || fdl_.front().id != id || fdl_.front().exit != t)
        throw InvariantViolation("FDL exit for packet " + std::to_string(id) +
                                 " does not match the head of the delay line");
    fdl_.pop_front();
    packet(id).fdl_exit = t;
    transmit(t, id);
}

void FusionNode::on_tx_complete(Picoseconds t, PacketId id)
{
    if (link_.current == id && !link_.busy(t))
        link_.current.reset();
    try_insert_sm(t);
}

void FusionNode::on_sm_arrival(Picoseconds t, PacketId id)
{
    Packet& p = packet(id);
    if (occupancy_ + p.length > params_.buffer_capacity) {
        p.dropped = true;
        ctx_.metrics.of(TrafficClass::SM).record_drop();
        return;
    }
    buffer_.push_back(id);
    occupancy_ += p.length;
    ctx_.metrics.max_buffer_occupancy = std::max(ctx_.metrics.max_buffer_occupancy, occupancy_);
    try_insert_sm(t);
}

bool FusionNode::try_insert_sm(Picoseconds t)
{
    if (link_.busy(t) || buffer_.empty())
        return false;

    const Picoseconds gap = fdl_.empty() ? kNever : fdl_.front().exit - t;
    const std::size_t depth = std::min<std::size_t>(params_.scan_depth, buffer_.size());
    for (std::size_t i = 0; i < depth; ++i) {
        const PacketId id = buffer_[i];
        const Packet& p = packet(id);
        const Picoseconds service = service_time(p.length, params_.link_capacity_bps);
        if (service > gap)
            continue;
        buffer_.erase(buffer_.begin() + static_cast<std::ptrdiff_t>(i));
        occupancy_ -= p.length;
        if (gap != kNever) {
            const Picoseconds slack = gap - service;
            auto& min_slack = ctx_.metrics.min_insertion_slack;
            min_slack = min_slack ? std::min(*min_slack, slack) : slack;
        }
        transmit(t, id);
        return true;
    }
    return false;
}

std::size_t FusionNode::residual() const noexcept
{
    return fdl_.size() + buffer_.size() + (link_.current ? 1 : 0);
}

// ------------------------------------------------------- Strict priority

StrictPriorityNode::StrictPriorityNode(const NodeParams& params, NodeContext ctx)
    : OutputNode(params, ctx)
{
}

void StrictPriorityNode::on_arrival(Picoseconds t, PacketId id)
{
    Packet& p = packet(id);
    if (p.cls != TrafficClass::HP && p.cls != TrafficClass::LP)
        throw InvariantViolation("strict-priority node received a GST/SM packet");
    if (occupancy_ + p.length > params_.buffer_capacity) {
        p.dropped = true;
        ctx_.metrics.of(p.cls).record_drop();
        return;
    }
    (p.cls == TrafficClass::HP ? hp_ : lp_).push_back(id);
    occupancy_ += p.length;
    ctx_.metrics.max_buffer_occupancy = std::max(ctx_.metrics.max_buffer_occupancy, occupancy_);
    strict_priority_step(t);
}

void StrictPriorityNode::on_fdl_exit(Picoseconds, PacketId)
{
    throw InvariantViolation("strict-priority node has no delay line");
}

void StrictPriorityNode::on_tx_complete(Picoseconds t, PacketId id)
{
    if (link_.current == id && !link_.busy(t))
        link_.current.reset();
    strict_priority_step(t);
}

void StrictPriorityNode::strict_priority_step(Picoseconds t)
{
    if (link_.busy(t))
        return;
    auto& queue = !hp_.empty() ? hp_ : lp_;
    if (queue.empty())
        return;
    const PacketId id = queue.front();
    queue.pop_front();
    occupancy_ -= packet(id).length;
    transmit(t, id);
}

std::size_t StrictPriorityNode::residual() const noexcept
{
    return hp_.size() + lp_.size() + (link_.current ? 1 : 0);
}

} // namespace ihon
