// SPDX-License-Identifier: Apache-2.0
#include "ihon/simulation.hpp"

#include "ihon/error.hpp"

#include <ostream>
#include <string>

namespace ihon {

namespace {

// Stream ids keep the two sources independent under one seed.
constexpr std::uint64_t kPriorityStream = 1;
constexpr std::uint64_t kBestEffortStream = 2;

void check_class(const TrafficSpec& spec, TrafficClass expected)
{
    if (spec.cls != expected)
        throw std::invalid_argument("source class " + std::string(to_string(spec.cls)) +
                                    " does not match scheduler mode (expected " +
                                    std::string(to_string(expected)) + ")");
}

} // namespace

Simulation::Simulation(const SimulationSetup& setup)
    : setup_(setup),
      priority_(setup.priority, setup.node.link_capacity_bps, setup.seed, kPriorityStream),
      best_effort_(setup.best_effort, setup.node.link_capacity_bps, setup.seed, kBestEffortStream)
{
    NodeContext ctx{events_, packets_, metrics_};
    if (setup_.node.mode == SchedulerMode::Fusion) {
        check_class(setup_.priority, TrafficClass::GST);
        check_class(setup_.best_effort, TrafficClass::SM);
        priority_kind_ = EventKind::GstArrival;
        best_effort_kind_ = EventKind::SmArrival;
        node_ = std::make_unique<FusionNode>(setup_.node, ctx);
    } else {
        check_class(setup_.priority, TrafficClass::HP);
        check_class(setup_.best_effort, TrafficClass::LP);
        priority_kind_ = EventKind::HpArrival;
        best_effort_kind_ = EventKind::LpArrival;
        node_ = std::make_unique<StrictPriorityNode>(setup_.node, ctx);
    }
}

void Simulation::schedule_next_arrival(TrafficSource& source, EventKind kind)
{
    const bool bounded_by_horizon = horizon_ && &source == &priority_;
    if (!source.enabled() || (!bounded_by_horizon && source.emitted() >= target_) ||
        (bounded_by_horizon && priority_done_))
        return;
    Packet p = source.next();
    if (bounded_by_horizon && p.arrival > *horizon_) {
        priority_done_ = true;
        return;
    }
    p.id = packets_.size();
    packets_.push_back(p);
    events_.schedule({p.arrival, kind, p.id});
}

void Simulation::run(std::uint64_t until_packets)
{
    target_ = until_packets;
    if (setup_.stop_rule == StopRule::CommonHorizon && best_effort_.enabled() && target_ > 0) {
        // A copy replays the same stream, so the horizon is exact.
        TrafficSource probe = best_effort_;
        Picoseconds last{0};
        for (std::uint64_t i = 0; i < target_; ++i)
            last = probe.next().arrival;
        horizon_ = last;
    }
    schedule_next_arrival(priority_, priority_kind_);
    schedule_next_arrival(best_effort_, best_effort_kind_);

    while (!events_.empty())
        dispatch(events_.pop());

    for (const TrafficSource* src : {&priority_, &best_effort_}) {
        const bool counted = !(horizon_ && src == &priority_);
        if (src->enabled() && counted && src->emitted() < target_) {
            throw InvariantViolation("event queue drained after " +
                                     std::to_string(src->emitted()) + " of " +
                                     std::to_string(target_) + " " +
                                     std::string(to_string(src->spec().cls)) + " packets");
        }
    }
    if (horizon_ && priority_.enabled() && !priority_done_)
        throw InvariantViolation("event queue drained before the priority source reached the horizon");
    if (node_->residual() != 0)
        throw InvariantViolation(std::to_string(node_->residual()) +
                                 " packets left in the node after drain");
    metrics_.elapsed = events_.now();
}

void Simulation::dispatch(const SimEvent& e)
{
    Packet& p = packets_[e.packet];
    if (log_ != nullptr) {
        *log_ << e.time.count() << ' ' << to_string(e.kind) << ' ' << e.packet << ' '
              << to_string(p.cls) << ' ' << p.length << '\n';
    }
    switch (e.kind) {
    case EventKind::GstArrival:
    case EventKind::HpArrival:
        metrics_.of(p.cls).record_generated(p.length, p.arrival);
        node_->on_arrival(e.time, e.packet);
        schedule_next_arrival(priority_, priority_kind_);
        break;
    case EventKind::SmArrival:
    case EventKind::LpArrival:
        metrics_.of(p.cls).record_generated(p.length, p.arrival);
        node_->on_arrival(e.time, e.packet);
        schedule_next_arrival(best_effort_, best_effort_kind_);
        break;
    case EventKind::FdlExit: node_->on_fdl_exit(e.time, e.packet); break;
    case EventKind::TxComplete: node_->on_tx_complete(e.time, e.packet); break;
    }
}

} // namespace ihon
