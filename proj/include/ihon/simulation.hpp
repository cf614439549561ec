// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ihon/fusion_node.hpp"
#include "ihon/metrics.hpp"
#include "ihon/sim_kernel.hpp"
#include "ihon/traffic.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace ihon {

/// When generation stops.
enum class StopRule
{
    /// The best-effort source emits the packet count; the priority source
    /// keeps running until the last best-effort arrival, so the priority load
    /// stays applied for the whole measurement window. If the best-effort
    /// source is idle the priority source emits the count instead.
    CommonHorizon,
    /// Every enabled source emits the packet count independently.
    PerClass,
};

/// Inputs of one sub-simulation. In Fusion mode `priority` is the GST
/// source and `best_effort` the SM source; in StrictPriority mode they are
/// the HP and LP sources.
struct SimulationSetup
{
    NodeParams node;
    TrafficSpec priority;
    TrafficSpec best_effort;
    std::uint64_t seed = 907;
    StopRule stop_rule = StopRule::CommonHorizon;
};

/// One seeded sub-simulation of a single node. Not copyable or movable:
/// the node holds references into it.
class Simulation
{
public:
    explicit Simulation(const SimulationSetup& setup);
    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    /// Generates packets according to the stop rule, then drains the node. Throws InvariantViolation if the event queue empties early or
    /// packets remain in the node after the drain.
    void run(std::uint64_t until_packets);

    /// One line per dispatched event: `<time_ps> <kind> <packet_id> <class> <length>`.
    void set_event_log(std::ostream* log) noexcept { log_ = log; }

    const RunMetrics& metrics() const noexcept { return metrics_; }
    const std::vector<Packet>& packets() const noexcept { return packets_; }
    const SimulationSetup& setup() const noexcept { return setup_; }
    std::uint64_t dispatched_events() const noexcept { return events_.dispatched(); }

private:
    void schedule_next_arrival(TrafficSource& source, EventKind kind);
    void dispatch(const SimEvent& e);

    SimulationSetup setup_;
    EventQueue events_;
    std::vector<Packet> packets_;
    RunMetrics metrics_;
    std::unique_ptr<OutputNode> node_;
    TrafficSource priority_;
    TrafficSource best_effort_;
    EventKind priority_kind_;
    EventKind best_effort_kind_;
    std::uint64_t target_ = 0;
    std::optional<Picoseconds> horizon_;
    bool priority_done_ = false;
    std::ostream* log_ = nullptr;
};

} // namespace ihon
