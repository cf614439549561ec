// SPDX-License-Identifier: Apache-2.0
#include "event_log_oracle.hpp"
#include "ihon/error.hpp"
#include "ihon/fusion_node.hpp"
#include "ihon/simulation.hpp"
#include "node_harness.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace ihon;
using testing::NodeHarness;
using testing::Scripted;

namespace {

constexpr auto GST = TrafficClass::GST;
constexpr auto SM = TrafficClass::SM;
constexpr auto HP = TrafficClass::HP;
constexpr auto LP = TrafficClass::LP;

NodeParams fusion_params() { return NodeParams{}; }

NodeParams sp_params()
{
    NodeParams p;
    p.mode = SchedulerMode::StrictPriority;
    return p;
}

} // namespace

TEST_CASE("on_gst_arrival: exit at arrival + 1.2 us, spacing preserved")
{
    NodeHarness h(fusion_params());
    h.run({{GST, 1200, 10.0}, {GST, 1200, 10.96}});
    CHECK(*h.packets[0].fdl_exit == from_us(11.2));
    CHECK(*h.packets[1].fdl_exit == from_us(12.16));
    CHECK(h.metrics.of(GST).min_delay == Picoseconds{1'200'000});
    CHECK(h.metrics.of(GST).max_delay == Picoseconds{1'200'000});
}

TEST_CASE("try_insert_sm: 500-byte SM fits 0.5 us ahead of a GST exit")
{
    // GST exits at 11.2; SM (0.4 us) inserted at 10.7 frees the link at 11.1.
    NodeHarness h(fusion_params());
    h.run({{GST, 1200, 10.0}, {SM, 500, 10.7}});
    CHECK(h.tx_start_us(1) == doctest::Approx(10.7));
    CHECK(h.tx_start_us(0) == doctest::Approx(11.2));
    CHECK(*h.metrics.min_insertion_slack == from_us(0.1));
}

TEST_CASE("try_insert_sm: 40-byte SM fits a 0.5 us gap")
{
    NodeHarness h(fusion_params());
    h.run({{GST, 1200, 10.0}, {SM, 40, 10.7}});
    CHECK(h.tx_start_us(1) == doctest::Approx(10.7));
    CHECK(h.metrics.of(SM).max_delay == Picoseconds{0});
}

TEST_CASE("try_insert_sm: 1200-byte SM is held until the GST has left")
{
    NodeHarness h(fusion_params());
    h.run({{GST, 1200, 10.0}, {SM, 1200, 10.7}});
    CHECK(h.tx_start_us(0) == doctest::Approx(11.2));
    // GST occupies [11.2, 12.16); the delay line is then empty.
    CHECK(h.tx_start_us(1) == doctest::Approx(12.16));
    CHECK(to_us(h.metrics.of(SM).max_delay) == doctest::Approx(1.46));
}

TEST_CASE("try_insert_sm: empty delay line admits a maximum-length SM packet")
{
    NodeHarness h(fusion_params());
    h.run({{SM, 1500, 1.0}, {GST, 1200, 1.0}});
    // SM arrival is dispatched first at equal times; the GST exits at 2.2,
    // exactly when the 1.2 us SM transmission ends.
    CHECK(h.tx_start_us(0) == doctest::Approx(1.0));
    CHECK(h.tx_start_us(1) == doctest::Approx(2.2));
}

TEST_CASE("try_insert_sm: exact fit with zero slack")
{
    NodeHarness h(fusion_params());
    // Gap of exactly 0.96 us for a 1200-byte packet.
    h.run({{GST, 1200, 10.0}, {SM, 1200, 10.24}});
    CHECK(h.tx_start_us(1) == doctest::Approx(10.24));
    CHECK(*h.metrics.min_insertion_slack == Picoseconds{0});
}

TEST_CASE("on_sm_arrival: drop-tail when the buffer would overflow")
{
    NodeParams p = fusion_params();
    p.buffer_capacity = 1600;
    NodeHarness h(p);
    // #0 goes straight to the link, #1 fills 1500 of 1600 bytes, #2 does not
    // fit, #3 fills the buffer exactly.
    h.run({{SM, 1500, 0.0}, {SM, 1500, 0.1}, {SM, 1500, 0.2}, {SM, 100, 0.3}});
    CHECK_FALSE(h.packets[1].dropped);
    CHECK(h.packets[2].dropped);
    CHECK_FALSE(h.packets[3].dropped);
    CHECK(h.metrics.of(SM).dropped == 1);
    CHECK(h.metrics.max_buffer_occupancy == 1600);
}

TEST_CASE("on_sm_arrival: uncontended packet waits zero")
{
    NodeHarness h(fusion_params());
    h.run({{SM, 800, 3.0}});
    CHECK(h.tx_start_us(0) == doctest::Approx(3.0));
    CHECK(*pdv(h.metrics.of(SM)) == Picoseconds{0});
}

TEST_CASE("on_fdl_exit: busy link at a GST exit is an invariant violation")
{
    // An FDL shorter than the largest SM service time breaks the gap test
    // guarantee for an SM packet inserted on an empty delay line.
    NodeParams p = fusion_params();
    p.fdl_delay = from_us(0.5);
    NodeHarness h(p);
    CHECK_THROWS_AS(h.run({{SM, 1500, 0.0}, {GST, 1200, 0.1}}), InvariantViolation);
}

TEST_CASE("scan_depth > 1 lets a small packet pass a blocked head")
{
    NodeParams p = fusion_params();
    p.scan_depth = 2;
    NodeHarness h(p);
    // Link busy with SM #1 until 10.8; at that point the GST exits at 11.2,
    // leaving 0.4 us: the 1200-byte head does not fit, the 40-byte one does.
    h.run({{GST, 1200, 10.0}, {SM, 1000, 10.0}, {SM, 1200, 10.1}, {SM, 40, 10.2}});
    CHECK(h.tx_start_us(3) == doctest::Approx(10.8));
    CHECK(h.tx_start_us(2) == doctest::Approx(12.16));
}

TEST_CASE("strict priority: HP waits for the LP frame in progress")
{
    NodeHarness h(sp_params());
    h.run({{LP, 1500, 0.0}, {HP, 1200, 0.3}});
    CHECK(to_us(h.metrics.of(HP).max_delay) == doctest::Approx(0.9));
}

TEST_CASE("strict priority: HP on an idle link goes immediately")
{
    NodeHarness h(sp_params());
    h.run({{HP, 1200, 2.0}});
    CHECK(h.metrics.of(HP).max_delay == Picoseconds{0});
}

TEST_CASE("strict priority: LP never starts while HP is queued")
{
    NodeHarness h(sp_params());
    h.run({{LP, 1500, 0.0}, {LP, 1500, 0.1}, {HP, 1200, 0.2}, {HP, 1200, 0.3}});
    CHECK(h.tx_start_us(2) == doctest::Approx(1.2));
    CHECK(h.tx_start_us(3) == doctest::Approx(2.16));
    CHECK(h.tx_start_us(1) == doctest::Approx(3.12));
}

// ---------------------------------------------------------------- properties

namespace {

struct RandomCase
{
    SimulationSetup setup;
    std::uint64_t packets;
};

RandomCase random_case(std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> gst_load(0.0, 0.9);
    std::uniform_real_distribution<double> sm_load(0.05, 0.5);
    std::uniform_int_distribution<std::uint64_t> seed(1, 1'000'000);
    std::uniform_int_distribution<int> buffer_kind(0, 2);
    RandomCase c;
    c.setup.seed = seed(gen);
    c.setup.priority = {TrafficClass::GST, gst_load(gen), Deterministic{1200}, 1};
    c.setup.best_effort = {TrafficClass::SM, sm_load(gen), UniformInt{40, 1500}, 4};
    // Mix the default 16 MiB buffer with small ones that actually drop.
    const int kind = buffer_kind(gen);
    c.setup.node.buffer_capacity = kind == 0 ? 16ull << 20 : (kind == 1 ? 20'000 : 200'000);
    c.packets = 5'000;
    return c;
}

void check_trace_properties(const Simulation& sim)
{
    const auto& pk = sim.packets();
    const auto& node = sim.setup().node;
    const auto cap = node.link_capacity_bps;

    struct Interval
    {
        Picoseconds start, end;
        TrafficClass cls;
    };
    std::vector<Interval> tx;
    std::vector<Picoseconds> gst_exits;
    for (const auto& p : pk) {
        if (p.tx_start)
            tx.push_back({*p.tx_start, *p.tx_start + service_time(p.length, cap), p.cls});
        if (p.cls == TrafficClass::GST) {
            REQUIRE(p.fdl_exit);
            CHECK(*p.fdl_exit - p.arrival == node.fdl_delay);
            CHECK(*p.tx_start == *p.fdl_exit);
            gst_exits.push_back(*p.fdl_exit);
        }
        if (p.tx_start)
            CHECK(p.arrival <= *p.tx_start);
        CHECK(p.dropped != p.tx_start.has_value());
    }
    std::sort(tx.begin(), tx.end(), [](auto& a, auto& b) { return a.start < b.start; });
    for (std::size_t i = 1; i < tx.size(); ++i)
        REQUIRE(tx[i - 1].end <= tx[i].start);

    // Every SM transmission ends no later than the next GST exit after it starts.
    std::sort(gst_exits.begin(), gst_exits.end());
    for (const auto& t : tx) {
        if (t.cls != TrafficClass::SM)
            continue;
        auto next = std::upper_bound(gst_exits.begin(), gst_exits.end(), t.start);
        if (next != gst_exits.end())
            REQUIRE(t.end <= *next);
    }

    // SM FIFO: transmission order equals arrival order.
    Picoseconds last_arrival{-1};
    std::vector<const Packet*> sm;
    for (const auto& p : pk)
        if (p.cls == TrafficClass::SM && p.tx_start)
            sm.push_back(&p);
    std::sort(sm.begin(), sm.end(), [](auto* a, auto* b) { return *a->tx_start < *b->tx_start; });
    for (const Packet* p : sm) {
        REQUIRE(p->arrival >= last_arrival);
        last_arrival = p->arrival;
    }

    const auto& m = sim.metrics();
    CHECK(m.max_buffer_occupancy <= node.buffer_capacity);
    for (TrafficClass c : {TrafficClass::GST, TrafficClass::SM}) {
        const auto& cm = m.of(c);
        CHECK(cm.generated == cm.delivered + cm.dropped);
    }
    CHECK(m.of(TrafficClass::GST).dropped == 0);
    if (m.min_insertion_slack)
        CHECK(*m.min_insertion_slack >= Picoseconds{0});
}

} // namespace

TEST_CASE("property: random fusion runs keep every node invariant")
{
    std::mt19937_64 gen(20240611);
    for (int i = 0; i < 25; ++i) {
        const RandomCase c = random_case(gen);
        CAPTURE(c.setup.seed);
        CAPTURE(c.setup.priority.load);
        CAPTURE(c.setup.best_effort.load);
        CAPTURE(c.setup.node.buffer_capacity);
        Simulation sim(c.setup);
        std::ostringstream log;
        sim.set_event_log(&log);
        sim.run(c.packets);
        check_trace_properties(sim);

        std::istringstream in(log.str());
        const auto audit = oracle::audit_event_log(in, sim.setup().node.link_capacity_bps);
        CHECK(audit.times_non_decreasing);
        CHECK(audit.events == sim.dispatched_events());
    }
}

TEST_CASE("property: identical setup gives an identical event log")
{
    std::mt19937_64 gen(77);
    for (int i = 0; i < 5; ++i) {
        const RandomCase c = random_case(gen);
        std::ostringstream a, b;
        Simulation s1(c.setup), s2(c.setup);
        s1.set_event_log(&a);
        s2.set_event_log(&b);
        s1.run(2'000);
        s2.run(2'000);
        CHECK(a.str() == b.str());
    }
}

TEST_CASE("property: strict-priority HP waiting bounded by one LP frame")
{
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> load(0.1, 0.45);
    for (int i = 0; i < 10; ++i) {
        SimulationSetup s;
        s.seed = gen();
        s.node.mode = SchedulerMode::StrictPriority;
        s.priority = {TrafficClass::HP, load(gen), Deterministic{1200}, 1};
        s.best_effort = {TrafficClass::LP, load(gen), Deterministic{1500}, 1};
        Simulation sim(s);
        sim.run(10'000);
        const auto& hp = sim.metrics().of(TrafficClass::HP);
        CHECK(hp.max_delay <= Picoseconds{1'200'000});
        CHECK(hp.delivered == hp.generated);
    }
}
