// SPDX-License-Identifier: Apache-2.0
#include "ihon/error.hpp"
#include "ihon/sim_kernel.hpp"

#include <doctest.h>

#include <vector>

using namespace ihon;
using namespace std::chrono_literals;

namespace {

std::vector<SimEvent> drain(EventQueue& q)
{
    std::vector<SimEvent> out;
    while (!q.empty())
        out.push_back(q.pop());
    return out;
}

Picoseconds us(double v) { return from_us(v); }

} // namespace

TEST_CASE("schedule: later events dispatch after earlier ones")
{
    EventQueue q;
    q.schedule({us(3), EventKind::SmArrival, 1});
    (void)q.pop();
    REQUIRE(q.now() == us(3));
    q.schedule({us(5), EventKind::SmArrival, 2});
    q.schedule({us(4), EventKind::SmArrival, 3});
    const auto order = drain(q);
    REQUIRE(order.size() == 2);
    CHECK(order[0].packet == 3);
    CHECK(order[1].packet == 2);
}

TEST_CASE("schedule: same-time events follow the tie rank, then FIFO")
{
    EventQueue q;
    const Picoseconds t = us(1);
    q.schedule({t, EventKind::GstArrival, 1});
    q.schedule({t, EventKind::SmArrival, 2});
    q.schedule({t, EventKind::TxComplete, 3});
    q.schedule({t, EventKind::FdlExit, 4});
    q.schedule({t, EventKind::SmArrival, 5});
    const auto order = drain(q);
    std::vector<PacketId> ids;
    for (const auto& e : order)
        ids.push_back(e.packet);
    CHECK(ids == std::vector<PacketId>{4, 3, 2, 5, 1});
}

TEST_CASE("schedule: event at the current clock goes after queued same-time events")
{
    EventQueue q;
    q.schedule({us(2), EventKind::SmArrival, 1});
    q.schedule({us(2), EventKind::SmArrival, 2});
    CHECK(q.pop().packet == 1);
    q.schedule({q.now(), EventKind::SmArrival, 3});
    CHECK(q.pop().packet == 2);
    CHECK(q.pop().packet == 3);
}

TEST_CASE("schedule: retro-scheduling is rejected")
{
    EventQueue q;
    q.schedule({us(3), EventKind::SmArrival, 1});
    (void)q.pop();
    CHECK_THROWS_AS(q.schedule({us(2), EventKind::SmArrival, 2}), InvariantViolation);
    CHECK_NOTHROW(q.schedule({us(3), EventKind::SmArrival, 2}));
}

TEST_CASE("exp_sample: mean over 1e6 draws within 1% of 1.92 us")
{
    RngStream s(907, 1);
    const double mean = 1.92e6; // ps
    double sum = 0.0;
    double lo = 1e300;
    for (int i = 0; i < 1'000'000; ++i) {
        const double x = exp_sample(s, mean);
        lo = std::min(lo, x);
        sum += x;
    }
    CHECK(lo >= 0.0);
    CHECK(sum / 1e6 == doctest::Approx(mean).epsilon(0.01));
}

TEST_CASE("exp_sample: non-positive mean rejected")
{
    RngStream s(1, 1);
    CHECK_THROWS_AS(exp_sample(s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(exp_sample(s, -1.0), std::invalid_argument);
}

TEST_CASE("RngStream: identical seed gives identical draws, streams differ")
{
    RngStream a(907, 1), b(907, 1), c(907, 2);
    std::vector<double> da, db, dc;
    for (int i = 0; i < 5; ++i) {
        da.push_back(exp_sample(a, 1.0));
        db.push_back(exp_sample(b, 1.0));
        dc.push_back(exp_sample(c, 1.0));
    }
    CHECK(da == db);
    CHECK(da != dc);
}

TEST_CASE("uniform_int_sample: range, mean and degenerate case")
{
    RngStream s(234, 2);
    double sum = 0.0;
    std::uint32_t lo = 0xffffffff, hi = 0;
    for (int i = 0; i < 1'000'000; ++i) {
        const auto v = uniform_int_sample(s, 40, 1500);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    CHECK(lo == 40);
    CHECK(hi == 1500);
    CHECK(sum / 1e6 == doctest::Approx(770.0).epsilon(0.01));

    for (int i = 0; i < 100; ++i)
        CHECK(uniform_int_sample(s, 40, 40) == 40);
    CHECK_THROWS_AS(uniform_int_sample(s, 41, 40), std::invalid_argument);
}

TEST_CASE("uniform_int_sample: chi-square over 20 bins at 1% significance")
{
    // 1461 values in 20 bins of unequal width; expected counts follow the
    // width of each bin.
    RngStream s(326, 2);
    constexpr int kDraws = 100'000;
    constexpr int kBins = 20;
    constexpr std::uint32_t lo = 40, hi = 1500;
    const std::uint32_t values = hi - lo + 1;
    std::vector<int> observed(kBins, 0);
    auto bin_of = [&](std::uint32_t v) { return static_cast<int>((v - lo) * kBins / values); };
    for (int i = 0; i < kDraws; ++i)
        ++observed[bin_of(uniform_int_sample(s, lo, hi))];
    std::vector<int> width(kBins, 0);
    for (std::uint32_t v = lo; v <= hi; ++v)
        ++width[bin_of(v)];
    double chi2 = 0.0;
    for (int b = 0; b < kBins; ++b) {
        const double expected = static_cast<double>(kDraws) * width[b] / values;
        chi2 += (observed[b] - expected) * (observed[b] - expected) / expected;
    }
    // 99th percentile of chi-square with 19 degrees of freedom.
    CHECK(chi2 < 36.191);
}
