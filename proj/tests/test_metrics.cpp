// SPDX-License-Identifier: Apache-2.0
#include "ihon/error.hpp"
#include "ihon/metrics.hpp"

#include <doctest.h>

#include <cmath>

using namespace ihon;

namespace {

ClassMetrics with_delays(std::initializer_list<double> us)
{
    ClassMetrics m;
    for (double d : us) {
        m.record_generated(100, Picoseconds{0});
        m.record_delivery(from_us(d));
    }
    return m;
}

} // namespace

TEST_CASE("record_delivery: constant 1.2 us delays")
{
    const auto m = with_delays({1.2, 1.2, 1.2});
    CHECK(*mean_delay(m) == from_us(1.2));
    CHECK(m.min_delay == from_us(1.2));
    CHECK(m.max_delay == from_us(1.2));
    CHECK(*pdv(m) == Picoseconds{0});
    CHECK(*pdv_mean(m) == Picoseconds{0});
}

TEST_CASE("record_delivery: arithmetic mean and singleton")
{
    CHECK(*mean_delay(with_delays({1, 2, 3})) == from_us(2));
    const auto one = with_delays({4.5});
    CHECK(*mean_delay(one) == from_us(4.5));
    CHECK(one.min_delay == one.max_delay);
}

TEST_CASE("record_delivery: negative delay rejected")
{
    ClassMetrics m;
    CHECK_THROWS_AS(m.record_delivery(Picoseconds{-1}), InvariantViolation);
}

TEST_CASE("pdv: peak-to-peak against the minimum")
{
    const auto m = with_delays({5, 8, 20});
    CHECK(*pdv(m) == from_us(15));
    CHECK(*pdv_mean(m) == from_us(6)); // mean 11 - min 5
    CHECK_FALSE(pdv(ClassMetrics{}).has_value());
}

TEST_CASE("plr: dropped over generated")
{
    ClassMetrics m;
    m.generated = 40'000;
    CHECK(*plr(m) == 0.0);
    m.dropped = 40;
    CHECK(*plr(m) == doctest::Approx(1.0e-3));
    CHECK_FALSE(plr(ClassMetrics{}).has_value());
}

TEST_CASE("aggregate: cross-seed mean and sample standard deviation")
{
    std::vector<ClassMetrics> same(10, with_delays({1.2, 1.2}));
    const auto s = aggregate(same);
    CHECK(s.latency_mean.mean == 1.2e6);
    CHECK(s.latency_mean.stddev == 0.0);
    CHECK(s.per_seed.size() == 10);
    CHECK(s.generated == 20);

    std::vector<ClassMetrics> two{with_delays({1}), with_delays({3})};
    const auto t = aggregate(two);
    CHECK(t.latency_mean.mean == doctest::Approx(2e6));
    CHECK(t.latency_mean.stddev == doctest::Approx(std::sqrt(2.0) * 1e6));
}

TEST_CASE("aggregate: classes without data report no samples")
{
    std::vector<ClassMetrics> empty(3);
    const auto s = aggregate(empty);
    CHECK_FALSE(s.latency_mean.has_data());
    CHECK_FALSE(s.plr.has_data());
}

TEST_CASE("utilization and offered load")
{
    RunMetrics m;
    CHECK_FALSE(utilization(m).has_value());
    m.link_busy = from_us(3);
    m.elapsed = from_us(4);
    CHECK(*utilization(m) == doctest::Approx(0.75));

    ClassMetrics c;
    // 1250 bytes = 10,000 bits every 2 us at 10 Gb/s is half the link.
    for (int i = 1; i <= 4; ++i)
        c.record_generated(1250, from_us(2.0 * i));
    CHECK(*offered_load(c, 10'000'000'000) == doctest::Approx(0.5));
}
