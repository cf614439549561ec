// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>

namespace ihon {

/// Virtual simulation time. Integer picoseconds keep the gap test exact:
/// one bit at 10 Gb/s is 100 ps, a 40-byte frame is 32 ns.
using Picoseconds = std::chrono::duration<std::int64_t, std::pico>;

inline constexpr Picoseconds kNever = Picoseconds::max();

inline constexpr double to_us(Picoseconds t) noexcept
{
    return static_cast<double>(t.count()) / 1e6;
}

inline Picoseconds from_us(double us) noexcept
{
    return Picoseconds{std::llround(us * 1e6)};
}

inline Picoseconds round_ps(double ps) noexcept
{
    return Picoseconds{std::llround(ps)};
}

/// Serialization time of `bytes` on a link of `capacity_bps`, rounded to
/// the nearest picosecond (exact whenever 1e12 / capacity is integral).
inline Picoseconds service_time(std::uint64_t bytes, std::int64_t capacity_bps) noexcept
{
    __extension__ using Wide = __int128;
    const Wide bits = static_cast<Wide>(bytes) * 8;
    const Wide num = bits * 1'000'000'000'000 + capacity_bps / 2;
    return Picoseconds{static_cast<std::int64_t>(num / capacity_bps)};
}

} // namespace ihon
