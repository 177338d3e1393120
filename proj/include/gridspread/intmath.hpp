#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "gridspread/errors.hpp"

namespace gridspread {

using u128 = unsigned __int128;

// floor(sqrt(v)), exact over the full uint64 range.
inline std::uint64_t isqrt(std::uint64_t v) {
    if (v == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r > v / r) --r;          // r*r > v without overflow
    while (r + 1 <= v / (r + 1)) ++r;
    return r;
}

inline std::uint64_t ceil_sqrt(std::uint64_t v) {
    const std::uint64_t r = isqrt(v);
    return r * r == v ? r : r + 1;
}

// largest m with 3*m*m <= n, i.e. floor(sqrt(n/3))
inline std::uint64_t floor_sqrt_third(std::uint64_t n) { return isqrt(n / 3); }

// smallest m with 3*m*m >= n, i.e. ceil(sqrt(n/3))
inline std::uint64_t ceil_sqrt_third(std::uint64_t n) {
    const std::uint64_t f = floor_sqrt_third(n);
    return 3 * f * f == n ? f : f + 1;
}

inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

// base^exp with an overflow guard.
inline std::uint64_t checked_pow_u64(std::uint64_t base, std::uint32_t exp, const char* what) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            throw ValidationError(what);
        r *= base;
    }
    return r;
}

inline u128 checked_pow_u128(std::uint64_t base, std::uint32_t exp, const char* what) {
    constexpr u128 kMax = ~u128{0};
    u128 r = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (base != 0 && r > kMax / base) throw ValidationError(what);
        r *= base;
    }
    return r;
}

inline u128 checked_add_u128(u128 a, u128 b, const char* what) {
    constexpr u128 kMax = ~u128{0};
    if (a > kMax - b) throw ValidationError(what);
    return a + b;
}

}  // namespace gridspread
