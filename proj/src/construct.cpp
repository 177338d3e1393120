#include "gridspread/construct.hpp"

#include <cstdint>
#include <utility>

#include "gridspread/intmath.hpp"

namespace gridspread {

namespace {

// Applies a per-axis displacement table to every cell of the identity
// arrangement and validates the result. The table must be a permutation of
// [0, n); the product map is then a bijection on cells, which the
// Arrangement factory re-checks anyway.
ArrangementPair pair_from_axis_map(const GridSpec& spec, const std::vector<std::int64_t>& axis_map,
                                   const char* method) {
    const std::uint32_t n = spec.n();
    const std::uint32_t d = spec.d();
    const std::size_t cells = spec.cell_count();

    std::vector<std::uint32_t> mapped(n);
    for (std::uint32_t x = 0; x < n; ++x) {
        const std::int64_t xp = axis_map[x];
        if (xp < 0 || xp >= static_cast<std::int64_t>(n))
            throw InvariantViolation(std::string(method) +
                                     " construction moved coordinate out of range");
        mapped[x] = static_cast<std::uint32_t>(xp);
    }

    std::vector<CellIndex> fwd(cells);
    std::vector<std::uint32_t> coords(d, 0);
    for (CellIndex idx = 0; idx < cells; ++idx) {
        CellIndex target = 0;
        for (std::uint32_t j = 0; j < d; ++j) target = target * n + mapped[coords[j]];
        fwd[idx] = target;
        for (std::uint32_t j = d; j-- > 0;) {
            if (++coords[j] < n) break;
            coords[j] = 0;
        }
    }

    try {
        Arrangement b = Arrangement::from_symbol_to_cell(spec, std::move(fwd));
        return ArrangementPair(identity_arrangement(spec), std::move(b));
    } catch (const ValidationError& e) {
        throw InvariantViolation(std::string(method) +
                                 " construction produced an invalid placement: " + e.what());
    }
}

}  // namespace

std::string_view method_name(Method m) {
    switch (m) {
        case Method::identity: return "identity";
        case Method::special: return "special";
        case Method::general: return "general";
    }
    throw InvariantViolation("unknown construction method");
}

Method parse_method(std::string_view s) {
    if (s == "identity") return Method::identity;
    if (s == "special") return Method::special;
    if (s == "general") return Method::general;
    throw ValidationError("unknown construction method '" + std::string(s) + "'");
}

std::uint64_t select_k(std::uint64_t n) {
    if (n < 2) throw ValidationError("select_k requires n >= 2");
    // P(k) = 3k <= ceil(n/k) is monotone decreasing in k; P(1) iff n >= 3.
    if (n < 3) return 0;
    std::uint64_t lo = 1;   // P(lo) holds
    std::uint64_t hi = n;   // P(hi) fails: 3n > ceil(n/n) = 1
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (3 * mid <= ceil_div(n, mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::vector<std::uint32_t> color_of(std::span<const std::uint32_t> cell, std::uint64_t k) {
    if (k == 0) throw ValidationError("color modulus k must be positive");
    std::vector<std::uint32_t> color(cell.size());
    for (std::size_t j = 0; j < cell.size(); ++j)
        color[j] = static_cast<std::uint32_t>(cell[j] % k);
    return color;
}

ArrangementPair construct_special(const GridSpec& spec) {
    const std::uint64_t n = spec.n();
    const std::uint64_t k = isqrt(n);
    if (k * k != n || k < 2)
        throw ValidationError("special construction requires n = k^2 with k >= 2");

    std::vector<std::int64_t> axis_map(n);
    for (std::uint64_t x = 0; x < n; ++x) {
        const std::uint64_t i = x % k;
        std::int64_t xp = static_cast<std::int64_t>(x + i * k);
        if (xp > static_cast<std::int64_t>(n - 1)) xp -= static_cast<std::int64_t>(k * k);
        axis_map[x] = xp;
    }
    return pair_from_axis_map(spec, axis_map, "special");
}

ArrangementPair construct_general(const GridSpec& spec) {
    const std::uint64_t n = spec.n();
    const std::uint64_t k = select_k(n);
    if (k < 1) throw ValidationError("general construction requires n >= 3");
    const std::uint64_t m_wrap = ceil_div(n, k) * k;
    const std::uint64_t r = (n - 1) % k;

    std::vector<std::int64_t> axis_map(n);
    for (std::uint64_t x = 0; x < n; ++x) {
        const std::uint64_t i = x % k;
        std::int64_t xp = static_cast<std::int64_t>(x + 3 * i * k);
        if (xp > static_cast<std::int64_t>(n - 1)) {
            xp -= static_cast<std::int64_t>(m_wrap);
            if (i > r) xp += static_cast<std::int64_t>(k);
        }
        axis_map[x] = xp;
    }
    return pair_from_axis_map(spec, axis_map, "general");
}

Construction construct_with_method(const GridSpec& spec, Method method) {
    switch (method) {
        case Method::identity: {
            Arrangement a = identity_arrangement(spec);
            return {ArrangementPair(a, a), {spec, Method::identity, 0, 0}};
        }
        case Method::special: {
            const std::uint64_t k = isqrt(spec.n());
            return {construct_special(spec), {spec, Method::special, k, k}};
        }
        case Method::general: {
            const std::uint64_t k = select_k(spec.n());
            return {construct_general(spec), {spec, Method::general, k, 2 * k}};
        }
    }
    throw InvariantViolation("unknown construction method");
}

Construction construct_auto(const GridSpec& spec, const Norm& norm) {
    (void)norm;  // the L_inf guarantee lower-bounds every L_p
    const std::uint64_t n = spec.n();
    const std::uint64_t root = isqrt(n);
    const bool square = root * root == n && root >= 2;
    const std::uint64_t general_guarantee = 2 * select_k(n);
    const std::uint64_t special_guarantee = square ? root : 0;

    Method method = Method::identity;
    if (general_guarantee >= special_guarantee && general_guarantee > 0)
        method = Method::general;
    else if (special_guarantee > 0)
        method = Method::special;
    return construct_with_method(spec, method);
}

}  // namespace gridspread
