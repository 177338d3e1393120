#include "gridspread/bounds.hpp"

#include <cmath>
#include <vector>

#include "gridspread/intmath.hpp"
#include "gridspread/metrics.hpp"

namespace gridspread {

namespace {

void require_n(std::uint64_t n) {
    if (n < 2) throw ValidationError("bounds require n >= 2");
}

// Witness for one anchor position. u and the sub-grid side are fixed by
// the caller; v is the measured closest-pair distance among the B-cells.
UpperBoundWitness witness_at(const ArrangementPair& pair, std::uint64_t u, const Cell& origin) {
    const GridSpec& spec = pair.spec();
    const std::uint32_t n = spec.n();
    const std::uint32_t d = spec.d();
    const std::uint32_t side = static_cast<std::uint32_t>(u) + 1;

    std::vector<Symbol> symbols;
    symbols.reserve(static_cast<std::size_t>(std::pow(double(side), double(d))) + 1);
    Cell cur(origin);
    while (true) {
        symbols.push_back(pair.a.symbol_at(spec.index_of(cur)));
        std::uint32_t j = d;
        while (j-- > 0) {
            if (++cur[j] < origin[j] + side) break;
            cur[j] = origin[j];
        }
        if (j == static_cast<std::uint32_t>(-1)) break;
    }

    const ClosestPairResult cp = closest_pair_linf(pair.b, symbols);
    const std::uint64_t v = cp.dist;
    const std::uint64_t d_a = dist_linf(pair.a.coords_of(cp.s), pair.a.coords_of(cp.t));
    const std::uint64_t combined = d_a + v;
    if (d_a > u || combined > u + v)
        throw InvariantViolation("upper bound witness exceeds u + v");
    if (u * v > std::uint64_t(n) - 1)
        throw InvariantViolation("upper bound witness violates uv <= n-1");
    return {u, origin, v, {cp.s, cp.t}, combined};
}

}  // namespace

std::uint64_t lower_bound(std::uint64_t n) {
    require_n(n);
    return 2 * floor_sqrt_third(n);
}

std::uint64_t upper_bound_linf(std::uint64_t n) {
    require_n(n);
    return ceil_sqrt(n - 1) + isqrt(n - 1);
}

double upper_bound(std::uint64_t n, std::uint32_t d, const Norm& p) {
    require_n(n);
    if (d < 2) throw ValidationError("bounds require d >= 2");
    const double base = static_cast<double>(upper_bound_linf(n));
    if (p.infinite()) return base;
    return std::pow(static_cast<double>(d), 1.0 / p.p()) * base;
}

BoundsReport bounds_report(std::uint64_t n, std::uint32_t d, const Norm& p) {
    const std::uint64_t lo = lower_bound(n);
    const double up = upper_bound(n, d, p);
    const bool defined = lo > 0;
    return {n, d, p, lo, up, upper_bound_linf(n), defined,
            defined ? up / static_cast<double>(lo) : 0.0};
}

UpperBoundWitness upper_bound_witness(const ArrangementPair& pair, bool scan_all_anchors) {
    const GridSpec& spec = pair.spec();
    const std::uint32_t n = spec.n();
    const std::uint32_t d = spec.d();
    const std::uint64_t u = ceil_sqrt(std::uint64_t(n) - 1);
    if (u + 1 > n) throw InvariantViolation("sub-grid side u+1 exceeds n");

    UpperBoundWitness best = witness_at(pair, u, Cell(d, 0));
    if (!scan_all_anchors) return best;

    const std::uint32_t max_origin = n - static_cast<std::uint32_t>(u) - 1;
    Cell origin(d, 0);
    while (true) {
        std::uint32_t j = d;
        while (j-- > 0) {
            if (++origin[j] <= max_origin) break;
            origin[j] = 0;
        }
        if (j == static_cast<std::uint32_t>(-1)) break;
        UpperBoundWitness cand = witness_at(pair, u, origin);
        if (cand.combined < best.combined ||
            (cand.combined == best.combined && cand.v < best.v))
            best = cand;
    }
    return best;
}

}  // namespace gridspread
