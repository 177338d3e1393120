#pragma once

#include <cstdint>
#include <utility>

#include "gridspread/core.hpp"

namespace gridspread {

// Theoretical envelope for the maximin combined distance of an (n, d, p)
// instance. `upper_linf` carries the exact integer L_inf bound alongside
// the d^{1/p}-scaled value.
struct BoundsReport {
    std::uint64_t n;
    std::uint32_t d;
    Norm p;
    std::uint64_t lower;
    double upper;
    std::uint64_t upper_linf;
    bool ratio_defined;
    double ratio;
};

// 2 * floor(sqrt(n/3)), computed as the largest m with 3m^2 <= n, doubled.
std::uint64_t lower_bound(std::uint64_t n);

// ceil(sqrt(n-1)) + floor(sqrt(n-1)), exact integer square roots.
std::uint64_t upper_bound_linf(std::uint64_t n);

// d^{1/p} * (ceil(sqrt(n-1)) + floor(sqrt(n-1))); factor exactly 1 for
// p = infinity.
double upper_bound(std::uint64_t n, std::uint32_t d, const Norm& p);

BoundsReport bounds_report(std::uint64_t n, std::uint32_t d, const Norm& p);

// Constructive certificate of the L_inf upper bound on a concrete pair:
// the symbols of a (u+1)^d sub-grid of A, the closest pair among their
// B-cells, and the resulting combined distance <= u + v with uv <= n-1.
struct UpperBoundWitness {
    std::uint64_t u;
    Cell sub_grid_origin;
    std::uint64_t v;
    std::pair<Symbol, Symbol> witness;
    std::uint64_t combined;
};

// Anchors the sub-grid at the origin by default; with scan_all_anchors it
// tries every anchor position and returns the strongest (smallest
// combined) witness.
UpperBoundWitness upper_bound_witness(const ArrangementPair& pair, bool scan_all_anchors = false);

}  // namespace gridspread
