#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "gridspread/core.hpp"

namespace gridspread {

enum class Algorithm { naive, pruned };

// Result of a minimum-combined-distance scan. The witness is the
// lexicographically smallest symbol pair (s < t) attaining the minimum,
// identical across algorithms and worker counts.
struct VerifyReport {
    double min_combined = 0.0;
    std::pair<Symbol, Symbol> witness{0, 0};
    std::uint64_t pairs_examined = 0;
    Algorithm algorithm = Algorithm::naive;
};

// dist_p(A-cell of s, A-cell of t) + dist_p(B-cell of s, B-cell of t).
double combined_distance(const ArrangementPair& pair, const Norm& norm, Symbol s, Symbol t);

// Exact minimum over all unordered symbol pairs, O(N^2) evaluations.
VerifyReport min_combined_naive(const ArrangementPair& pair, const Norm& norm,
                                unsigned threads = 1);

// Same value and witness as the naive scan. Keeps a current best bound and,
// per symbol, enumerates only symbols whose A-cell lies within that L_inf
// radius, using grid A itself as the bucket index.
VerifyReport min_combined_pruned(const ArrangementPair& pair, const Norm& norm,
                                 unsigned threads = 1);

struct ClosestPairResult {
    std::uint64_t dist;  // minimum pairwise L_inf distance
    Symbol s;            // lexicographically smallest attaining pair, s < t
    Symbol t;
};

// Closest pair (L_inf) among the cells of the given symbols in arrangement
// `where`, via an expanding box search over the grid rather than a
// quadratic scan.
ClosestPairResult closest_pair_linf(const Arrangement& where, std::span<const Symbol> symbols);

}  // namespace gridspread
