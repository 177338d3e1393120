#pragma once

#include <cstdint>
#include <optional>

#include "gridspread/core.hpp"

namespace gridspread {

enum class Enumeration {
    plain,  // visit every arrangement
    pruned  // abandon partial placements that already fall below the goal;
            // results are identical to plain enumeration
};

struct OracleOptions {
    Enumeration enumeration = Enumeration::pruned;
    unsigned threads = 1;
    // A defaults to the identity arrangement; relabeling invariance makes
    // the choice immaterial for the optimum and for solution counts.
    const Arrangement* fixed_a = nullptr;
    // when set, exact_optimum also fills count_at_threshold
    std::optional<double> count_threshold;
};

struct OracleResult {
    double optimum;
    ArrangementPair best_pair;  // first maximizer in lexicographic order
    std::optional<std::uint64_t> count_at_threshold;
    std::uint64_t arrangements_enumerated;  // (n^d)! on completion
};

// Exact maximum over all B-arrangements of the minimum combined distance,
// with A fixed. Refuses instances with more than 9 cells.
OracleResult exact_optimum(const GridSpec& spec, const Norm& norm, const OracleOptions& opts = {});

// Number of B-arrangements whose minimum combined distance is >= threshold.
std::uint64_t count_solutions(const GridSpec& spec, const Norm& norm, double threshold,
                              const OracleOptions& opts = {});

}  // namespace gridspread
