#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridspread/core.hpp"

namespace gridspread {

enum class Method { identity, special, general };

std::string_view method_name(Method m);
Method parse_method(std::string_view s);

// A chosen construction together with its proven lower bound on the
// minimum combined L_inf distance of the pair it produces.
struct ConstructionPlan {
    GridSpec spec;
    Method method;
    std::uint64_t k;          // coloring modulus; 0 for identity
    std::uint64_t guarantee;  // k for special, 2k for general, 0 for identity
};

struct Construction {
    ArrangementPair pair;
    ConstructionPlan plan;
};

// Largest k >= 1 with 3k <= ceil(n/k), or 0 when no such k exists (n = 2).
std::uint64_t select_k(std::uint64_t n);

// Component-wise residues of the coordinates mod k.
std::vector<std::uint32_t> color_of(std::span<const std::uint32_t> cell, std::uint64_t k);

// Perfect-square construction (n = k^2, k >= 2): per axis, with i = x mod k,
// x' = x + ik, wrapped by -k^2 when that leaves the grid. Guarantee k.
ArrangementPair construct_special(const GridSpec& spec);

// General construction with k = select_k(n) >= 1 and M = ceil(n/k)*k:
// per axis, with i = x mod k, x' = x + 3ik, wrapped by -M (i <= (n-1) mod k)
// or -M + k (otherwise) when that leaves the grid. Guarantee 2k.
ArrangementPair construct_general(const GridSpec& spec);

Construction construct_with_method(const GridSpec& spec, Method method);

// Picks the applicable method with the largest guarantee; ties go to
// general. The guarantee is stated in L_inf and therefore lower-bounds the
// minimum combined distance under every L_p, so the norm does not alter
// the choice.
Construction construct_auto(const GridSpec& spec, const Norm& norm = Norm::linf());

}  // namespace gridspread
