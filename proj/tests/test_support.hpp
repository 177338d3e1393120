#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "gridspread/core.hpp"

namespace gridspread::testing {

inline Arrangement random_arrangement(const GridSpec& spec, std::mt19937_64& rng) {
    std::vector<CellIndex> fwd(spec.cell_count());
    std::iota(fwd.begin(), fwd.end(), CellIndex{0});
    std::shuffle(fwd.begin(), fwd.end(), rng);
    return Arrangement::from_symbol_to_cell(spec, std::move(fwd));
}

inline ArrangementPair random_pair(const GridSpec& spec, std::mt19937_64& rng,
                                   bool random_a = true) {
    Arrangement a = random_a ? random_arrangement(spec, rng) : identity_arrangement(spec);
    Arrangement b = random_arrangement(spec, rng);
    return ArrangementPair(std::move(a), std::move(b));
}

inline Cell random_cell(const GridSpec& spec, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> coord(0, spec.n() - 1);
    Cell c(spec.d());
    for (auto& v : c) v = coord(rng);
    return c;
}

}  // namespace gridspread::testing
