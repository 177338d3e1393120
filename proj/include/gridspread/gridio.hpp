#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridspread/core.hpp"

namespace gridspread {

// An arrangement pair together with its external symbol tokens. Dense ids
// exist only in memory; files carry arbitrary non-whitespace ASCII tokens,
// mapped to ids in first-appearance order in grid A. Two documents are
// equal when the same token sits in the same cell of each grid, regardless
// of how ids were assigned.
struct PairDocument {
    GridSpec spec;
    std::vector<std::string> tokens;  // token per dense symbol id
    ArrangementPair pair;

    const std::string& token_at_a(CellIndex c) const { return tokens[pair.a.symbol_at(c)]; }
    const std::string& token_at_b(CellIndex c) const { return tokens[pair.b.symbol_at(c)]; }

    friend bool operator==(const PairDocument& x, const PairDocument& y) {
        if (x.spec != y.spec) return false;
        for (CellIndex c = 0; c < x.spec.cell_count(); ++c)
            if (x.token_at_a(c) != y.token_at_a(c) || x.token_at_b(c) != y.token_at_b(c))
                return false;
        return true;
    }
    friend bool operator!=(const PairDocument& x, const PairDocument& y) { return !(x == y); }
};

// Wraps a pair with decimal tokens "0".."N-1".
PairDocument document_for(const ArrangementPair& pair);

// gridpair v1. Line 1: `gridpair v1 n=<n> d=<d>`. For d = 2: n rows of n
// tokens for A (row = y from 0, column = x from 0), a blank line, n rows
// for B. For d >= 3: one line `<x_1> ... <x_d> <token>` per cell in
// lexicographic cell order, grids separated by a `---` line.
PairDocument parse_pair_document(std::string_view text);

// Canonical form: LF newlines, single spaces, ASCII only; byte-stable.
std::string serialize(const PairDocument& doc);
std::string serialize(const ArrangementPair& pair);

enum class RenderFormat { text, svg };

RenderFormat parse_render_format(std::string_view s);

// Text: aligned token matrices for A and B (d > 2 as n slices per last
// coordinate). SVG (d = 2 only): both grids side by side, cells colored by
// color_of when a modulus k is supplied, by symbol hash otherwise.
std::string render(const PairDocument& doc, RenderFormat format,
                   std::optional<std::uint64_t> color_k = {});

}  // namespace gridspread
