#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gridspread/errors.hpp"

namespace gridspread {

// Absolute tolerance for every floating-distance equality comparison.
inline constexpr double kDistTolerance = 1e-9;

// Dense symbol id in [0, n^d).
using Symbol = std::size_t;

// Row-major cell index. Axis d-1 varies fastest, so ascending index order
// equals lexicographic order of the coordinate tuples.
using CellIndex = std::size_t;

// Cell-center coordinates, one entry per axis, each in [0, n-1].
using Cell = std::vector<std::uint32_t>;

// L_p regime: a finite integer p >= 1 or infinity.
class Norm {
public:
    static Norm finite(std::uint32_t p);
    static Norm l1() { return finite(1); }
    static Norm l2() { return finite(2); }
    static Norm linf() { return Norm(0); }

    bool infinite() const { return p_ == 0; }
    std::uint32_t p() const;
    // true when every distance under this norm is an exact integer
    bool integral() const { return p_ == 0 || p_ == 1; }

    // accepts a positive integer or "inf"/"infinity"
    static Norm parse(std::string_view s);
    std::string str() const;

    friend bool operator==(Norm a, Norm b) { return a.p_ == b.p_; }
    friend bool operator!=(Norm a, Norm b) { return a.p_ != b.p_; }

private:
    explicit Norm(std::uint32_t p) : p_(p) {}
    std::uint32_t p_;  // 0 encodes infinity
};

// Hypercubic grid shape: d axes of n cells each.
class GridSpec {
public:
    GridSpec(std::uint64_t n, std::uint64_t d);

    std::uint32_t n() const { return n_; }
    std::uint32_t d() const { return d_; }
    std::size_t cell_count() const { return cells_; }

    Cell cell_at(CellIndex idx) const;
    CellIndex index_of(std::span<const std::uint32_t> coords) const;

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.n_ == b.n_ && a.d_ == b.d_;
    }
    friend bool operator!=(const GridSpec& a, const GridSpec& b) { return !(a == b); }

private:
    std::uint32_t n_;
    std::uint32_t d_;
    std::size_t cells_;
};

// L_p distance between two cell centers. Exact integer values for p in
// {1, inf}; the p-th root of the coordinate power sum otherwise.
double dist(const Norm& norm, std::span<const std::uint32_t> c1,
            std::span<const std::uint32_t> c2);

std::uint64_t dist_linf(std::span<const std::uint32_t> c1, std::span<const std::uint32_t> c2);
std::uint64_t dist_l1(std::span<const std::uint32_t> c1, std::span<const std::uint32_t> c2);

// Bijection between the n^d symbols and the cells of one grid. Immutable
// after construction; the forward and inverse maps are kept together.
class Arrangement {
public:
    // validates that symbol_to_cell is a bijection onto [0, n^d)
    static Arrangement from_symbol_to_cell(const GridSpec& spec,
                                           std::vector<CellIndex> symbol_to_cell);

    const GridSpec& spec() const { return spec_; }
    std::size_t size() const { return symbol_to_cell_.size(); }

    CellIndex cell_of(Symbol s) const { return symbol_to_cell_[s]; }
    Symbol symbol_at(CellIndex c) const { return cell_to_symbol_[c]; }
    Cell coords_of(Symbol s) const { return spec_.cell_at(symbol_to_cell_[s]); }

    std::span<const CellIndex> symbol_to_cell() const { return symbol_to_cell_; }
    std::span<const Symbol> cell_to_symbol() const { return cell_to_symbol_; }

    friend bool operator==(const Arrangement& a, const Arrangement& b) {
        return a.spec_ == b.spec_ && a.symbol_to_cell_ == b.symbol_to_cell_;
    }
    friend bool operator!=(const Arrangement& a, const Arrangement& b) { return !(a == b); }

private:
    friend Arrangement identity_arrangement(const GridSpec&);
    Arrangement(GridSpec spec, std::vector<CellIndex> fwd, std::vector<Symbol> inv)
        : spec_(spec), symbol_to_cell_(std::move(fwd)), cell_to_symbol_(std::move(inv)) {}

    GridSpec spec_;
    std::vector<CellIndex> symbol_to_cell_;
    std::vector<Symbol> cell_to_symbol_;
};

// Canonical A: symbol k occupies the cell with row-major index k.
Arrangement identity_arrangement(const GridSpec& spec);

// Two arrangements of the same symbol set over the same grid.
struct ArrangementPair {
    ArrangementPair(Arrangement a_in, Arrangement b_in);

    Arrangement a;
    Arrangement b;

    const GridSpec& spec() const { return a.spec(); }

    friend bool operator==(const ArrangementPair& x, const ArrangementPair& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const ArrangementPair& x, const ArrangementPair& y) {
        return !(x == y);
    }
};

}  // namespace gridspread
