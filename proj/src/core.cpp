#include "gridspread/core.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

#include "gridspread/intmath.hpp"

namespace gridspread {

Norm Norm::finite(std::uint32_t p) {
    if (p == 0) throw ValidationError("finite norm requires p >= 1");
    return Norm(p);
}

std::uint32_t Norm::p() const {
    if (p_ == 0) throw InvariantViolation("p() called on the infinity norm");
    return p_;
}

Norm Norm::parse(std::string_view s) {
    if (s == "inf" || s == "infinity") return linf();
    std::uint32_t p = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, p);
    if (ec != std::errc{} || ptr != last || p == 0)
        throw ValidationError("invalid norm '" + std::string(s) +
                              "': expected a positive integer or 'inf'");
    return finite(p);
}

std::string Norm::str() const { return p_ == 0 ? "inf" : std::to_string(p_); }

GridSpec::GridSpec(std::uint64_t n, std::uint64_t d) {
    if (n < 2) throw ValidationError("side length n must be at least 2");
    if (d < 2) throw ValidationError("dimension d must be at least 2");
    if (n > 0xffffffffULL) throw ValidationError("side length n too large");
    if (d > 0xffffffffULL) throw ValidationError("dimension d too large");
    cells_ = checked_pow_u64(n, static_cast<std::uint32_t>(d),
                             "cell count n^d overflows the native unsigned integer");
    n_ = static_cast<std::uint32_t>(n);
    d_ = static_cast<std::uint32_t>(d);
}

Cell GridSpec::cell_at(CellIndex idx) const {
    if (idx >= cells_) throw ValidationError("cell index out of range");
    Cell c(d_);
    for (std::uint32_t j = d_; j-- > 0;) {
        c[j] = static_cast<std::uint32_t>(idx % n_);
        idx /= n_;
    }
    return c;
}

CellIndex GridSpec::index_of(std::span<const std::uint32_t> coords) const {
    if (coords.size() != d_) throw ValidationError("coordinate count does not match dimension");
    CellIndex idx = 0;
    for (std::uint32_t j = 0; j < d_; ++j) {
        if (coords[j] >= n_) throw ValidationError("coordinate out of range");
        idx = idx * n_ + coords[j];
    }
    return idx;
}

std::uint64_t dist_linf(std::span<const std::uint32_t> c1, std::span<const std::uint32_t> c2) {
    std::uint64_t m = 0;
    for (std::size_t j = 0; j < c1.size(); ++j) {
        const std::uint64_t dd = c1[j] > c2[j] ? c1[j] - c2[j] : c2[j] - c1[j];
        if (dd > m) m = dd;
    }
    return m;
}

std::uint64_t dist_l1(std::span<const std::uint32_t> c1, std::span<const std::uint32_t> c2) {
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < c1.size(); ++j)
        sum += c1[j] > c2[j] ? c1[j] - c2[j] : c2[j] - c1[j];
    return sum;
}

double dist(const Norm& norm, std::span<const std::uint32_t> c1,
            std::span<const std::uint32_t> c2) {
    if (c1.size() != c2.size() || c1.empty())
        throw ValidationError("dimension mismatch between cells");
    if (norm.infinite()) return static_cast<double>(dist_linf(c1, c2));
    const std::uint32_t p = norm.p();
    if (p == 1) return static_cast<double>(dist_l1(c1, c2));
    constexpr const char* kOverflow = "power sum overflows: p too large for this grid";
    u128 sum = 0;
    for (std::size_t j = 0; j < c1.size(); ++j) {
        const std::uint64_t dd = c1[j] > c2[j] ? c1[j] - c2[j] : c2[j] - c1[j];
        sum = checked_add_u128(sum, checked_pow_u128(dd, p, kOverflow), kOverflow);
    }
    if (p == 2) return std::sqrt(static_cast<double>(sum));
    return std::pow(static_cast<double>(sum), 1.0 / p);
}

Arrangement Arrangement::from_symbol_to_cell(const GridSpec& spec,
                                             std::vector<CellIndex> symbol_to_cell) {
    const std::size_t cells = spec.cell_count();
    if (symbol_to_cell.size() != cells)
        throw ValidationError("placement has " + std::to_string(symbol_to_cell.size()) +
                              " symbols, grid has " + std::to_string(cells) + " cells");
    constexpr Symbol kUnset = static_cast<Symbol>(-1);
    std::vector<Symbol> inv(cells, kUnset);
    for (Symbol s = 0; s < cells; ++s) {
        const CellIndex c = symbol_to_cell[s];
        if (c >= cells)
            throw ValidationError("placement maps symbol " + std::to_string(s) +
                                  " outside the grid");
        if (inv[c] != kUnset)
            throw ValidationError("placement is not a bijection: cell " + std::to_string(c) +
                                  " is assigned twice");
        inv[c] = s;
    }
    return Arrangement(spec, std::move(symbol_to_cell), std::move(inv));
}

Arrangement identity_arrangement(const GridSpec& spec) {
    std::vector<CellIndex> fwd(spec.cell_count());
    std::iota(fwd.begin(), fwd.end(), CellIndex{0});
    std::vector<Symbol> inv(fwd);
    return Arrangement(spec, std::move(fwd), std::move(inv));
}

ArrangementPair::ArrangementPair(Arrangement a_in, Arrangement b_in)
    : a(std::move(a_in)), b(std::move(b_in)) {
    if (a.spec() != b.spec())
        throw ValidationError("arrangement pair requires matching grid specs");
}

}  // namespace gridspread
