#include "gridspread/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "gridspread/intmath.hpp"

namespace gridspread {

namespace {

enum class Kind { linf, l1, p2, pgen };

Kind classify(const Norm& norm) {
    if (norm.infinite()) return Kind::linf;
    switch (norm.p()) {
        case 1: return Kind::l1;
        case 2: return Kind::p2;
        default: return Kind::pgen;
    }
}

// Coordinates of every symbol's cell, flattened for tight scan loops.
struct SymbolCoords {
    std::vector<std::uint32_t> flat;
    std::uint32_t d = 0;
    const std::uint32_t* of(Symbol s) const { return flat.data() + std::size_t(s) * d; }
};

SymbolCoords coords_by_symbol(const Arrangement& ar) {
    const std::uint32_t n = ar.spec().n();
    const std::uint32_t d = ar.spec().d();
    SymbolCoords out;
    out.d = d;
    out.flat.resize(ar.size() * std::size_t(d));
    for (Symbol s = 0; s < ar.size(); ++s) {
        CellIndex idx = ar.cell_of(s);
        std::uint32_t* c = out.flat.data() + std::size_t(s) * d;
        for (std::uint32_t j = d; j-- > 0;) {
            c[j] = static_cast<std::uint32_t>(idx % n);
            idx /= n;
        }
    }
    return out;
}

inline std::uint64_t k_linf(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t d) {
    std::uint64_t m = 0;
    for (std::uint32_t j = 0; j < d; ++j) {
        const std::uint64_t dd = a[j] > b[j] ? a[j] - b[j] : b[j] - a[j];
        if (dd > m) m = dd;
    }
    return m;
}

inline std::uint64_t k_l1(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t d) {
    std::uint64_t sum = 0;
    for (std::uint32_t j = 0; j < d; ++j) sum += a[j] > b[j] ? a[j] - b[j] : b[j] - a[j];
    return sum;
}

inline std::uint64_t k_sq(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t d) {
    std::uint64_t sum = 0;
    for (std::uint32_t j = 0; j < d; ++j) {
        const std::uint64_t dd = a[j] > b[j] ? a[j] - b[j] : b[j] - a[j];
        sum += dd * dd;
    }
    return sum;
}

inline u128 k_pow(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t d,
                  std::uint32_t p) {
    u128 sum = 0;
    for (std::uint32_t j = 0; j < d; ++j) {
        std::uint64_t dd = a[j] > b[j] ? a[j] - b[j] : b[j] - a[j];
        u128 term = 1;
        for (std::uint32_t e = 0; e < p; ++e) term *= dd;
        sum += term;
    }
    return sum;
}

struct PairVal {
    double value;
    std::uint64_t exact;  // meaningful for Kind::linf and Kind::l1 only
};

template <Kind K>
inline PairVal combined(const SymbolCoords& ca, const SymbolCoords& cb, Symbol s, Symbol t,
                        std::uint32_t p) {
    const std::uint32_t* as = ca.of(s);
    const std::uint32_t* at = ca.of(t);
    const std::uint32_t* bs = cb.of(s);
    const std::uint32_t* bt = cb.of(t);
    const std::uint32_t d = ca.d;
    if constexpr (K == Kind::linf) {
        const std::uint64_t e = k_linf(as, at, d) + k_linf(bs, bt, d);
        return {static_cast<double>(e), e};
    } else if constexpr (K == Kind::l1) {
        const std::uint64_t e = k_l1(as, at, d) + k_l1(bs, bt, d);
        return {static_cast<double>(e), e};
    } else if constexpr (K == Kind::p2) {
        return {std::sqrt(static_cast<double>(k_sq(as, at, d))) +
                    std::sqrt(static_cast<double>(k_sq(bs, bt, d))),
                0};
    } else {
        const double inv_p = 1.0 / p;
        return {std::pow(static_cast<double>(k_pow(as, at, d, p)), inv_p) +
                    std::pow(static_cast<double>(k_pow(bs, bt, d, p)), inv_p),
                0};
    }
}

// Running best with the witness tie-break: strictly smaller value wins; a
// value tie (exact, or within kDistTolerance for fractional norms) goes to
// the lexicographically smaller pair.
struct Best {
    bool valid = false;
    double value = 0.0;
    std::uint64_t exact = 0;
    Symbol s = 0;
    Symbol t = 0;

    template <Kind K>
    bool offer(const PairVal& v, Symbol cs, Symbol ct) {
        if (!valid) {
            take(v, cs, ct);
            return true;
        }
        if constexpr (K == Kind::linf || K == Kind::l1) {
            if (v.exact < exact || (v.exact == exact && lex_less(cs, ct))) {
                take(v, cs, ct);
                return true;
            }
        } else {
            if (v.value < value - kDistTolerance ||
                (v.value <= value + kDistTolerance && lex_less(cs, ct))) {
                take(v, cs, ct);
                return true;
            }
        }
        return false;
    }

    template <Kind K>
    void merge(const Best& o) {
        if (o.valid) offer<K>(PairVal{o.value, o.exact}, o.s, o.t);
    }

private:
    bool lex_less(Symbol cs, Symbol ct) const { return cs < s || (cs == s && ct < t); }
    void take(const PairVal& v, Symbol cs, Symbol ct) {
        valid = true;
        value = v.value;
        exact = v.exact;
        s = cs;
        t = ct;
    }
};

// The pruning radius in L_inf. Any pair with combined distance <= the
// current best has A-grid L_inf distance <= that value, since L_inf <= L_p
// and the B-grid term is non-negative; fractional norms get one extra ring
// so tie candidates within the tolerance are never missed.
template <Kind K>
inline std::uint64_t radius_of(const Best& b) {
    if constexpr (K == Kind::linf || K == Kind::l1)
        return b.exact;
    else
        return static_cast<std::uint64_t>(b.value) + 1;
}

void check_power_sum_range(const GridSpec& spec, const Norm& norm) {
    if (norm.integral() || norm.p() == 2) return;
    constexpr const char* kOverflow = "power sum overflows: p too large for this grid";
    const u128 term = checked_pow_u128(spec.n() - 1, norm.p(), kOverflow);
    u128 total = 0;
    for (std::uint32_t j = 0; j < spec.d(); ++j)
        total = checked_add_u128(total, term, kOverflow);
}

unsigned clamp_threads(unsigned threads, std::size_t work_items) {
    if (threads < 1) threads = 1;
    if (threads > 64) threads = 64;
    if (threads > work_items) threads = static_cast<unsigned>(work_items);
    return threads;
}

template <typename Worker>
void run_partitioned(unsigned threads, Worker worker) {
    if (threads <= 1) {
        worker(0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid);
    for (auto& th : pool) th.join();
}

template <Kind K>
VerifyReport naive_scan(const ArrangementPair& pair, std::uint32_t p, unsigned threads) {
    const std::size_t count = pair.a.size();
    const SymbolCoords ca = coords_by_symbol(pair.a);
    const SymbolCoords cb = coords_by_symbol(pair.b);

    threads = clamp_threads(threads, count);
    std::vector<Best> bests(threads);
    std::vector<std::uint64_t> examined(threads, 0);

    run_partitioned(threads, [&](unsigned tid) {
        Best local;
        std::uint64_t seen = 0;
        for (Symbol s = tid; s < count; s += threads) {
            for (Symbol t = s + 1; t < count; ++t) {
                local.offer<K>(combined<K>(ca, cb, s, t, p), s, t);
                ++seen;
            }
        }
        bests[tid] = local;
        examined[tid] = seen;
    });

    Best total = bests[0];
    std::uint64_t pairs = examined[0];
    for (unsigned tid = 1; tid < threads; ++tid) {
        total.merge<K>(bests[tid]);
        pairs += examined[tid];
    }
    return {total.value, {total.s, total.t}, pairs, Algorithm::naive};
}

template <Kind K>
VerifyReport pruned_scan(const ArrangementPair& pair, std::uint32_t p, unsigned threads) {
    const GridSpec& spec = pair.spec();
    const std::uint32_t n = spec.n();
    const std::uint32_t d = spec.d();
    const std::size_t count = pair.a.size();
    const SymbolCoords ca = coords_by_symbol(pair.a);
    const SymbolCoords cb = coords_by_symbol(pair.b);
    const std::span<const Symbol> at_cell = pair.a.cell_to_symbol();

    std::vector<std::size_t> stride(d);
    stride[d - 1] = 1;
    for (std::uint32_t j = d - 1; j-- > 0;) stride[j] = stride[j + 1] * n;

    // cheap initial bound: the symbols in the first two cells of A
    Best init;
    {
        Symbol s0 = at_cell[0];
        Symbol s1 = at_cell[1];
        if (s0 > s1) std::swap(s0, s1);
        init.offer<K>(combined<K>(ca, cb, s0, s1, p), s0, s1);
    }

    threads = clamp_threads(threads, count);
    std::vector<Best> bests(threads);
    std::vector<std::uint64_t> examined(threads, 0);

    run_partitioned(threads, [&](unsigned tid) {
        Best local = init;
        std::uint64_t seen = 0;
        std::vector<std::uint32_t> lo(d), hi(d), cur(d);
        for (Symbol s = tid; s < count; s += threads) {
            const std::uint64_t r = radius_of<K>(local);
            const std::uint32_t* pc = ca.of(s);
            for (std::uint32_t j = 0; j < d; ++j) {
                lo[j] = pc[j] > r ? pc[j] - static_cast<std::uint32_t>(r) : 0;
                const std::uint64_t top = std::uint64_t(pc[j]) + r;
                hi[j] = top >= n ? n - 1 : static_cast<std::uint32_t>(top);
            }
            cur = lo;
            while (true) {
                std::size_t base = 0;
                for (std::uint32_t j = 0; j + 1 < d; ++j) base += std::size_t(cur[j]) * stride[j];
                for (std::size_t x = lo[d - 1]; x <= hi[d - 1]; ++x) {
                    const Symbol t = at_cell[base + x];
                    if (t <= s) continue;
                    local.offer<K>(combined<K>(ca, cb, s, t, p), s, t);
                    ++seen;
                }
                std::uint32_t j = d - 1;
                while (j-- > 0) {
                    if (++cur[j] <= hi[j]) break;
                    cur[j] = lo[j];
                }
                if (j == static_cast<std::uint32_t>(-1)) break;
            }
        }
        bests[tid] = local;
        examined[tid] = seen;
    });

    Best total = bests[0];
    std::uint64_t pairs = 1;  // the initial candidate
    for (unsigned tid = 0; tid < threads; ++tid) pairs += examined[tid];
    for (unsigned tid = 1; tid < threads; ++tid) total.merge<K>(bests[tid]);
    return {total.value, {total.s, total.t}, pairs, Algorithm::pruned};
}

template <Kind K>
VerifyReport dispatch(const ArrangementPair& pair, std::uint32_t p, unsigned threads,
                      Algorithm algo) {
    return algo == Algorithm::naive ? naive_scan<K>(pair, p, threads)
                                    : pruned_scan<K>(pair, p, threads);
}

VerifyReport min_combined(const ArrangementPair& pair, const Norm& norm, unsigned threads,
                          Algorithm algo) {
    if (pair.a.size() < 2) throw ValidationError("minimum combined distance needs >= 2 symbols");
    check_power_sum_range(pair.spec(), norm);
    const std::uint32_t p = norm.infinite() ? 0 : norm.p();
    switch (classify(norm)) {
        case Kind::linf: return dispatch<Kind::linf>(pair, p, threads, algo);
        case Kind::l1: return dispatch<Kind::l1>(pair, p, threads, algo);
        case Kind::p2: return dispatch<Kind::p2>(pair, p, threads, algo);
        case Kind::pgen: return dispatch<Kind::pgen>(pair, p, threads, algo);
    }
    throw InvariantViolation("unreachable norm kind");
}

}  // namespace

double combined_distance(const ArrangementPair& pair, const Norm& norm, Symbol s, Symbol t) {
    const std::size_t count = pair.a.size();
    if (s >= count || t >= count)
        throw ValidationError("unknown symbol id " + std::to_string(s >= count ? s : t));
    if (s == t) throw ValidationError("combined distance requires two distinct symbols");
    const Cell as = pair.a.coords_of(s);
    const Cell at = pair.a.coords_of(t);
    const Cell bs = pair.b.coords_of(s);
    const Cell bt = pair.b.coords_of(t);
    return dist(norm, as, at) + dist(norm, bs, bt);
}

VerifyReport min_combined_naive(const ArrangementPair& pair, const Norm& norm, unsigned threads) {
    return min_combined(pair, norm, threads, Algorithm::naive);
}

VerifyReport min_combined_pruned(const ArrangementPair& pair, const Norm& norm, unsigned threads) {
    return min_combined(pair, norm, threads, Algorithm::pruned);
}

ClosestPairResult closest_pair_linf(const Arrangement& where, std::span<const Symbol> symbols) {
    if (symbols.size() < 2) throw ValidationError("closest pair needs at least two symbols");
    const GridSpec& spec = where.spec();
    const std::uint32_t n = spec.n();
    const std::uint32_t d = spec.d();

    struct Point {
        CellIndex idx;
        Cell coords;
        Symbol sym;
    };
    std::vector<Point> pts;
    pts.reserve(symbols.size());
    for (const Symbol s : symbols) {
        if (s >= where.size()) throw ValidationError("unknown symbol id " + std::to_string(s));
        pts.push_back({where.cell_of(s), where.coords_of(s), s});
    }
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.idx < b.idx; });

    std::vector<std::uint8_t> marked(spec.cell_count(), 0);
    for (const Point& q : pts) marked[q.idx] = 1;

    // initial bound from index-consecutive cells
    std::uint64_t best = dist_linf(pts[0].coords, pts[1].coords);
    for (std::size_t i = 1; i + 1 < pts.size(); ++i)
        best = std::min(best, dist_linf(pts[i].coords, pts[i + 1].coords));

    std::vector<std::size_t> stride(d);
    stride[d - 1] = 1;
    for (std::uint32_t j = d - 1; j-- > 0;) stride[j] = stride[j + 1] * n;

    // scans the clipped box of the given radius around p, reporting every
    // marked cell with a larger index
    auto for_marked_in_box = [&](const Point& p, std::uint64_t r, auto&& fn) {
        std::vector<std::uint32_t> lo(d), hi(d), cur(d);
        for (std::uint32_t j = 0; j < d; ++j) {
            lo[j] = p.coords[j] > r ? p.coords[j] - static_cast<std::uint32_t>(r) : 0;
            const std::uint64_t top = std::uint64_t(p.coords[j]) + r;
            hi[j] = top >= n ? n - 1 : static_cast<std::uint32_t>(top);
        }
        cur = lo;
        while (true) {
            std::size_t base = 0;
            for (std::uint32_t j = 0; j + 1 < d; ++j) base += std::size_t(cur[j]) * stride[j];
            for (std::size_t x = lo[d - 1]; x <= hi[d - 1]; ++x) {
                const CellIndex idx = base + x;
                if (idx > p.idx && marked[idx]) fn(idx);
            }
            std::uint32_t j = d - 1;
            while (j-- > 0) {
                if (++cur[j] <= hi[j]) break;
                cur[j] = lo[j];
            }
            if (j == static_cast<std::uint32_t>(-1)) break;
        }
    };

    // phase 1: tighten the minimum distance
    for (const Point& p : pts) {
        if (best <= 1) break;
        for_marked_in_box(p, best - 1, [&](CellIndex idx) {
            best = std::min(best, dist_linf(p.coords, spec.cell_at(idx)));
        });
    }

    // phase 2: lexicographically smallest witness among pairs at the minimum
    Symbol ws = 0, wt = 0;
    bool found = false;
    for (const Point& p : pts) {
        for_marked_in_box(p, best, [&](CellIndex idx) {
            if (dist_linf(p.coords, spec.cell_at(idx)) != best) return;
            Symbol cs = p.sym;
            Symbol ct = where.symbol_at(idx);
            if (cs > ct) std::swap(cs, ct);
            if (!found || cs < ws || (cs == ws && ct < wt)) {
                ws = cs;
                wt = ct;
                found = true;
            }
        });
    }
    if (!found) throw InvariantViolation("closest pair search lost its witness");
    return {best, ws, wt};
}

}  // namespace gridspread
