#include "gridspread/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "gridspread/metrics.hpp"

namespace gridspread {

namespace {

constexpr std::size_t kMaxCells = 9;  // 9! = 362880 arrangements

struct Tables {
    std::size_t cells = 0;
    std::vector<double> dist_a;  // symbol-symbol distance in the fixed A
    std::vector<double> dist_b;  // cell-cell distance in B
    std::array<std::uint64_t, kMaxCells + 1> fact{};
};

Tables build_tables(const GridSpec& spec, const Norm& norm, const Arrangement& a) {
    const std::size_t cells = spec.cell_count();
    Tables t;
    t.cells = cells;
    t.dist_a.assign(cells * cells, 0.0);
    t.dist_b.assign(cells * cells, 0.0);
    for (std::size_t i = 0; i < cells; ++i) {
        const Cell ca = a.coords_of(i);
        const Cell ci = spec.cell_at(i);
        for (std::size_t j = 0; j < cells; ++j) {
            t.dist_a[i * cells + j] = dist(norm, ca, a.coords_of(j));
            t.dist_b[i * cells + j] = dist(norm, ci, spec.cell_at(j));
        }
    }
    t.fact[0] = 1;
    for (std::size_t i = 1; i <= kMaxCells; ++i) t.fact[i] = t.fact[i - 1] * i;
    return t;
}

struct BranchOutcome {
    double best = -1.0;
    std::array<std::uint8_t, kMaxCells> perm{};
    std::uint64_t count = 0;
    std::uint64_t covered = 0;
};

// Places symbols 0..N-1 into B-cells in increasing symbol order, choosing
// cells in increasing index order, which enumerates the symbol->cell maps
// lexicographically. `goal` is either the running best (optimum mode) or
// the fixed threshold (count mode).
struct Search {
    const Tables& t;
    bool prune;
    bool counting;
    double threshold = 0.0;

    std::array<std::uint8_t, kMaxCells> perm{};
    std::uint16_t used = 0;
    BranchOutcome out;

    void run(std::size_t depth, double min_so_far) {
        const std::size_t cells = t.cells;
        if (depth == cells) {
            out.covered += 1;
            if (counting) {
                if (min_so_far >= threshold - kDistTolerance) ++out.count;
            } else if (min_so_far > out.best) {
                out.best = min_so_far;
                out.perm = perm;
            }
            return;
        }
        for (std::size_t c = 0; c < cells; ++c) {
            if (used & (std::uint16_t(1) << c)) continue;
            double next_min = min_so_far;
            for (std::size_t j = 0; j < depth; ++j) {
                const double v =
                    t.dist_a[depth * cells + j] + t.dist_b[c * cells + perm[j]];
                if (v < next_min) next_min = v;
            }
            if (prune) {
                const bool dead = counting ? next_min < threshold - kDistTolerance
                                           : next_min <= out.best;
                if (dead) {
                    out.covered += t.fact[cells - depth - 1];
                    continue;
                }
            }
            perm[depth] = static_cast<std::uint8_t>(c);
            used |= std::uint16_t(1) << c;
            run(depth + 1, next_min);
            used &= static_cast<std::uint16_t>(~(std::uint16_t(1) << c));
        }
    }
};

// Runs one search per first-cell choice so results and coverage accounting
// are independent of how branches are scheduled across workers.
std::vector<BranchOutcome> run_branches(const Tables& t, bool prune, bool counting,
                                        double threshold, unsigned threads) {
    const std::size_t cells = t.cells;
    std::vector<BranchOutcome> outcomes(cells);
    auto run_branch = [&](std::size_t c) {
        Search s{t, prune, counting, threshold, {}, 0, {}};
        s.perm[0] = static_cast<std::uint8_t>(c);
        s.used = std::uint16_t(1) << c;
        s.run(1, std::numeric_limits<double>::infinity());
        outcomes[c] = s.out;
    };
    if (threads <= 1) {
        for (std::size_t c = 0; c < cells; ++c) run_branch(c);
    } else {
        if (threads > cells) threads = static_cast<unsigned>(cells);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned tid = 0; tid < threads; ++tid)
            pool.emplace_back([&, tid] {
                for (std::size_t c = tid; c < cells; c += threads) run_branch(c);
            });
        for (auto& th : pool) th.join();
    }
    return outcomes;
}

struct Prepared {
    GridSpec spec;
    Arrangement a;
    Tables tables;
};

Prepared prepare(const GridSpec& spec, const Norm& norm, const OracleOptions& opts) {
    const std::size_t cells = spec.cell_count();
    if (cells > kMaxCells)
        throw SizeRefusal("exact enumeration is limited to " + std::to_string(kMaxCells) +
                          " cells (9! = 362880 arrangements); this instance has " +
                          std::to_string(cells));
    Arrangement a = opts.fixed_a ? *opts.fixed_a : identity_arrangement(spec);
    if (a.spec() != spec) throw ValidationError("fixed arrangement does not match the grid spec");
    Tables t = build_tables(spec, norm, a);
    return {spec, std::move(a), std::move(t)};
}

}  // namespace

OracleResult exact_optimum(const GridSpec& spec, const Norm& norm, const OracleOptions& opts) {
    Prepared prep = prepare(spec, norm, opts);
    const std::size_t cells = prep.tables.cells;
    const bool prune = opts.enumeration == Enumeration::pruned;

    const std::vector<BranchOutcome> outcomes =
        run_branches(prep.tables, prune, /*counting=*/false, 0.0, opts.threads);

    double best = -1.0;
    const BranchOutcome* winner = nullptr;
    std::uint64_t covered = 0;
    for (const BranchOutcome& o : outcomes) {
        covered += o.covered;
        if (o.best > best) {
            best = o.best;
            winner = &o;
        }
    }
    if (winner == nullptr) throw InvariantViolation("enumeration produced no arrangement");

    std::vector<CellIndex> fwd(cells);
    for (std::size_t s = 0; s < cells; ++s) fwd[s] = winner->perm[s];
    ArrangementPair best_pair(prep.a, Arrangement::from_symbol_to_cell(spec, std::move(fwd)));

    std::optional<std::uint64_t> count;
    if (opts.count_threshold) count = count_solutions(spec, norm, *opts.count_threshold, opts);
    return {best, std::move(best_pair), count, covered};
}

std::uint64_t count_solutions(const GridSpec& spec, const Norm& norm, double threshold,
                              const OracleOptions& opts) {
    Prepared prep = prepare(spec, norm, opts);
    const bool prune = opts.enumeration == Enumeration::pruned;
    const std::vector<BranchOutcome> outcomes =
        run_branches(prep.tables, prune, /*counting=*/true, threshold, opts.threads);
    std::uint64_t count = 0;
    for (const BranchOutcome& o : outcomes) count += o.count;
    return count;
}

}  // namespace gridspread
