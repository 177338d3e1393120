#include <random>

#include "doctest.h"
#include "gridspread/bounds.hpp"
#include "gridspread/metrics.hpp"
#include "gridspread/oracle.hpp"
#include "test_support.hpp"

using namespace gridspread;

namespace {

OracleOptions plain_opts() {
    OracleOptions o;
    o.enumeration = Enumeration::plain;
    return o;
}

}  // namespace

TEST_CASE("oracle refuses instances beyond 9 cells") {
    CHECK_THROWS_AS(exact_optimum(GridSpec(4, 2), Norm::linf()), SizeRefusal);
    CHECK_THROWS_AS(count_solutions(GridSpec(2, 4), Norm::l1(), 2.0), SizeRefusal);
    CHECK_NOTHROW(exact_optimum(GridSpec(3, 2), Norm::linf()));
}

TEST_CASE("exact optimum on the 2x2 grid") {
    const OracleResult inf = exact_optimum(GridSpec(2, 2), Norm::linf());
    CHECK(inf.optimum == 2.0);
    CHECK(inf.optimum == double(upper_bound_linf(2)));
    CHECK(inf.arrangements_enumerated == 24);

    // every pair of distinct 2x2 cells is at L1 distance 1 or 2; the
    // opposite-corner swap cannot help both neighbours of a corner
    const OracleResult l1 = exact_optimum(GridSpec(2, 2), Norm::l1());
    CHECK(l1.optimum == 2.0);
    CHECK(l1.optimum >= 2.0);
    CHECK(l1.optimum <= double(upper_bound(2, 2, Norm::l1())));
}

TEST_CASE("exact optima on the 3x3 grid") {
    const OracleResult inf = exact_optimum(GridSpec(3, 2), Norm::linf());
    // the symbol at the B-center is within L_inf 1 of everything, and some
    // A-neighbour of its A-cell pins the minimum at 2
    CHECK(inf.optimum == 2.0);
    CHECK(inf.optimum <= double(upper_bound_linf(3)));
    CHECK(inf.optimum >= double(lower_bound(3)));
    CHECK(inf.arrangements_enumerated == 362880);

    const OracleResult l1 = exact_optimum(GridSpec(3, 2), Norm::l1());
    CHECK(l1.optimum == 3.0);
    CHECK(min_combined_naive(l1.best_pair, Norm::l1()).min_combined == 3.0);
}

TEST_CASE("the best pair is a valid pair attaining the optimum") {
    const OracleResult r = exact_optimum(GridSpec(3, 2), Norm::linf());
    CHECK(r.best_pair.spec().cell_count() == 9);
    CHECK(min_combined_naive(r.best_pair, Norm::linf()).min_combined == r.optimum);
}

TEST_CASE("solution counts") {
    CHECK(count_solutions(GridSpec(3, 2), Norm::l1(), 3.0) == 840);
    // threshold 0 admits every arrangement
    CHECK(count_solutions(GridSpec(2, 2), Norm::linf(), 0.0) == 24);
    CHECK(count_solutions(GridSpec(3, 2), Norm::linf(), 0.0) == 362880);
    // every 2x2 pair has min combined L_inf exactly 2
    CHECK(count_solutions(GridSpec(2, 2), Norm::linf(), 2.0) == 24);
    CHECK(count_solutions(GridSpec(2, 2), Norm::linf(), 2.5) == 0);
}

TEST_CASE("pruned enumeration matches plain enumeration") {
    for (const Norm& norm : {Norm::l1(), Norm::l2(), Norm::linf()}) {
        const OracleResult plain2 = exact_optimum(GridSpec(2, 2), norm, plain_opts());
        const OracleResult pruned2 = exact_optimum(GridSpec(2, 2), norm);
        CHECK(plain2.optimum == pruned2.optimum);
        CHECK(plain2.best_pair == pruned2.best_pair);
        CHECK(plain2.arrangements_enumerated == 24);
        CHECK(pruned2.arrangements_enumerated == 24);
    }
    const OracleResult plain3 = exact_optimum(GridSpec(3, 2), Norm::l1(), plain_opts());
    const OracleResult pruned3 = exact_optimum(GridSpec(3, 2), Norm::l1());
    CHECK(plain3.optimum == pruned3.optimum);
    CHECK(plain3.best_pair == pruned3.best_pair);

    CHECK(count_solutions(GridSpec(3, 2), Norm::l1(), 3.0, plain_opts()) == 840);
    CHECK(count_solutions(GridSpec(3, 2), Norm::linf(), 2.0) ==
          count_solutions(GridSpec(3, 2), Norm::linf(), 2.0, plain_opts()));
}

TEST_CASE("counts are invariant under the fixed arrangement A") {
    std::mt19937_64 rng(2024);
    {
        const GridSpec spec(2, 2);
        const std::uint64_t base = count_solutions(spec, Norm::l1(), 3.0);
        for (int iter = 0; iter < 3; ++iter) {
            const Arrangement a = testing::random_arrangement(spec, rng);
            OracleOptions opts;
            opts.fixed_a = &a;
            CHECK(count_solutions(spec, Norm::l1(), 3.0, opts) == base);
        }
    }
    {
        const GridSpec spec(3, 2);
        for (int iter = 0; iter < 3; ++iter) {
            const Arrangement a = testing::random_arrangement(spec, rng);
            OracleOptions opts;
            opts.fixed_a = &a;
            CHECK(count_solutions(spec, Norm::l1(), 3.0, opts) == 840);
        }
    }
}

TEST_CASE("oracle results are independent of the worker count") {
    for (const unsigned threads : {2u, 4u}) {
        OracleOptions opts;
        opts.threads = threads;
        const OracleResult base = exact_optimum(GridSpec(3, 2), Norm::linf());
        const OracleResult multi = exact_optimum(GridSpec(3, 2), Norm::linf(), opts);
        CHECK(base.optimum == multi.optimum);
        CHECK(base.best_pair == multi.best_pair);
        CHECK(base.arrangements_enumerated == multi.arrangements_enumerated);
        CHECK(count_solutions(GridSpec(3, 2), Norm::l1(), 3.0, opts) == 840);
    }
}

TEST_CASE("optimum with a count threshold fills the count field") {
    OracleOptions opts;
    opts.count_threshold = 3.0;
    const OracleResult r = exact_optimum(GridSpec(3, 2), Norm::l1(), opts);
    REQUIRE(r.count_at_threshold.has_value());
    CHECK(*r.count_at_threshold == 840);
}

TEST_CASE("oracle optima stay inside the bound envelope") {
    for (const Norm& norm : {Norm::l1(), Norm::l2(), Norm::linf()}) {
        for (const std::uint64_t n : {2ull, 3ull}) {
            const OracleResult r = exact_optimum(GridSpec(n, 2), norm);
            CHECK(r.optimum >= double(lower_bound(n)) - kDistTolerance);
            CHECK(r.optimum <= upper_bound(n, 2, norm) + kDistTolerance);
        }
    }
}
