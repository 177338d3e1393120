#include <cmath>
#include <random>

#include "doctest.h"
#include "gridspread/core.hpp"
#include "test_support.hpp"

using namespace gridspread;

namespace {

double lp(const Norm& norm, const Cell& a, const Cell& b) { return dist(norm, a, b); }

}  // namespace

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS(GridSpec(1, 2), ValidationError);
    CHECK_THROWS_AS(GridSpec(0, 2), ValidationError);
    CHECK_THROWS_AS(GridSpec(4, 1), ValidationError);
    CHECK_THROWS_AS(GridSpec(4, 0), ValidationError);
    // n^d overflows the native unsigned integer
    CHECK_THROWS_AS(GridSpec(1u << 16, 5), ValidationError);
    CHECK_THROWS_AS(GridSpec(3, 42), ValidationError);

    const GridSpec spec(3, 2);
    CHECK(spec.cell_count() == 9);
    CHECK(GridSpec(2, 3).cell_count() == 8);
}

TEST_CASE("cell indexing round-trip, last axis fastest") {
    const GridSpec spec(3, 2);
    CHECK(spec.cell_at(0) == Cell{0, 0});
    CHECK(spec.cell_at(1) == Cell{0, 1});
    CHECK(spec.cell_at(3) == Cell{1, 0});
    for (CellIndex i = 0; i < spec.cell_count(); ++i) CHECK(spec.index_of(spec.cell_at(i)) == i);
    CHECK_THROWS_AS(spec.cell_at(9), ValidationError);
    CHECK_THROWS_AS(spec.index_of(Cell{0, 3}), ValidationError);
    CHECK_THROWS_AS(spec.index_of(Cell{0, 0, 0}), ValidationError);
}

TEST_CASE("norm parsing") {
    CHECK(Norm::parse("inf") == Norm::linf());
    CHECK(Norm::parse("infinity") == Norm::linf());
    CHECK(Norm::parse("1") == Norm::l1());
    CHECK(Norm::parse("7") == Norm::finite(7));
    CHECK(Norm::linf().str() == "inf");
    CHECK(Norm::finite(3).str() == "3");
    CHECK_THROWS_AS(Norm::parse("0"), ValidationError);
    CHECK_THROWS_AS(Norm::parse("-2"), ValidationError);
    CHECK_THROWS_AS(Norm::parse("two"), ValidationError);
    CHECK_THROWS_AS(Norm::finite(0), ValidationError);
}

TEST_CASE("distance examples") {
    const Cell a{0, 0};
    const Cell b{4, 3};  // displayed (x, y) = (3, 4)
    CHECK(lp(Norm::linf(), a, b) == 4.0);
    CHECK(lp(Norm::l1(), a, b) == 7.0);
    CHECK(lp(Norm::l2(), a, b) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK_THROWS_AS(lp(Norm::l1(), Cell{0, 0}, Cell{0, 0, 0}), ValidationError);
}

TEST_CASE("distance is a metric") {
    std::mt19937_64 rng(7);
    const GridSpec spec(9, 3);
    const Norm norms[] = {Norm::l1(), Norm::l2(), Norm::finite(3), Norm::linf()};
    for (int iter = 0; iter < 300; ++iter) {
        const Cell a = testing::random_cell(spec, rng);
        const Cell b = testing::random_cell(spec, rng);
        const Cell c = testing::random_cell(spec, rng);
        for (const Norm& p : norms) {
            CHECK(lp(p, a, b) == lp(p, b, a));
            CHECK((lp(p, a, b) == 0.0) == (a == b));
            CHECK(lp(p, a, c) <= lp(p, a, b) + lp(p, b, c) + kDistTolerance);
        }
    }
}

TEST_CASE("norm sandwich: linf <= lp <= d^(1/p) * linf") {
    std::mt19937_64 rng(11);
    for (const std::uint32_t d : {2u, 3u, 4u}) {
        const GridSpec spec(17, d);
        for (int iter = 0; iter < 500; ++iter) {
            const Cell a = testing::random_cell(spec, rng);
            const Cell b = testing::random_cell(spec, rng);
            const double inf = lp(Norm::linf(), a, b);
            for (const std::uint32_t p : {1u, 2u, 3u}) {
                const double v = lp(Norm::finite(p), a, b);
                CHECK(v >= inf - kDistTolerance);
                CHECK(v <= std::pow(double(d), 1.0 / p) * inf + kDistTolerance);
            }
        }
    }
}

TEST_CASE("identity arrangement examples") {
    const GridSpec s22(2, 2);
    const Arrangement id22 = identity_arrangement(s22);
    CHECK(id22.coords_of(0) == Cell{0, 0});
    CHECK(id22.coords_of(1) == Cell{0, 1});  // displayed (x, y) = (1, 0)
    CHECK(id22.coords_of(2) == Cell{1, 0});  // displayed (x, y) = (0, 1)
    CHECK(id22.coords_of(3) == Cell{1, 1});

    CHECK(identity_arrangement(GridSpec(3, 2)).coords_of(4) == Cell{1, 1});
    CHECK(identity_arrangement(GridSpec(2, 3)).coords_of(7) == Cell{1, 1, 1});
}

TEST_CASE("non-bijective placements are rejected") {
    const GridSpec spec(2, 2);
    CHECK_THROWS_AS(Arrangement::from_symbol_to_cell(spec, {0, 1, 2}), ValidationError);
    CHECK_THROWS_AS(Arrangement::from_symbol_to_cell(spec, {0, 1, 2, 2}), ValidationError);
    CHECK_THROWS_AS(Arrangement::from_symbol_to_cell(spec, {0, 1, 2, 4}), ValidationError);
    CHECK_NOTHROW(Arrangement::from_symbol_to_cell(spec, {3, 2, 1, 0}));
}

TEST_CASE("arrangement forward and inverse maps stay consistent") {
    std::mt19937_64 rng(3);
    const GridSpec spec(4, 2);
    const Arrangement ar = testing::random_arrangement(spec, rng);
    for (Symbol s = 0; s < ar.size(); ++s) CHECK(ar.symbol_at(ar.cell_of(s)) == s);
}

TEST_CASE("arrangement pair requires matching specs") {
    const Arrangement a = identity_arrangement(GridSpec(2, 2));
    const Arrangement b = identity_arrangement(GridSpec(3, 2));
    CHECK_THROWS_AS(ArrangementPair(a, b), ValidationError);
    CHECK_NOTHROW(ArrangementPair(a, a));
}
