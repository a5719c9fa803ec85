#include <catch_amalgamated.hpp>

#include "simplexforge/lp.hpp"
#include "simplexforge/rng.hpp"

using namespace simplexforge;

TEST_CASE("known optimum") {
    // min -x1 - 2 x2  s.t.  x1 + x2 + s1 = 3, x2 + s2 = 2, all >= 0.
    RationalMatrix a = {{rat(1), rat(1), rat(1), rat(0)}, {rat(0), rat(1), rat(0), rat(1)}};
    auto sol = lp::solve(a, {rat(3), rat(2)}, {rat(-1), rat(-2), rat(0), rat(0)});
    REQUIRE(sol.optimal());
    CHECK(sol.objective == rat(-5));
    CHECK(sol.x[0] == rat(1));
    CHECK(sol.x[1] == rat(2));
}

TEST_CASE("infeasible system detected") {
    // x1 = 1 and x1 = 2 cannot both hold.
    RationalMatrix a = {{rat(1)}, {rat(1)}};
    auto sol = lp::solve(a, {rat(1), rat(2)}, {rat(0)});
    CHECK(sol.status == lp::Status::Infeasible);
}

TEST_CASE("unbounded objective detected") {
    // min -x1 with x1 - x2 = 0: both can grow without bound.
    RationalMatrix a = {{rat(1), rat(-1)}};
    auto sol = lp::solve(a, {rat(0)}, {rat(-1), rat(0)});
    CHECK(sol.status == lp::Status::Unbounded);
}

TEST_CASE("negative right-hand sides are normalized") {
    RationalMatrix a = {{rat(-1), rat(0)}, {rat(0), rat(1)}};
    auto sol = lp::solve(a, {rat(-2), rat(1)}, {rat(1), rat(1)});
    REQUIRE(sol.optimal());
    CHECK(sol.x[0] == rat(2));
    CHECK(sol.x[1] == rat(1));
}

TEST_CASE("redundant constraints survive phase one") {
    RationalMatrix a = {{rat(1), rat(1)}, {rat(2), rat(2)}};
    auto sol = lp::solve(a, {rat(1), rat(2)}, {rat(1), rat(0)});
    REQUIRE(sol.optimal());
    CHECK(sol.objective == rat(0));
}

TEST_CASE("degenerate cycling-prone instances terminate") {
    // Classic Beale-style degeneracy, equality form with slacks.
    RationalMatrix a = {
        {rat(1, 4), rat(-60), rat(-1, 25), rat(9), rat(1), rat(0), rat(0)},
        {rat(1, 2), rat(-90), rat(-1, 50), rat(3), rat(0), rat(1), rat(0)},
        {rat(0), rat(0), rat(1), rat(0), rat(0), rat(0), rat(1)},
    };
    std::vector<Rational> b = {rat(0), rat(0), rat(1)};
    std::vector<Rational> c = {rat(-3, 4), rat(150), rat(-1, 50), rat(6), rat(0), rat(0), rat(0)};
    auto sol = lp::solve(a, b, c);
    REQUIRE(sol.optimal());
    CHECK(sol.objective == rat(-1, 20));
}

TEST_CASE("feasibility oracle agrees with random convex combinations") {
    // Exhaustive cross-check on seeded instances: a point built as a convex
    // combination of generators must be feasible for the hull system.
    Rng rng(42);
    for (int t = 0; t < 25; ++t) {
        std::size_t dim = 1 + rng.below(3), n = 1 + rng.below(4);
        RationalMatrix gens(n, RationalRow(dim));
        for (auto& g : gens)
            for (auto& v : g) v = rng.rational01();
        auto weights = rng.simplex_weights(n);

        RationalMatrix a(dim + 1, RationalRow(n));
        std::vector<Rational> b(dim + 1, Rational(0));
        for (std::size_t t2 = 0; t2 < dim; ++t2) {
            for (std::size_t j = 0; j < n; ++j) {
                a[t2][j] = gens[j][t2];
                b[t2] += weights[j] * gens[j][t2];
            }
        }
        for (std::size_t j = 0; j < n; ++j) a[dim][j] = 1;
        b[dim] = 1;
        CHECK(lp::feasible(a, b));
    }
}
