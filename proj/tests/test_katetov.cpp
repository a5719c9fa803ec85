#include <catch_amalgamated.hpp>

#include "simplexforge/katetov.hpp"
#include "simplexforge/testgen.hpp"

using namespace simplexforge;

namespace {
FiniteMetricSpace two_points(const Rational& d) {
    return validate_metric({"a", "b"}, {{rat(0), d}, {d, rat(0)}});
}
} // namespace

TEST_CASE("katetov predicate") {
    auto x = two_points(rat(1, 2));
    CHECK(is_katetov(x, {"f", {rat(1, 2), rat(1, 2)}, false}));
    CHECK_FALSE(is_katetov(x, {"g", {rat(0), rat(1)}, false}));  // |0-1| > 1/2

    // A distance function is Katetov by the triangle inequality.
    auto tri = validate_metric({"a", "b", "c"}, {{rat(0), rat(1, 2), rat(3, 4)},
                                                 {rat(1, 2), rat(0), rat(1, 4)},
                                                 {rat(3, 4), rat(1, 4), rat(0)}});
    for (std::size_t z = 0; z < 3; ++z)
        CHECK(is_katetov(tri, {"d", distance_function(tri, z).values, false}));
}

TEST_CASE("values outside the unit interval fail the predicate") {
    auto x = two_points(rat(1, 2));
    CHECK_FALSE(is_katetov(x, {"f", {rat(3, 2), rat(3, 2)}, false}));
    CHECK_THROWS_AS(make_katetov(x, {rat(3, 2), rat(3, 2)}), Error);
}

TEST_CASE("convex combination of katetov functions") {
    auto x = two_points(rat(1, 2));
    KatetovFunction f = make_katetov(x, {rat(1, 2), rat(1, 2)});
    KatetovFunction g = make_katetov(x, {rat(1, 2), rat(1)});

    CHECK(convex_combine_katetov(x, f, g, rat(1)).values == f.values);
    CHECK(convex_combine_katetov(x, f, g, rat(0)).values == g.values);

    KatetovFunction h = convex_combine_katetov(x, f, g, rat(1, 2));
    CHECK(h.values == std::vector<Rational>{rat(1, 2), rat(3, 4)});
    CHECK(katetov_inequalities_hold(x, h.values));
}

TEST_CASE("katetov extension by one function") {
    auto x = two_points(rat(1, 2));
    KatetovFunction f = make_katetov(x, {rat(1, 2), rat(1, 2)});
    FiniteMetricSpace ext = katetov_extend(x, {f}, {"n"});
    REQUIRE(ext.size() == 3);
    CHECK(ext.dist("n", "a") == rat(1, 2));
    CHECK(ext.dist("n", "b") == rat(1, 2));
    CHECK(metric_violations(ext.labels, ext.d).empty());
}

TEST_CASE("extension by an existing distance function is rejected") {
    auto x = two_points(rat(1, 2));
    // The distance profile of point a vanishes at a, so the new point would
    // sit at distance 0 from it.
    KatetovFunction f{x.d[0]};
    CHECK_THROWS_AS(katetov_extend(x, {f}, {"dup"}), Error);
}

TEST_CASE("sup metric between new points") {
    auto x = two_points(rat(1, 2));
    KatetovFunction f = make_katetov(x, {rat(1, 2), rat(1, 2)});
    KatetovFunction g = make_katetov(x, {rat(1, 2), rat(1)});
    FiniteMetricSpace ext = katetov_extend(x, {f, g}, {"nf", "ng"});
    CHECK(ext.dist("nf", "ng") == rat(1, 2));  // max(0, 1/2)
}

TEST_CASE("coinciding new points are rejected") {
    auto x = two_points(rat(1, 2));
    KatetovFunction f = make_katetov(x, {rat(1, 2), rat(1, 2)});
    CHECK_THROWS_AS(katetov_extend(x, {f, f}, {"n1", "n2"}), Error);
}

TEST_CASE("random katetov functions satisfy the inequalities") {
    Rng rng(13);
    for (int t = 0; t < 50; ++t) {
        auto x = testgen::random_space(rng, 2 + rng.below(4));
        KatetovFunction f = testgen::random_katetov(rng, x);
        CHECK(katetov_inequalities_hold(x, f.values));
        FiniteMetricSpace ext = katetov_extend(x, {f}, {"n"});
        CHECK(metric_violations(ext.labels, ext.d).empty());
    }
}
