#include <catch_amalgamated.hpp>

#include <algorithm>

#include "simplexforge/cone.hpp"
#include "simplexforge/testgen.hpp"

using namespace simplexforge;

namespace {
RationalPoint pt(std::vector<long> nums, long den = 1) {
    std::vector<Rational> coords;
    for (long n : nums) coords.push_back(rat(n, den));
    return RationalPoint(std::move(coords));
}

VPolytope segment() { return VPolytope(1, {pt({0}), pt({1})}, {"e0", "e1"}); }
} // namespace

TEST_CASE("cone over a segment midpoint") {
    LabeledCone c = cone(segment(), pt({1}, 2), "apex");
    REQUIRE(c.poly.dim == 2);
    REQUIRE(c.poly.size() == 3);
    CHECK(c.poly.vertices[0] == pt({0, 0}));
    CHECK(c.poly.vertices[1] == pt({1, 0}));
    CHECK(c.poly.vertices[2] == RationalPoint({rat(1, 2), rat(1)}));
    CHECK(c.apexes[0].coord == 1);
}

TEST_CASE("cone over a single point and over a vertex") {
    VPolytope point(1, {pt({1}, 2)}, {"p"});
    LabeledCone c = cone(point, pt({1}, 2), "apex");
    CHECK(c.poly.size() == 2);
    CHECK(c.poly.vertices[0] == RationalPoint({rat(1, 2), rat(0)}));
    CHECK(c.poly.vertices[1] == RationalPoint({rat(1, 2), rat(1)}));

    LabeledCone over_vertex = cone(segment(), pt({0}), "apex");
    CHECK(over_vertex.poly.size() == 3);
}

TEST_CASE("cone point must lie in the base hull") {
    VPolytope seg(1, {pt({0}), pt({1}, 2)}, {"a", "b"});
    CHECK_THROWS_AS(cone(seg, pt({1}), "apex"), Error);
}

TEST_CASE("iterated cones append coordinates in order") {
    LabeledCone empty = iterated_cone(segment(), {});
    CHECK(empty.poly.dim == 1);
    CHECK(empty.poly.size() == 2);

    LabeledCone both = iterated_cone(segment(), {{pt({0}), "v1"}, {pt({1}), "v2"}});
    REQUIRE(both.poly.dim == 3);
    REQUIRE(both.poly.size() == 4);
    CHECK(both.apexes[0].coord == 1);
    CHECK(both.apexes[1].coord == 2);
    CHECK(both.poly.vertices[2] == pt({0, 1, 0}));
    CHECK(both.poly.vertices[3] == pt({1, 0, 1}));
}

TEST_CASE("decomposition splits base and apex weights") {
    LabeledCone c = cone(segment(), pt({1}, 2), "apex");

    ConeDecomposition apex_only = decompose(c, c.apex_vertex(0));
    CHECK(apex_only.apex_weights[0] == 1);
    CHECK(recombine(c, apex_only) == c.apex_vertex(0));

    ConeDecomposition base_vertex = decompose(c, pt({1, 0}));
    CHECK(base_vertex.apex_weights[0] == 0);
    CHECK(base_vertex.base_part == pt({1}));

    // y = (1/2, 1/2): base part (1/2), apex weight 1/2, by peeling
    // (y - t s) / (1 - t) with t the cone coordinate.
    ConeDecomposition mixed = decompose(c, RationalPoint({rat(1, 2), rat(1, 2)}));
    CHECK(mixed.apex_weights[0] == rat(1, 2));
    CHECK(mixed.base_part == pt({1}, 2));
    CHECK(recombine(c, mixed) == RationalPoint({rat(1, 2), rat(1, 2)}));

    CHECK_THROWS_AS(decompose(c, pt({1, 1})), Error);
}

TEST_CASE("double cone swap matches the closed form") {
    // alpha = 1/2, beta = 1/2 must give gamma = 1/4, delta = 2/3.
    VPolytope seg = segment();
    RationalPoint s1({rat(1, 4)}), s2({rat(3, 4)});
    LabeledCone c12 = iterated_cone(seg, {{s1, "c(s1)"}, {s2, "c(s2)"}});

    Rational alpha = rat(1, 2), beta = rat(1, 2);
    RationalPoint x({rat(0)});
    RationalPoint y({(1 - beta) * ((1 - alpha) * x[0] + alpha * s1[0]) + beta * s2[0],
                     (1 - beta) * alpha, beta});
    RationalPoint z = double_cone_swap(c12, y);
    Rational gamma = z[2];
    REQUIRE(gamma == rat(1, 4));
    CHECK(z[1] / (1 - gamma) == rat(2, 3));

    // beta = 0: inner-cone points swap apex roles, gamma = alpha, delta = 0.
    RationalPoint inner({(1 - alpha) * x[0] + alpha * s1[0], alpha, rat(0)});
    RationalPoint zi = double_cone_swap(c12, inner);
    CHECK(zi[2] == alpha);
    CHECK(zi[1] == 0);

    // alpha = 0: pure s2-cone content is fixed as s2-cone content.
    RationalPoint outer({(1 - beta) * x[0] + beta * s2[0], rat(0), beta});
    RationalPoint zo = double_cone_swap(c12, outer);
    CHECK(zo[2] == 0);
    CHECK(zo[1] == beta);
}

TEST_CASE("swap maps the singular configuration by convention") {
    VPolytope seg = segment();
    RationalPoint s1({rat(1, 4)}), s2({rat(3, 4)});
    LabeledCone c12 = iterated_cone(seg, {{s1, "c(s1)"}, {s2, "c(s2)"}});

    // y = c(s1), the alpha = 1, beta = 0 point, goes to the outer apex over s1.
    RationalPoint inner_apex = c12.apex_vertex(0);
    RationalPoint image = double_cone_swap(c12, inner_apex);
    CHECK(image == RationalPoint({rat(1, 4), rat(0), rat(1)}));

    // y = c'(s2) goes to the inner apex over s2.
    RationalPoint outer_apex = c12.apex_vertex(1);
    CHECK(double_cone_swap(c12, outer_apex) == RationalPoint({rat(3, 4), rat(1), rat(0)}));
}

TEST_CASE("swap is an exact involution on seeded points") {
    Rng rng(53);
    VPolytope base = testgen::random_polytope(rng, 2, 3);
    RationalPoint s1 = testgen::random_hull_point(rng, base);
    RationalPoint s2 = testgen::random_hull_point(rng, base);
    LabeledCone c12 = iterated_cone(base, {{s1, "c(s1)"}, {s2, "c(s2)"}});
    LabeledCone c21 = swapped_double_cone(c12);
    for (int t = 0; t < 100; ++t) {
        RationalPoint y = testgen::random_hull_point(rng, c12.poly);
        CHECK(double_cone_swap(c21, double_cone_swap(c12, y)) == y);
    }
}

TEST_CASE("extend affine map to cones") {
    VPolytope seg = segment();
    RationalPoint mid = pt({1}, 2);
    AffineMap idmap = AffineMap::identity(1);

    AffineMap same = extend_affine_to_cone(idmap, mid, mid, rat(1, 100));
    LabeledCone c = cone(seg, mid, "apex");
    for (const auto& v : c.poly.vertices) CHECK(same.apply(v) == v);

    // phi = identity, s1 != s2: apex goes to apex, and the projection
    // discrepancy at the apex is exactly d(s1, s2).
    RationalPoint s2 = pt({5}, 8);
    Rational gap = hilbert_distance(mid, s2, HilbertMetric(1));
    AffineMap moved = extend_affine_to_cone(idmap, mid, s2, gap + rat(1, 64));
    RationalPoint apex_image = moved.apply(c.apex_vertex(0));
    CHECK(apex_image == RationalPoint({rat(5, 8), rat(1)}));

    CHECK_THROWS_AS(extend_affine_to_cone(idmap, mid, s2, gap), Error);
}

TEST_CASE("extreme classification of cones") {
    LabeledCone c = cone(segment(), pt({1}, 2), "apex");
    ConeExtremeReport r = classify_extreme(c);
    CHECK(r.exhaustive);
    CHECK(r.base_extreme_labels.size() == 2);
    CHECK(r.apex_labels == std::vector<std::string>{"apex"});

    VPolytope square(2, {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})}, {"a", "b", "c", "d"});
    RationalPoint center({rat(1, 2), rat(1, 2)});
    LabeledCone cc = iterated_cone(square, {{center, "v1"}, {center, "v2"}});
    ConeExtremeReport rr = classify_extreme(cc);
    CHECK(rr.exhaustive);
    CHECK(extreme_points(cc.poly).size() == 6);

    VPolytope point(1, {pt({1}, 2)}, {"p"});
    LabeledCone cp = cone(point, pt({1}, 2), "apex");
    CHECK(extreme_points(cp.poly).size() == 2);
}

TEST_CASE("isolation margins") {
    LabeledCone c = cone(segment(), pt({1}, 2), "apex");
    // The apex sits one cone coordinate above the base segment.
    CHECK(isolation_margin(c, "apex") == dyadic_weight(1));

    VPolytope square(2, {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})}, {"a", "b", "c", "d"});
    RationalPoint center({rat(1, 2), rat(1, 2)});
    LabeledCone stacked = iterated_cone(square, {{center, "v1"}, {center, "v2"}});
    CHECK(isolation_margin(stacked, "v1") > 0);
    CHECK(isolation_margin(stacked, "v2") > 0);

    CHECK_THROWS_AS(isolation_margin(c, "e0"), Error);
}

TEST_CASE("subcones select apexes and stay faces") {
    VPolytope seg = segment();
    LabeledCone c = iterated_cone(seg, {{pt({0}), "v1"}, {pt({1}), "v2"}});

    LabeledCone full = subcone(c, {"v1", "v2"});
    CHECK(full.poly.dim == c.poly.dim);
    CHECK(full.poly.size() == c.poly.size());

    LabeledCone lifted = subcone(c, {});
    CHECK(lifted.poly.dim == 1);
    CHECK(lifted.poly.size() == 2);

    LabeledCone one = subcone(c, {"v2"});
    CHECK(one.poly.dim == 2);
    CHECK(is_face(c.poly, one.poly.labels));
    CHECK_THROWS_AS(subcone(c, {"nope"}), Error);
}
