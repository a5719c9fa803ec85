#include <catch_amalgamated.hpp>

#include "simplexforge/codec.hpp"
#include "simplexforge/roundtrip.hpp"
#include "simplexforge/testgen.hpp"

using namespace simplexforge;

namespace {
FiniteMetricSpace two_points(const Rational& d) {
    return validate_metric({"d1", "d2"}, {{rat(0), d}, {d, rat(0)}});
}

FiniteMetricSpace equilateral() {
    return validate_metric({"a", "b", "c"}, {{rat(0), rat(1), rat(1)},
                                             {rat(1), rat(0), rat(1)},
                                             {rat(1), rat(1), rat(0)}});
}
} // namespace

TEST_CASE("detection recovers the structure of a depth-1 coded polytope") {
    auto x = two_points(rat(1, 2));
    PhiStage phi = build_phi(x, PhiParams{{rat(1, 2)}, 1, QRule::Quartiles});
    DetectedStructure det = detect_structure(phi.poly());
    REQUIRE(det.ok);
    CHECK(det.pairs.size() == 1);
    CHECK(det.marker_apexes.size() == 3);
    CHECK(det.base_extremes.size() == 2);
    CHECK(same_partition(det, ground_truth_structure(phi)));
    CHECK(det.pairs[0].lambdas == std::vector<Rational>{rat(3, 8), rat(1, 2), rat(5, 8)});
}

TEST_CASE("depth-0 detection sees only base points") {
    auto x = two_points(rat(1));  // distance 1 exercises the value-1 pitfall
    SStage stage = build_distance_stage(x);
    MetricScheme empty = build_scheme(x, stage.enumeration, {rat(1, 2)}, 0);
    BlowupStage lifted = build_blowup(stage, empty);
    MarkerSet no_markers = marker_points(lifted);
    std::vector<std::pair<RationalPoint, std::string>> none;
    PhiStage phi{lifted, no_markers, detail::assemble_cone(lifted.cone.poly, none, false)};

    DetectedStructure det = detect_structure(phi.poly());
    REQUIRE(det.ok);
    CHECK(det.pairs.empty());
    CHECK(det.marker_apexes.empty());
    CHECK(det.base_extremes.size() == 2);
}

TEST_CASE("repeated scheme pairs produce disjoint apex pairs") {
    auto x = two_points(rat(1, 2));
    PhiStage phi = build_phi(x, PhiParams{{rat(1, 2)}, 4, QRule::Quartiles});
    DetectedStructure det = detect_structure(phi.poly());
    REQUIRE(det.ok);
    CHECK(det.pairs.size() == 4);
    CHECK(same_partition(det, ground_truth_structure(phi)));
}

TEST_CASE("decoding brackets the true distance") {
    auto x = two_points(rat(1, 2));
    PhiStage phi = build_phi(x, PhiParams{{rat(1, 2), rat(1, 4)}, 0, QRule::Quartiles});
    DetectedStructure det = detect_structure(phi.poly());
    REQUIRE(det.ok);

    DecodedEntry e = decode_distance(phi, det, "d1", "d2");
    REQUIRE(e.determined);
    CHECK(e.lo <= rat(1, 2));
    CHECK(rat(1, 2) <= e.hi);
    CHECK(e.width() <= rat(1, 4));

    // x = y is undetermined by construction.
    DecodedEntry same = decode_distance(phi, det, "d1", "d1");
    CHECK_FALSE(same.determined);

    CHECK_THROWS_AS(decode_distance(phi, det, "d1", "zz"), Error);
}

TEST_CASE("equilateral distances decode to intervals around 1") {
    auto x = equilateral();
    PhiStage phi = build_phi(x, PhiParams{{rat(1, 2), rat(1, 4), rat(1, 8)}, 0, QRule::Quartiles});
    DetectedStructure det = detect_structure(phi.poly());
    REQUIRE(det.ok);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            DecodedEntry e = decode_distance(phi, det, x.labels[i], x.labels[j]);
            attach_truth(e, x);
            REQUIRE(e.determined);
            CHECK(e.contains);
            CHECK(e.width() <= rat(1, 8));
        }
}

TEST_CASE("labeled-mode decoding agrees with strict mode") {
    Rng rng(61);
    auto x = testgen::random_space(rng, 3, 4);
    PhiStage phi = build_phi(x, PhiParams{{rat(1, 2), rat(1, 4)}, 0, QRule::Quartiles});
    DetectedStructure strict = detect_structure(phi.poly());
    DetectedStructure labeled = ground_truth_structure(phi);
    REQUIRE(strict.ok);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            DecodedEntry a = decode_distance(phi, strict, x.labels[i], x.labels[j]);
            DecodedEntry b = decode_distance(phi, labeled, x.labels[i], x.labels[j]);
            CHECK(a.determined == b.determined);
            CHECK(a.lo == b.lo);
            CHECK(a.hi == b.hi);
        }
}

TEST_CASE("roundtrip ladder shrinks widths like the window schedule") {
    auto x = two_points(rat(1, 2));
    RoundtripParams params;
    params.depth = 3;
    RoundtripReport report = roundtrip(x, params);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0].max_width == rat(1, 2));
    CHECK(report.rows[1].max_width == rat(1, 4));
    CHECK(report.rows[2].max_width == rat(1, 8));
    CHECK(report.pass());
    // Truncated to depth 3, the pair appears three times: no low-confidence.
    CHECK(report.low_confidence.empty());
}

TEST_CASE("roundtrip flags under-covered pairs") {
    auto x = two_points(rat(1, 2));
    RoundtripParams params;
    params.depth = 1;
    RoundtripReport report = roundtrip(x, params);
    CHECK(report.low_confidence.size() == 1);
}

TEST_CASE("relabeled copies match under the induced permutation") {
    Rng rng(67);
    for (int t = 0; t < 3; ++t) {
        auto x = testgen::random_space(rng, 3, 4);
        RoundtripParams params;
        params.widths = {rat(1, 2), rat(1, 4)};
        params.seed = 100 + t;
        RoundtripReport report = roundtrip(x, params);
        CHECK(report.copy_matches);
        CHECK(report.detection_matches);
        CHECK(report.pass());
    }
}

TEST_CASE("non-isometric spaces never match") {
    auto x = two_points(rat(1, 2));
    auto y = validate_metric({"e1", "e2"}, {{rat(0), rat(1, 3)}, {rat(1, 3), rat(0)}});
    PhiParams params{{rat(1, 2), rat(1, 4)}, 0, QRule::Quartiles};
    PhiStage px = build_phi(x, params);
    PhiStage py = build_phi(y, params);
    CHECK_FALSE(phi_match_exhaustive(px, py).has_value());

    // Decoded intervals differ: 1/2 vs 1/3 separate at width 1/4.
    DetectedStructure dx = detect_structure(px.poly());
    DetectedStructure dy = detect_structure(py.poly());
    DecodedEntry ex = decode_distance(px, dx, "d1", "d2");
    DecodedEntry ey = decode_distance(py, dy, "e1", "e2");
    CHECK((ex.lo != ey.lo || ex.hi != ey.hi));
}

TEST_CASE("roundtrip guard refuses large spaces") {
    Rng rng(71);
    auto big = testgen::random_space(rng, 7);
    CHECK_THROWS_AS(roundtrip(big), Error);
    try {
        roundtrip(big);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Guard);
    }
}
