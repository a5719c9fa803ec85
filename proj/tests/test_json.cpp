#include <catch_amalgamated.hpp>

#include "simplexforge/json_io.hpp"
#include "simplexforge/testgen.hpp"

using namespace simplexforge;

TEST_CASE("metric space round-trips through JSON") {
    Rng rng(73);
    for (int t = 0; t < 10; ++t) {
        auto x = testgen::random_space(rng, 2 + rng.below(4));
        auto back = space_from_json(to_json(x));
        CHECK(back.labels == x.labels);
        CHECK(back.d == x.d);
        CHECK(back.unit_bounded == x.unit_bounded);
    }
}

TEST_CASE("polytope round-trips through JSON") {
    Rng rng(79);
    for (int t = 0; t < 10; ++t) {
        VPolytope p = testgen::random_polytope(rng, 1 + rng.below(3), 1 + rng.below(4));
        VPolytope back = polytope_from_json(to_json(p));
        CHECK(back.dim == p.dim);
        CHECK(back.vertices == p.vertices);
        CHECK(back.labels == p.labels);
    }
}

TEST_CASE("rationals serialize canonically as p/q") {
    auto x = validate_metric({"a", "b"}, {{rat(0), rat(2, 4)}, {rat(2, 4), rat(0)}});
    Json j = to_json(x);
    CHECK(j["d"][0][1].get<std::string>() == "1/2");
    CHECK(j["d"][0][0].get<std::string>() == "0/1");
}

TEST_CASE("serialization is deterministic") {
    Rng rng(83);
    auto x = testgen::random_space(rng, 4);
    PhiStage phi = build_phi(x, PhiParams{{rat(1, 2)}, 2, QRule::Quartiles});
    CHECK(to_json(phi).dump(2) == to_json(phi).dump(2));

    Json a = to_json(build_phi(x, PhiParams{{rat(1, 2)}, 2, QRule::Quartiles}));
    CHECK(a.dump(2) == to_json(phi).dump(2));
}

TEST_CASE("decode entries follow the report schema") {
    auto x = validate_metric({"a", "b"}, {{rat(0), rat(1, 2)}, {rat(1, 2), rat(0)}});
    PhiStage phi = build_phi(x, PhiParams{{rat(1, 2)}, 0, QRule::Quartiles});
    DetectedStructure det = detect_structure(phi.poly());
    DecodedEntry e = decode_distance(phi, det, "a", "b");
    attach_truth(e, x);
    Json j = to_json(e);
    CHECK(j["pair"] == Json::array({"a", "b"}));
    CHECK(j["interval"].is_array());
    CHECK(j["true_d"].get<std::string>() == "1/2");
    CHECK(j["contains"].get<bool>());
}

TEST_CASE("malformed input is a parse error") {
    Json bad = Json::parse(R"({"labels": ["a"], "d": [["1/0"]]})");
    CHECK_THROWS_AS(space_from_json(bad), Error);
    Json missing = Json::parse(R"({"labels": ["a"]})");
    CHECK_THROWS_AS(space_from_json(missing), Error);
}

TEST_CASE("cone JSON extends polytope JSON with apexes") {
    VPolytope seg(1, {RationalPoint({rat(0)}), RationalPoint({rat(1)})}, {"a", "b"});
    LabeledCone c = cone(seg, RationalPoint({rat(1, 2)}), "v1");
    Json j = to_json(c);
    CHECK(j.contains("vertices"));
    REQUIRE(j["apexes"].size() == 1);
    CHECK(j["apexes"][0]["label"] == "v1");
    CHECK(j["apexes"][0]["coord"] == 1);
}
