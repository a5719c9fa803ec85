#include <catch_amalgamated.hpp>

#include "simplexforge/r1_family.hpp"
#include "simplexforge/saturation.hpp"
#include "simplexforge/testgen.hpp"

using namespace simplexforge;

namespace {
FiniteMetricSpace equilateral() {
    return validate_metric({"a", "b", "c"}, {{rat(0), rat(1), rat(1)},
                                             {rat(1), rat(0), rat(1)},
                                             {rat(1), rat(1), rat(0)}});
}
} // namespace

TEST_CASE("distance functions rescale to d/4 + 3/4") {
    auto x = equilateral();
    R1Options opts;
    opts.include_constants = false;
    opts.include_sums = false;
    opts.include_products = false;
    auto family = r1_family(x, x.labels, x.labels.size(), opts);
    REQUIRE(family.size() == 3);
    for (std::size_t z = 0; z < 3; ++z) {
        for (std::size_t i = 0; i < 3; ++i) {
            Rational expected = x.d[z][i] / 4 + rat(3, 4);
            CHECK(family[z].values[i] == expected);
        }
        CHECK(family[z].lipschitz_cert);
    }
}

TEST_CASE("constant zero becomes the constant 3/4") {
    auto x = equilateral();
    auto family = r1_family(x, x.labels, 2);
    REQUIRE_FALSE(family.empty());
    CHECK(family[0].values == std::vector<Rational>(3, rat(3, 4)));
}

TEST_CASE("products pass with the conservative lipschitz bound") {
    auto x = equilateral();
    R1Options opts;
    opts.include_constants = false;
    opts.include_sums = false;
    auto family = r1_family(x, x.labels, 12, opts);
    // Products d(.,z1) d(.,z2) have certified bound L <= 2 on unit-bounded
    // spaces, so they rescale by 1/8 and land in [3/4, 7/8].
    bool found_product = false;
    for (const auto& f : family) {
        if (f.name.find('*') == std::string::npos) continue;
        found_product = true;
        for (const auto& v : f.values) {
            CHECK(v >= rat(1, 2));
            CHECK(v <= rat(1));
        }
        CHECK(f.lipschitz_cert);
    }
    CHECK(found_product);
}

TEST_CASE("range failures are skipped, not repaired") {
    auto x = equilateral();
    R1Options opts;
    opts.include_sums = false;
    opts.include_products = false;
    // Constants 1, 1/2, 3/4 rescale above 1 and must be dropped; 0 -> 3/4
    // and 1/4 -> 1 survive.
    auto family = r1_family(x, x.labels, 5, opts);
    for (const auto& f : family)
        for (const auto& v : f.values) {
            CHECK(v >= rat(1, 2));
            CHECK(v <= 1);
        }
    CHECK(family.size() == 2);
}

TEST_CASE("all survivors are lipschitz-1 with range in [1/2, 1]") {
    Rng rng(17);
    auto x = testgen::random_space(rng, 4);
    auto family = r1_family(x, x.labels, 40);
    CHECK(family.size() >= 4);
    for (const auto& f : family) {
        for (const auto& v : f.values) {
            CHECK(v >= rat(1, 2));
            CHECK(v <= 1);
        }
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = i + 1; j < x.size(); ++j)
                CHECK(rat_abs(f.values[i] - f.values[j]) <= x.d[i][j]);
    }
}

TEST_CASE("saturation witness for one target") {
    auto x = equilateral();
    auto witnesses = saturation_witnesses({"a"}, {"a", "b", "c"}, x);
    REQUIRE(witnesses.size() == 1);
    // The first pool point at positive distance: "a" itself gives the
    // singular 1x1 zero matrix, so "b" is chosen.
    CHECK(witnesses[0] == "b");
}

TEST_CASE("equilateral triple witnesses itself") {
    auto x = equilateral();
    auto witnesses = saturation_witnesses({"a", "b", "c"}, {"a", "b", "c"}, x);
    REQUIRE(witnesses.size() == 3);
    CHECK(witness_determinant({"a", "b", "c"}, witnesses, x) == 2);
}

TEST_CASE("rank-1 pools are reported as exhausted") {
    // Both candidates are equidistant from both targets: every 2x2 matrix
    // has rank 1.
    auto x = validate_metric({"t1", "t2", "p1", "p2"},
                             {{rat(0), rat(1), rat(1, 2), rat(1, 2)},
                              {rat(1), rat(0), rat(1, 2), rat(1, 2)},
                              {rat(1, 2), rat(1, 2), rat(0), rat(1)},
                              {rat(1, 2), rat(1, 2), rat(1), rat(0)}});
    CHECK_THROWS_AS(saturation_witnesses({"t1", "t2"}, {"p1", "p2"}, x), Error);
}

TEST_CASE("witness matrices over extended pools are invertible") {
    Rng rng(19);
    for (int t = 0; t < 10; ++t) {
        auto x = testgen::random_space(rng, 3);
        FiniteMetricSpace ext = x;
        for (int j = 0; j < 3; ++j)
            ext = katetov_extend(ext, {testgen::random_katetov(rng, ext)},
                                 {"w" + std::to_string(j)});
        std::vector<std::string> pool(ext.labels.begin() + 3, ext.labels.end());
        auto witnesses = saturation_witnesses(x.labels, pool, ext);
        CHECK(witness_determinant(x.labels, witnesses, ext) != 0);
    }
}
