#include <catch_amalgamated.hpp>

#include "simplexforge/rational.hpp"

using namespace simplexforge;

TEST_CASE("parse and format stay canonical") {
    CHECK(format_rational(parse_rational("1/2")) == "1/2");
    CHECK(format_rational(parse_rational("7/21")) == "1/3");
    CHECK(format_rational(parse_rational("-6/4")) == "-3/2");
    CHECK(format_rational(parse_rational("3")) == "3/1");
    CHECK(format_rational(parse_rational("0/5")) == "0/1");
    CHECK(parse_rational("2/4") == rat(1, 2));
}

TEST_CASE("malformed rationals are parse errors") {
    for (const char* bad : {"1/0", "", "/2", "1/", "a/b", "1.5", "1/-2/3"}) {
        CHECK_THROWS_AS(parse_rational(bad), Error);
        try {
            parse_rational(bad);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Parse);
        }
    }
}

TEST_CASE("arithmetic is exact") {
    Rational third = rat(1, 3);
    Rational sum(0);
    for (int i = 0; i < 3; ++i) sum += third;
    CHECK(sum == 1);
    CHECK(rat_abs(rat(-5, 7)) == rat(5, 7));
}

TEST_CASE("dyadic weights halve and sum below one") {
    CHECK(dyadic_weight(0) == rat(1, 2));
    CHECK(dyadic_weight(1) == rat(1, 4));
    CHECK(dyadic_weight(9) == Rational(Integer(1), Integer(1024)));
    Rational total(0);
    for (std::size_t k = 0; k < 20; ++k) total += dyadic_weight(k);
    CHECK(total < 1);
}
