#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "simplexforge/error.hpp"

namespace simplexforge {

// Exact scalar field for all coordinates and distances. GMP keeps values in
// canonical reduced form (positive denominator, coprime) through arithmetic;
// parsing below re-canonicalizes explicitly since the string constructor of
// mpq does not. Expression templates stay off so arithmetic yields plain
// values usable with std algorithms.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw domain_error("rational with zero denominator");
    return Rational(Integer(num), Integer(den));
}

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// 2^-(k+1), the Hilbert-cube weight of the 0-based coordinate k.
inline Rational dyadic_weight(std::size_t k) {
    return Rational(Integer(1), Integer(1) << (k + 1));
}

// Parses "p/q" (or a bare integer "p") in base 10. Canonical form is not
// required on input; output of format_rational always is.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { return parse_error("malformed rational \"" + std::string(text) + "\""); };
    if (text.empty()) throw fail();

    std::size_t slash = text.find('/');
    std::string_view num_part = text.substr(0, slash == std::string_view::npos ? text.size() : slash);
    std::string_view den_part = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);

    auto parse_int = [&](std::string_view s) {
        if (s.empty()) throw fail();
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw fail();
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw fail();
        return Integer(std::string(s));
    };

    Integer num = parse_int(num_part);
    Integer den = parse_int(den_part);
    if (den == 0) throw fail();
    return Rational(num, den);
}

// Always "p/q", base 10, canonical reduced form ("3" serializes as "3/1").
inline std::string format_rational(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace simplexforge
