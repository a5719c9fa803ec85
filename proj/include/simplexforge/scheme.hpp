#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "simplexforge/error.hpp"
#include "simplexforge/metric_space.hpp"
#include "simplexforge/rational.hpp"
#include "simplexforge/sextension.hpp"

namespace simplexforge {

// One coding triple: an ordered pair of enumerated points and a basic open
// window around their distance.
struct SchemeTriple {
    std::string x, y;
    Rational lo, hi;      // window endpoints, clipped to [0,1]
    Rational width;       // the dyadic width that produced the window
    std::size_t cycle = 0;

    bool window_contains(const Rational& v) const {
        // The window is open at unclipped endpoints; the clip to [0,1] cannot
        // exclude a distance, which always lies in (0,1].
        return v > lo && (v < hi || (hi == 1 && v == 1));
    }
};

// Fair enumeration, with repetitions, of all triples (x, y, U): x != y in D
// and U a dyadic window with d(x,y) in U. Order within a cycle: ordered pairs
// lexicographically by enumeration index, widths in the given order, windows
// by ascending center; cycles repeat until `depth` triples are emitted. The
// order is reproducible byte for byte.
struct MetricScheme {
    std::vector<SchemeTriple> triples;
    std::vector<Rational> widths;
    std::size_t depth = 0;

    std::size_t size() const { return triples.size(); }
};

namespace detail {

inline void check_dyadic_width(const Rational& w) {
    if (w <= 0 || w > 1 || numerator(w) != 1)
        throw domain_error("scheme width must be 2^-j, got " + format_rational(w));
    Integer den = denominator(w);
    while (den % 2 == 0) den /= 2;
    if (den != 1)
        throw domain_error("scheme width must be 2^-j, got " + format_rational(w));
}

// Windows of width w admissible for distance d: centers on the w/2 grid with
// |d - c| < w/2. There are one or two; emitted by ascending center.
inline std::vector<std::pair<Rational, Rational>> admissible_windows(const Rational& d,
                                                                     const Rational& w) {
    Rational half = w / 2;
    Rational q = d / half;  // candidate center indices lie strictly in (q-1, q+1)
    Integer q_floor = numerator(q) / denominator(q);
    std::vector<std::pair<Rational, Rational>> out;
    for (Integer m = q_floor - 1; m <= q_floor + 2; ++m) {
        Rational center = Rational(m, 1) * half;
        if (rat_abs(d - center) < half) {
            Rational lo = center - half, hi = center + half;
            if (lo < 0) lo = 0;
            if (hi > 1) hi = 1;
            out.emplace_back(lo, hi);
        }
    }
    return out;
}

} // namespace detail

inline MetricScheme build_scheme(const FiniteMetricSpace& x, const Enumeration& d,
                                 const std::vector<Rational>& widths, std::size_t depth) {
    if (!x.unit_bounded) throw domain_error("build_scheme: space must be unit-bounded");
    if (widths.empty()) throw domain_error("build_scheme: no widths given");
    for (const auto& w : widths) detail::check_dyadic_width(w);

    MetricScheme scheme;
    scheme.widths = widths;
    scheme.depth = depth;

    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < d.size(); ++i) idx.push_back(x.index_of(d[i]));

    for (std::size_t cycle = 0; scheme.triples.size() < depth; ++cycle) {
        std::size_t emitted_this_cycle = 0;
        for (std::size_t i = 0; i < d.size() && scheme.triples.size() < depth; ++i)
            for (std::size_t j = 0; j < d.size() && scheme.triples.size() < depth; ++j) {
                if (i == j) continue;
                const Rational& dist = x.d[idx[i]][idx[j]];
                for (const auto& w : widths) {
                    for (const auto& [lo, hi] : detail::admissible_windows(dist, w)) {
                        if (scheme.triples.size() >= depth) break;
                        scheme.triples.push_back({d[i], d[j], lo, hi, w, cycle});
                        ++emitted_this_cycle;
                    }
                    if (scheme.triples.size() >= depth) break;
                }
            }
        if (emitted_this_cycle == 0) break;  // no distinct pairs: empty scheme
    }
    return scheme;
}

// Triples in one full repetition cycle, the natural "cover everything once"
// depth.
inline std::size_t full_cycle_length(const FiniteMetricSpace& x, const Enumeration& d,
                                     const std::vector<Rational>& widths) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (i == j) continue;
            const Rational& dist = x.dist(d[i], d[j]);
            for (const auto& w : widths) count += detail::admissible_windows(dist, w).size();
        }
    return count;
}

} // namespace simplexforge
