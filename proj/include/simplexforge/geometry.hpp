#pragma once

#include <cstddef>
#include <vector>

#include "simplexforge/error.hpp"
#include "simplexforge/rational.hpp"

namespace simplexforge {

// A point of the truncated Hilbert cube: every coordinate in [0,1].
struct RationalPoint {
    std::vector<Rational> coords;

    RationalPoint() = default;
    explicit RationalPoint(std::vector<Rational> c) : coords(std::move(c)) {}

    std::size_t dim() const { return coords.size(); }
    const Rational& operator[](std::size_t i) const { return coords[i]; }
    Rational& operator[](std::size_t i) { return coords[i]; }

    bool operator==(const RationalPoint&) const = default;

    void check_unit_cube() const {
        for (const auto& c : coords)
            if (c < 0 || c > 1)
                throw domain_error("coordinate outside [0,1]: " + format_rational(c));
    }
};

// Weighted-l1 metric of the truncated Hilbert cube. Coordinate k (0-based)
// carries weight 2^-(k+1), so the total diameter is 1 - 2^-dim < 1.
struct HilbertMetric {
    std::size_t dim = 0;

    explicit HilbertMetric(std::size_t d = 0) : dim(d) {}

    Rational weight(std::size_t k) const {
        if (k >= dim) throw domain_error("weight index out of range");
        return dyadic_weight(k);
    }

    // Sum of all weights: 1 - 2^-dim.
    Rational total_weight() const {
        return Rational(1) - Rational(Integer(1), Integer(1) << dim);
    }
};

inline Rational hilbert_distance(const RationalPoint& x, const RationalPoint& y,
                                 const HilbertMetric& m) {
    if (x.dim() != y.dim() || x.dim() != m.dim)
        throw domain_error("hilbert_distance: dimension mismatch");
    Rational d(0);
    for (std::size_t k = 0; k < m.dim; ++k)
        if (x[k] != y[k]) d += dyadic_weight(k) * rat_abs(x[k] - y[k]);
    return d;
}

inline Rational hilbert_distance(const RationalPoint& x, const RationalPoint& y) {
    return hilbert_distance(x, y, HilbertMetric(x.dim()));
}

} // namespace simplexforge
