#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "simplexforge/error.hpp"
#include "simplexforge/metric_space.hpp"
#include "simplexforge/rational.hpp"

namespace simplexforge {

// A function on the points of a base space, with an optional certificate that
// it is Lipschitz 1. Houses members of the Lipschitz-1 families fed to the
// stage builder.
struct PointFunction {
    std::string name;
    std::vector<Rational> values;  // one per base point, in [0,1]
    bool lipschitz_cert = false;

    const Rational& at(std::size_t i) const { return values[i]; }
};

// The abstract distance profile of a potential new point:
// |f(x)-f(y)| <= d(x,y) <= f(x)+f(y) at every pair.
struct KatetovFunction {
    std::vector<Rational> values;

    const Rational& at(std::size_t i) const { return values[i]; }
};

inline bool katetov_inequalities_hold(const FiniteMetricSpace& x,
                                      const std::vector<Rational>& f) {
    if (f.size() != x.size()) throw domain_error("katetov check: value count mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            Rational gap = rat_abs(f[i] - f[j]);
            if (gap > x.d[i][j]) return false;
            if (x.d[i][j] > f[i] + f[j]) return false;
        }
    return true;
}

// True iff both Katetov inequalities hold at every pair (values must sit in
// [0,1] first).
inline bool is_katetov(const FiniteMetricSpace& x, const PointFunction& f) {
    for (const auto& v : f.values)
        if (v < 0 || v > 1) return false;
    return katetov_inequalities_hold(x, f.values);
}

inline KatetovFunction make_katetov(const FiniteMetricSpace& x, std::vector<Rational> values) {
    for (const auto& v : values)
        if (v < 0 || v > 1) throw domain_error("katetov function value outside [0,1]");
    if (!katetov_inequalities_hold(x, values))
        throw domain_error("values violate the Katetov inequalities");
    return KatetovFunction{std::move(values)};
}

// The distance function to an existing point, the canonical Katetov function.
inline KatetovFunction distance_function(const FiniteMetricSpace& x, std::size_t point) {
    if (!x.unit_bounded) throw domain_error("distance_function: space must be unit-bounded");
    return KatetovFunction{x.d[point]};
}

// Pointwise alpha f + (1-alpha) g; the output is certified Katetov again.
inline KatetovFunction convex_combine_katetov(const FiniteMetricSpace& x,
                                              const KatetovFunction& f,
                                              const KatetovFunction& g,
                                              const Rational& alpha) {
    if (alpha < 0 || alpha > 1) throw domain_error("convex_combine_katetov: alpha outside [0,1]");
    if (f.values.size() != x.size() || g.values.size() != x.size())
        throw domain_error("convex_combine_katetov: mismatched base space");
    std::vector<Rational> values(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        values[i] = alpha * f.values[i] + (1 - alpha) * g.values[i];
    return make_katetov(x, std::move(values));
}

// One-step Katetov extension: adjoins one new point per function, with
// d(new_i, x) = f_i(x) and d(new_i, new_j) = sup-metric max over base points
// of |f_i - f_j|. Extensions that would duplicate a point at distance zero
// are refused, and the result is re-validated rather than assumed metric.
inline FiniteMetricSpace katetov_extend(const FiniteMetricSpace& x,
                                        const std::vector<KatetovFunction>& fs,
                                        const std::vector<std::string>& new_labels) {
    if (fs.size() != new_labels.size())
        throw domain_error("katetov_extend: one label per function required");
    std::size_t n = x.size(), m = fs.size();
    for (const auto& f : fs) {
        if (f.values.size() != n) throw domain_error("katetov_extend: value count mismatch");
        for (const auto& v : f.values)
            if (v < 0 || v > 1) throw domain_error("katetov_extend: value outside [0,1]");
        if (!katetov_inequalities_hold(x, f.values))
            throw domain_error("katetov_extend: non-Katetov input");
    }

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t p = 0; p < n; ++p)
            if (fs[i].values[p] == 0)
                throw domain_error("katetov_extend: new point \"" + new_labels[i] +
                                   "\" would duplicate \"" + x.labels[p] + "\" at distance 0");

    auto sup_gap = [&](std::size_t i, std::size_t j) {
        Rational best(0);
        for (std::size_t p = 0; p < n; ++p) {
            Rational gap = rat_abs(fs[i].values[p] - fs[j].values[p]);
            if (gap > best) best = gap;
        }
        return best;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (sup_gap(i, j) == 0)
                throw domain_error("katetov_extend: new points \"" + new_labels[i] + "\" and \"" +
                                   new_labels[j] + "\" coincide at distance 0");

    std::vector<std::string> labels = x.labels;
    labels.insert(labels.end(), new_labels.begin(), new_labels.end());
    RationalMatrix d = linalg::zeros(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = x.d[i][j];
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < n; ++p) {
            d[n + i][p] = fs[i].values[p];
            d[p][n + i] = fs[i].values[p];
        }
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) d[n + i][n + j] = sup_gap(i, j);
    }
    return validate_metric(std::move(labels), std::move(d));
}

} // namespace simplexforge
