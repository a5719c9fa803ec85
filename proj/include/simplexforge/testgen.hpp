#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "simplexforge/affine.hpp"
#include "simplexforge/error.hpp"
#include "simplexforge/katetov.hpp"
#include "simplexforge/metric_space.hpp"
#include "simplexforge/polytope.hpp"
#include "simplexforge/rng.hpp"

namespace simplexforge::testgen {

inline std::vector<std::string> point_labels(std::size_t n, const std::string& prefix = "x") {
    std::vector<std::string> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = prefix + std::to_string(i + 1);
    return out;
}

// Random unit-bounded metric space: entries drawn from the grid {1..den}/den,
// then shortest-path closed, which restores the triangle inequality while
// keeping entries positive and at most 1.
inline FiniteMetricSpace random_space(Rng& rng, std::size_t n, std::uint64_t den = 8,
                                      const std::string& prefix = "x") {
    if (n == 0) throw domain_error("random_space: need at least one point");
    RationalMatrix d = linalg::zeros(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational v(Integer(rng.in_range(1, den)), Integer(den));
            d[i][j] = d[j][i] = v;
        }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return validate_metric(point_labels(n, prefix), std::move(d));
}

// All metric spaces with n points and distances in `values`, one
// representative per isometry class (canonical minimal matrix under label
// permutations).
inline std::vector<FiniteMetricSpace> enumerate_spaces(std::size_t n,
                                                       const std::vector<Rational>& values) {
    std::vector<FiniteMetricSpace> out;
    if (n == 1) {
        out.push_back(validate_metric(point_labels(1), linalg::zeros(1, 1)));
        return out;
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    std::vector<std::size_t> choice(pairs.size(), 0);
    std::vector<std::vector<std::vector<Rational>>> seen;

    std::vector<std::size_t> base_perm(n);
    std::iota(base_perm.begin(), base_perm.end(), 0);

    for (;;) {
        RationalMatrix d = linalg::zeros(n, n);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            auto [i, j] = pairs[p];
            d[i][j] = d[j][i] = values[choice[p]];
        }
        bool triangle = true;
        for (std::size_t i = 0; i < n && triangle; ++i)
            for (std::size_t j = 0; j < n && triangle; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (i != j && j != k && i != k && d[i][k] > d[i][j] + d[j][k]) {
                        triangle = false;
                        break;
                    }
        if (triangle) {
            std::vector<std::vector<Rational>> canon;
            std::vector<std::size_t> perm = base_perm;
            do {
                std::vector<std::vector<Rational>> candidate(n, std::vector<Rational>(n));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) candidate[i][j] = d[perm[i]][perm[j]];
                if (canon.empty() || candidate < canon) canon = std::move(candidate);
            } while (std::next_permutation(perm.begin(), perm.end()));

            if (std::find(seen.begin(), seen.end(), canon) == seen.end()) {
                seen.push_back(canon);
                RationalMatrix cd(n, RationalRow(n));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) cd[i][j] = canon[i][j];
                out.push_back(validate_metric(point_labels(n), std::move(cd)));
            }
        }
        std::size_t pos = 0;
        while (pos < choice.size() && ++choice[pos] == values.size()) choice[pos++] = 0;
        if (pos == choice.size()) break;
    }
    return out;
}

// Random polytope with small-denominator coordinates; duplicates possible by
// design (operations must tolerate redundancy).
inline VPolytope random_polytope(Rng& rng, std::size_t dim, std::size_t count,
                                 std::uint64_t max_den = 6) {
    std::vector<RationalPoint> verts;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<Rational> coords(dim);
        for (auto& c : coords) c = rng.rational01(max_den);
        verts.push_back(RationalPoint(std::move(coords)));
    }
    return VPolytope(dim, std::move(verts), point_labels(count, "v"));
}

inline RationalPoint random_hull_point(Rng& rng, const VPolytope& p) {
    return combine(p, rng.simplex_weights(p.size()));
}

inline RationalPoint random_relative_interior_point(Rng& rng, const VPolytope& p) {
    return combine(p, rng.interior_weights(p.size()));
}

// Random Katetov function with strictly positive values, built by sequential
// sampling from the feasibility interval [max_j |f_j - d_ij|, min_j f_j + d_ij]
// which amalgamation keeps nonempty.
inline KatetovFunction random_katetov(Rng& rng, const FiniteMetricSpace& x) {
    if (!x.unit_bounded) throw domain_error("random_katetov: space must be unit-bounded");
    std::vector<Rational> f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        Rational lo(0), hi(1);
        for (std::size_t j = 0; j < i; ++j) {
            lo = std::max(lo, rat_abs(f[j] - x.d[i][j]));
            hi = std::min(hi, f[j] + x.d[i][j]);
        }
        if (lo > hi) throw domain_error("random_katetov: empty feasibility interval");
        f[i] = lo == hi ? lo : rng.rational_between(lo, hi);
        if (f[i] == 0) f[i] = hi / 2;  // keep the new point distinct
    }
    return make_katetov(x, std::move(f));
}

// Random affine self-map of the dim-cube with outputs guaranteed inside
// [0,1]: row sums of absolute entries at most 1/4, offsets in [1/4, 3/4].
inline AffineMap random_cube_map(Rng& rng, std::size_t dim) {
    RationalMatrix m = linalg::zeros(dim, dim);
    std::vector<Rational> off(dim);
    Integer row_den = Integer(4) * Integer(dim) * 3;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            long num = static_cast<long>(rng.in_range(0, 6)) - 3;  // in [-3, 3]
            m[r][c] = Rational(Integer(num), row_den);
        }
        off[r] = rat(1, 4) + Rational(Integer(rng.in_range(0, 8)), Integer(16));
    }
    return AffineMap(std::move(m), RationalPoint(std::move(off)));
}

// A deterministic mixed corpus: the hand-picked small spaces plus seeded
// random ones up to `max_points`.
inline std::vector<FiniteMetricSpace> corpus(std::uint64_t seed, std::size_t max_points = 6) {
    std::vector<FiniteMetricSpace> out;

    out.push_back(validate_metric(point_labels(2), {{rat(0), rat(1, 2)}, {rat(1, 2), rat(0)}}));
    out.push_back(validate_metric(point_labels(2), {{rat(0), rat(1)}, {rat(1), rat(0)}}));
    out.push_back(validate_metric(
        point_labels(3), {{rat(0), rat(1), rat(1)}, {rat(1), rat(0), rat(1)}, {rat(1), rat(1), rat(0)}}));
    out.push_back(validate_metric(point_labels(3), {{rat(0), rat(1, 2), rat(3, 4)},
                                                    {rat(1, 2), rat(0), rat(1, 4)},
                                                    {rat(3, 4), rat(1, 4), rat(0)}}));

    Rng rng(seed);
    for (std::size_t n = 2; n <= max_points; ++n)
        for (int rep = 0; rep < 2; ++rep) out.push_back(random_space(rng, n));
    return out;
}

} // namespace simplexforge::testgen
