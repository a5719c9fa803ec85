#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simplexforge/error.hpp"
#include "simplexforge/geometry.hpp"
#include "simplexforge/lp.hpp"
#include "simplexforge/rational.hpp"

namespace simplexforge {

// Vertex-list polytope in truncated Hilbert-cube coordinates. The vertex list
// may contain redundant (non-extreme, even duplicate) generators; only
// extreme_points canonicalizes. Labels are opaque to the geometry.
struct VPolytope {
    std::size_t dim = 0;
    std::vector<RationalPoint> vertices;
    std::vector<std::string> labels;

    VPolytope() = default;

    VPolytope(std::size_t d, std::vector<RationalPoint> verts, std::vector<std::string> labs)
        : dim(d), vertices(std::move(verts)), labels(std::move(labs)) {
        validate();
    }

    void validate() const {
        if (vertices.empty()) throw domain_error("polytope: empty vertex list");
        if (labels.size() != vertices.size())
            throw domain_error("polytope: label/vertex count mismatch");
        for (const auto& v : vertices) {
            if (v.dim() != dim) throw domain_error("polytope: vertex dimension mismatch");
            v.check_unit_cube();
        }
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw domain_error("polytope: duplicate vertex label");
    }

    std::size_t size() const { return vertices.size(); }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return i;
        throw domain_error("polytope: unknown label \"" + label + "\"");
    }

    HilbertMetric metric() const { return HilbertMetric(dim); }
};

// Exact LP feasibility: does sum(l_i g_i) = p, sum(l_i) = 1, l >= 0 have a
// solution?
inline bool in_convex_hull(const RationalPoint& p, const std::vector<RationalPoint>& generators) {
    if (generators.empty()) throw domain_error("in_convex_hull: empty generator list");
    std::size_t dim = p.dim();
    for (const auto& g : generators)
        if (g.dim() != dim) throw domain_error("in_convex_hull: dimension mismatch");

    std::size_t n = generators.size();
    RationalMatrix a = linalg::zeros(dim + 1, n);
    std::vector<Rational> b(dim + 1, Rational(0));
    for (std::size_t t = 0; t < dim; ++t) {
        for (std::size_t j = 0; j < n; ++j) a[t][j] = generators[j][t];
        b[t] = p[t];
    }
    for (std::size_t j = 0; j < n; ++j) a[dim][j] = 1;
    b[dim] = 1;
    return lp::feasible(std::move(a), std::move(b));
}

inline bool in_convex_hull(const RationalPoint& p, const VPolytope& q) {
    if (p.dim() != q.dim) throw domain_error("in_convex_hull: dimension mismatch");
    return in_convex_hull(p, q.vertices);
}

// Exact weighted-l1 distance from p to hull(generators), by LP: minimize
// sum_t w_t (u_t + v_t) with sum_j l_j g_j - u + v = p, sum l = 1.
inline Rational point_to_hull_distance(const RationalPoint& p,
                                       const std::vector<RationalPoint>& generators,
                                       const HilbertMetric& m) {
    if (generators.empty()) throw domain_error("point_to_hull_distance: empty generator list");
    std::size_t dim = p.dim();
    if (dim != m.dim) throw domain_error("point_to_hull_distance: metric dimension mismatch");
    for (const auto& g : generators)
        if (g.dim() != dim) throw domain_error("point_to_hull_distance: dimension mismatch");

    std::size_t n = generators.size();
    std::size_t vars = n + 2 * dim;  // lambdas, then u, then v
    RationalMatrix a = linalg::zeros(dim + 1, vars);
    std::vector<Rational> b(dim + 1, Rational(0));
    std::vector<Rational> c(vars, Rational(0));
    for (std::size_t t = 0; t < dim; ++t) {
        for (std::size_t j = 0; j < n; ++j) a[t][j] = generators[j][t];
        a[t][n + t] = -1;
        a[t][n + dim + t] = 1;
        b[t] = p[t];
        c[n + t] = dyadic_weight(t);
        c[n + dim + t] = dyadic_weight(t);
    }
    for (std::size_t j = 0; j < n; ++j) a[dim][j] = 1;
    b[dim] = 1;

    auto sol = lp::solve(std::move(a), std::move(b), std::move(c));
    if (!sol.optimal()) throw domain_error("point_to_hull_distance: infeasible hull LP");
    return sol.objective;
}

namespace detail {

// Decides extremeness of each deduplicated point. A point that is the strict
// minimizer or maximizer of some coordinate is extreme; a point tied at a
// coordinate extremum is decided inside that tied set, which spans a face, so
// extremeness there is equivalent to extremeness in the whole polytope. Only
// points with no usable coordinate certificate reach the hull-membership LP.
inline bool is_extreme_point(const std::vector<RationalPoint>& pts, std::size_t v,
                             std::size_t dim) {
    std::vector<std::size_t> subset(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) subset[i] = i;

    for (;;) {
        if (subset.size() == 1) return true;

        std::optional<std::size_t> narrow_coord;
        std::size_t narrow_size = subset.size();
        for (std::size_t j = 0; j < dim; ++j) {
            bool is_min = true, is_max = true;
            std::size_t ties = 0;
            for (std::size_t u : subset) {
                if (u == v) continue;
                if (pts[u][j] < pts[v][j]) is_min = false;
                else if (pts[u][j] > pts[v][j]) is_max = false;
                else ++ties;
                if (!is_min && !is_max) break;
            }
            if (!is_min && !is_max) continue;
            if (ties == 0) return true;  // strict extremum certificate
            if (ties + 1 < narrow_size) {
                narrow_coord = j;
                narrow_size = ties + 1;
            }
        }

        if (!narrow_coord) {
            std::vector<RationalPoint> others;
            others.reserve(subset.size() - 1);
            for (std::size_t u : subset)
                if (u != v) others.push_back(pts[u]);
            return !in_convex_hull(pts[v], others);
        }

        std::size_t j = *narrow_coord;
        std::vector<std::size_t> tied;
        for (std::size_t u : subset)
            if (pts[u][j] == pts[v][j]) tied.push_back(u);
        subset = std::move(tied);
    }
}

} // namespace detail

// Canonicalizes the vertex list: one representative per distinct coordinate
// vector (first label wins), keeping exactly the points not expressible as
// convex combinations of the other distinct points.
inline VPolytope extreme_points(const VPolytope& p) {
    std::vector<RationalPoint> unique;
    std::vector<std::string> unique_labels;
    for (std::size_t i = 0; i < p.size(); ++i) {
        bool seen = false;
        for (const auto& u : unique)
            if (u == p.vertices[i]) { seen = true; break; }
        if (!seen) {
            unique.push_back(p.vertices[i]);
            unique_labels.push_back(p.labels[i]);
        }
    }

    std::vector<RationalPoint> kept;
    std::vector<std::string> kept_labels;
    for (std::size_t i = 0; i < unique.size(); ++i) {
        if (detail::is_extreme_point(unique, i, p.dim)) {
            kept.push_back(unique[i]);
            kept_labels.push_back(unique_labels[i]);
        }
    }
    return VPolytope(p.dim, std::move(kept), std::move(kept_labels));
}

// Directed Hausdorff distance from hull(P) to hull(Q): the maximum over P's
// vertices of the LP distance to hull(Q). d(., hull(Q)) is convex, so the
// maximum over the hull is attained at a vertex.
inline Rational directed_hausdorff(const VPolytope& p, const VPolytope& q,
                                   const HilbertMetric& m) {
    Rational worst(0);
    for (const auto& v : p.vertices) {
        Rational d = point_to_hull_distance(v, q.vertices, m);
        if (d > worst) worst = d;
    }
    return worst;
}

inline Rational hausdorff_distance(const VPolytope& p, const VPolytope& q,
                                   const HilbertMetric& m) {
    if (p.dim != q.dim) throw domain_error("hausdorff_distance: dimension mismatch");
    return std::max(directed_hausdorff(p, q, m), directed_hausdorff(q, p, m));
}

inline Rational hausdorff_distance(const VPolytope& p, const VPolytope& q) {
    return hausdorff_distance(p, q, p.metric());
}

// True iff every convex combination of P's vertices that lands in
// hull(subset) puts zero weight outside subset. Decided by one LP that
// maximizes the outside mass over all such combinations.
inline bool is_face(const VPolytope& p, const std::vector<std::string>& subset) {
    std::vector<bool> inside(p.size(), false);
    for (const auto& label : subset) inside[p.index_of(label)] = true;

    std::vector<std::size_t> subset_idx;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (inside[i]) subset_idx.push_back(i);
    if (subset_idx.empty()) throw domain_error("is_face: empty subset");

    std::size_t n = p.size(), m = subset_idx.size();
    RationalMatrix a = linalg::zeros(p.dim + 2, n + m);
    std::vector<Rational> b(p.dim + 2, Rational(0));
    std::vector<Rational> c(n + m, Rational(0));
    for (std::size_t t = 0; t < p.dim; ++t) {
        for (std::size_t j = 0; j < n; ++j) a[t][j] = p.vertices[j][t];
        for (std::size_t j = 0; j < m; ++j) a[t][n + j] = -p.vertices[subset_idx[j]][t];
    }
    for (std::size_t j = 0; j < n; ++j) a[p.dim][j] = 1;
    b[p.dim] = 1;
    for (std::size_t j = 0; j < m; ++j) a[p.dim + 1][n + j] = 1;
    b[p.dim + 1] = 1;
    for (std::size_t j = 0; j < n; ++j)
        if (!inside[j]) c[j] = -1;  // maximize outside mass

    auto sol = lp::solve(std::move(a), std::move(b), std::move(c));
    if (!sol.optimal()) throw domain_error("is_face: combination LP infeasible");
    return sol.objective == 0;
}

// Affineness guarantees hull(f(V)) = f(hull(V)), so mapping vertex lists maps
// polytopes. Defined in affine.hpp; declared here for documentation locality.

// Exact coefficient of p on the segment [u, v]: p = l u + (1 - l) v with
// l in [0, 1], or nullopt. Solved coordinatewise, no LP needed.
inline std::optional<Rational> segment_coefficient(const RationalPoint& p,
                                                   const RationalPoint& u,
                                                   const RationalPoint& v) {
    if (p.dim() != u.dim() || p.dim() != v.dim())
        throw domain_error("segment_coefficient: dimension mismatch");
    std::optional<Rational> lambda;
    for (std::size_t t = 0; t < p.dim(); ++t) {
        if (u[t] == v[t]) {
            if (p[t] != u[t]) return std::nullopt;
            continue;
        }
        Rational l = (p[t] - v[t]) / (u[t] - v[t]);
        if (lambda && *lambda != l) return std::nullopt;
        if (!lambda) {
            if (l < 0 || l > 1) return std::nullopt;
            lambda = l;
        }
    }
    if (!lambda) lambda = Rational(0);  // u == v == p
    return lambda;
}

// Exact convex combination of a polytope's vertices.
inline RationalPoint combine(const VPolytope& p, const std::vector<Rational>& weights) {
    if (weights.size() != p.size()) throw domain_error("combine: weight count mismatch");
    RationalPoint out(std::vector<Rational>(p.dim, Rational(0)));
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (weights[j] == 0) continue;
        for (std::size_t t = 0; t < p.dim; ++t)
            if (p.vertices[j][t] != 0) out[t] += weights[j] * p.vertices[j][t];
    }
    return out;
}

// Mutual vertex containment, i.e. hull equality.
inline bool same_hull(const VPolytope& p, const VPolytope& q) {
    if (p.dim != q.dim) throw domain_error("same_hull: dimension mismatch");
    for (const auto& v : p.vertices)
        if (!in_convex_hull(v, q.vertices)) return false;
    for (const auto& v : q.vertices)
        if (!in_convex_hull(v, p.vertices)) return false;
    return true;
}

} // namespace simplexforge
