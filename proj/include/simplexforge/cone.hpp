#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "simplexforge/affine.hpp"
#include "simplexforge/error.hpp"
#include "simplexforge/geometry.hpp"
#include "simplexforge/polytope.hpp"
#include "simplexforge/rational.hpp"

namespace simplexforge {

struct ApexRecord {
    std::string label;
    RationalPoint base_point;  // s, in base coordinates
    std::size_t coord = 0;     // the cone coordinate this apex owns
};

// An iterated cone over a vertex-list polytope. Each cone step appends one
// coordinate: apex j is the unique vertex with coordinate base.dim + j equal
// to 1, every base vertex carries zeros there, and all apexes sit over points
// of the base hull. Later cone coordinates carry geometrically smaller
// Hilbert weights, mirroring how deep stages matter less in the limit metric.
struct LabeledCone {
    VPolytope base;
    std::vector<ApexRecord> apexes;
    VPolytope poly;  // dim = base.dim + apexes.size()

    std::size_t apex_index(const std::string& label) const {
        for (std::size_t j = 0; j < apexes.size(); ++j)
            if (apexes[j].label == label) return j;
        throw domain_error("cone: unknown apex label \"" + label + "\"");
    }

    const RationalPoint& apex_vertex(std::size_t j) const {
        return poly.vertices[base.size() + j];
    }
};

namespace detail {

inline RationalPoint lift_point(const RationalPoint& p, std::size_t extra) {
    std::vector<Rational> coords = p.coords;
    coords.resize(coords.size() + extra, Rational(0));
    return RationalPoint(std::move(coords));
}

inline LabeledCone assemble_cone(const VPolytope& base,
                                 const std::vector<std::pair<RationalPoint, std::string>>& points,
                                 bool check_hull) {
    std::size_t k = base.dim, n = points.size();
    if (check_hull)
        for (const auto& [s, label] : points) {
            if (s.dim() != k) throw domain_error("cone: apex base point dimension mismatch");
            if (!in_convex_hull(s, base.vertices))
                throw domain_error("cone: point for apex \"" + label + "\" lies outside the base hull");
        }

    std::vector<RationalPoint> verts;
    std::vector<std::string> labels;
    verts.reserve(base.size() + n);
    for (const auto& v : base.vertices) verts.push_back(lift_point(v, n));
    labels = base.labels;

    LabeledCone cone;
    cone.base = base;
    for (std::size_t j = 0; j < n; ++j) {
        RationalPoint apex = lift_point(points[j].first, n);
        apex[k + j] = 1;
        verts.push_back(std::move(apex));
        labels.push_back(points[j].second);
        cone.apexes.push_back({points[j].second, points[j].first, k + j});
    }
    cone.poly = VPolytope(k + n, std::move(verts), std::move(labels));
    return cone;
}

} // namespace detail

// conv((P x {0}) u (s, 1)): one new coordinate, the lifted base plus the
// apex over s.
inline LabeledCone cone(const VPolytope& p, const RationalPoint& s, const std::string& apex_label) {
    return detail::assemble_cone(p, {{s, apex_label}}, true);
}

// Depth-n cone with apexes in list order; the empty list returns the base
// unchanged (dimension included).
inline LabeledCone iterated_cone(const VPolytope& p,
                                 const std::vector<std::pair<RationalPoint, std::string>>& points) {
    return detail::assemble_cone(p, points, true);
}

// Unique barycentric split of a cone point across apexes and base. Apex j is
// the only vertex with a nonzero cone coordinate base.dim + j, so its weight
// can be read off y directly; this is the closed form of peeling the apexes
// last-to-first via base = (y - t s) / (1 - t).
struct ConeDecomposition {
    RationalPoint base_part;             // in base coordinates
    std::vector<Rational> apex_weights;  // one per apex, in [0,1]

    Rational base_weight() const {
        Rational w(1);
        for (const auto& t : apex_weights) w -= t;
        return w;
    }
};

inline ConeDecomposition decompose(const LabeledCone& c, const RationalPoint& y) {
    if (y.dim() != c.poly.dim) throw domain_error("decompose: dimension mismatch");
    if (!in_convex_hull(y, c.poly.vertices))
        throw domain_error("decompose: point lies outside the cone");

    std::size_t k = c.base.dim, n = c.apexes.size();
    ConeDecomposition out;
    out.apex_weights.resize(n);
    Rational apex_total(0);
    for (std::size_t j = 0; j < n; ++j) {
        out.apex_weights[j] = y[k + j];
        apex_total += y[k + j];
    }

    std::vector<Rational> base(k);
    for (std::size_t t = 0; t < k; ++t) {
        base[t] = y[t];
        for (std::size_t j = 0; j < n; ++j)
            if (out.apex_weights[j] != 0) base[t] -= out.apex_weights[j] * c.apexes[j].base_point[t];
    }
    Rational base_coeff = Rational(1) - apex_total;
    if (base_coeff > 0) {
        for (auto& v : base) v /= base_coeff;
    } else {
        // Pure apex mixture; the base part carries weight zero, so report the
        // projected apex mixture for definiteness.
        for (std::size_t t = 0; t < k; ++t) {
            base[t] = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (out.apex_weights[j] != 0) base[t] += out.apex_weights[j] * c.apexes[j].base_point[t];
        }
    }
    out.base_part = RationalPoint(std::move(base));
    return out;
}

inline RationalPoint recombine(const LabeledCone& c, const ConeDecomposition& d) {
    std::size_t k = c.base.dim, n = c.apexes.size();
    std::vector<Rational> y(k + n, Rational(0));
    Rational base_coeff = d.base_weight();
    for (std::size_t t = 0; t < k; ++t) {
        if (base_coeff != 0) y[t] = base_coeff * d.base_part[t];
        for (std::size_t j = 0; j < n; ++j)
            if (d.apex_weights[j] != 0) y[t] += d.apex_weights[j] * c.apexes[j].base_point[t];
    }
    for (std::size_t j = 0; j < n; ++j) y[k + j] = d.apex_weights[j];
    return RationalPoint(std::move(y));
}

// The explicit affine homeomorphism cone(cone(S,s1),s2) -> cone(cone(S,s2),s1).
// Writing y = (1-b)((1-a)x + a c(s1)) + b c'(s2), the image is
// (1-g)((1-d)x + d c(s2)) + g c'(s1) with g = (1-b)a and d = b/(1-a(1-b)).
// The singular configuration a=1, b=0 is the inner apex c(s1), mapped to
// c'(s1) by the convention consistent with the formula's limit.
inline RationalPoint double_cone_swap(const LabeledCone& c12, const RationalPoint& y) {
    if (c12.apexes.size() != 2) throw domain_error("double_cone_swap: expected exactly two apexes");
    if (y.dim() != c12.poly.dim) throw domain_error("double_cone_swap: dimension mismatch");
    if (!in_convex_hull(y, c12.poly.vertices))
        throw domain_error("double_cone_swap: point lies outside the double cone");

    std::size_t k = c12.base.dim;
    const RationalPoint& s1 = c12.apexes[0].base_point;
    const RationalPoint& s2 = c12.apexes[1].base_point;

    Rational beta = y[k + 1];
    std::vector<Rational> z(k + 2, Rational(0));

    if (beta == 1) {  // y = c'(s2): the outer apex becomes the inner one
        for (std::size_t t = 0; t < k; ++t) z[t] = s2[t];
        z[k] = 1;
        return RationalPoint(std::move(z));
    }

    Rational alpha = y[k] / (1 - beta);
    if (alpha == 1 && beta == 0) {  // y = c(s1), the singular configuration
        for (std::size_t t = 0; t < k; ++t) z[t] = s1[t];
        z[k + 1] = 1;
        return RationalPoint(std::move(z));
    }

    Rational gamma = (1 - beta) * alpha;
    Rational delta = beta / (1 - alpha * (1 - beta));
    Rational x_coeff = (1 - beta) * (1 - alpha);  // equals (1-gamma)(1-delta)

    for (std::size_t t = 0; t < k; ++t) {
        Rational v = (1 - gamma) * delta * s2[t] + gamma * s1[t];
        if (x_coeff != 0) {
            Rational x_t = (y[t] - (1 - beta) * alpha * s1[t] - beta * s2[t]) / x_coeff;
            v += x_coeff * x_t;
        }
        z[t] = v;
    }
    z[k] = (1 - gamma) * delta;
    z[k + 1] = gamma;
    return RationalPoint(std::move(z));
}

// The swapped-double-cone container with apexes in the opposite order, for
// round-trip checks.
inline LabeledCone swapped_double_cone(const LabeledCone& c12) {
    if (c12.apexes.size() != 2) throw domain_error("swapped_double_cone: expected two apexes");
    return detail::assemble_cone(
        c12.base,
        {{c12.apexes[1].base_point, c12.apexes[1].label},
         {c12.apexes[0].base_point, c12.apexes[0].label}},
        false);
}

// Extends an affine self-map of the base to a cone-to-cone map sending apex
// c(s1) to apex c(s2): (x, t) -> (phi(x) + t (s2 - phi(s1)), t). Gated by
// d(phi(s1), s2) < eps; the projection discrepancy is then below eps at every
// vertex, hence everywhere.
inline AffineMap extend_affine_to_cone(const AffineMap& phi, const RationalPoint& s1,
                                       const RationalPoint& s2, const Rational& eps) {
    std::size_t k = phi.cols();
    if (phi.rows() != k) throw domain_error("extend_affine_to_cone: map must be a self-map");
    if (s1.dim() != k || s2.dim() != k)
        throw domain_error("extend_affine_to_cone: point dimension mismatch");
    RationalPoint phi_s1 = phi.apply(s1);
    Rational gap = hilbert_distance(phi_s1, s2, HilbertMetric(k));
    if (gap >= eps)
        throw domain_error("extend_affine_to_cone: d(phi(s1), s2) = " + format_rational(gap) +
                           " is not below " + format_rational(eps));

    RationalMatrix m = linalg::zeros(k + 1, k + 1);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) m[r][c] = phi.matrix[r][c];
        m[r][k] = s2[r] - phi_s1[r];
    }
    m[k][k] = 1;
    std::vector<Rational> off = phi.offset.coords;
    off.push_back(Rational(0));
    return AffineMap(std::move(m), RationalPoint(std::move(off)));
}

struct ConeExtremeReport {
    std::vector<std::string> base_extreme_labels;
    std::vector<std::string> apex_labels;
    std::vector<std::string> unexpected;  // extreme labels outside the partition
    std::vector<std::string> missing;     // expected labels that are not extreme
    bool exhaustive = false;
};

// Computes ext(cone) exactly and checks it equals
// (lifted ext(base)) u (all apexes).
inline ConeExtremeReport classify_extreme(const LabeledCone& c) {
    ConeExtremeReport report;
    VPolytope ext_cone = extreme_points(c.poly);
    VPolytope ext_base = extreme_points(c.base);

    std::vector<std::string> expected = ext_base.labels;
    for (const auto& a : c.apexes) expected.push_back(a.label);
    std::sort(expected.begin(), expected.end());

    std::vector<std::string> got = ext_cone.labels;
    std::sort(got.begin(), got.end());

    report.base_extreme_labels = ext_base.labels;
    for (const auto& a : c.apexes) report.apex_labels.push_back(a.label);
    std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(),
                        std::back_inserter(report.unexpected));
    std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(),
                        std::back_inserter(report.missing));
    report.exhaustive = report.unexpected.empty() && report.missing.empty();
    return report;
}

// Exact Hilbert distance from an apex to the hull of all other extreme
// points; positivity is the finite-stage isolation certificate.
inline Rational isolation_margin(const LabeledCone& c, const std::string& apex_label) {
    std::size_t j = c.apex_index(apex_label);
    const RationalPoint& apex = c.apex_vertex(j);

    VPolytope ext = extreme_points(c.poly);
    std::vector<RationalPoint> others;
    for (std::size_t i = 0; i < ext.size(); ++i)
        if (ext.labels[i] != apex_label) others.push_back(ext.vertices[i]);
    if (others.empty()) throw domain_error("isolation_margin: no other extreme points");
    return point_to_hull_distance(apex, others, c.poly.metric());
}

// The cone over the selected apexes only, other cone coordinates dropped;
// apex order is preserved.
inline LabeledCone subcone(const LabeledCone& c, const std::vector<std::string>& apex_labels) {
    std::vector<bool> keep(c.apexes.size(), false);
    for (const auto& label : apex_labels) keep[c.apex_index(label)] = true;
    std::vector<std::pair<RationalPoint, std::string>> points;
    for (std::size_t j = 0; j < c.apexes.size(); ++j)
        if (keep[j]) points.push_back({c.apexes[j].base_point, c.apexes[j].label});
    return detail::assemble_cone(c.base, points, false);
}

} // namespace simplexforge
