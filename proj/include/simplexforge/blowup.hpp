#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "simplexforge/cone.hpp"
#include "simplexforge/error.hpp"
#include "simplexforge/scheme.hpp"
#include "simplexforge/sextension.hpp"

namespace simplexforge {

// The stage polytope blown up by one double cone per scheme triple: apex
// c1(p_i) sits over embed(x_i), apex c2(p_i) over embed(y_i). Repeated
// triples get their own apex pairs.
struct BlowupStage {
    SStage base;
    MetricScheme scheme;
    LabeledCone cone;  // base polytope = base.poly, 2 * |scheme| apexes
};

inline BlowupStage build_blowup(const SStage& stage, const MetricScheme& scheme) {
    auto enumerated = [&](const std::string& label) {
        for (std::size_t i = 0; i < stage.n; ++i)
            if (stage.enumeration[i] == label) return true;
        return false;
    };
    std::vector<std::pair<RationalPoint, std::string>> points;
    points.reserve(2 * scheme.size());
    for (std::size_t t = 0; t < scheme.size(); ++t) {
        const auto& triple = scheme.triples[t];
        if (!enumerated(triple.x) || !enumerated(triple.y))
            throw domain_error("build_blowup: scheme point outside the stage enumeration");
        std::string tag = "p" + std::to_string(t + 1);
        points.push_back({embed_point(stage, triple.x), "c1(" + tag + ")"});
        points.push_back({embed_point(stage, triple.y), "c2(" + tag + ")"});
    }
    // Apex base points are stage vertices, so the hull check is vacuous here.
    LabeledCone cone = detail::assemble_cone(stage.poly, points, false);
    return BlowupStage{stage, scheme, std::move(cone)};
}

enum class QRule { Quartiles, Midpoint };

// One coding point on the open segment between an apex pair: the convex
// combination q c1(p_n) + (1-q) c2(p_n) with q inside the triple's window.
struct Marker {
    std::size_t triple = 0;  // index into the scheme
    Rational q;
    RationalPoint point;     // in blow-up coordinates
};

struct MarkerSet {
    std::vector<Marker> markers;

    std::size_t size() const { return markers.size(); }
};

// Emits, per triple, the q-values of the rule (default: midpoint and the two
// quartile points of the window) and the exact combination points.
inline MarkerSet marker_points(const BlowupStage& blowup, QRule rule = QRule::Quartiles) {
    MarkerSet out;
    for (std::size_t t = 0; t < blowup.scheme.size(); ++t) {
        const auto& triple = blowup.scheme.triples[t];
        std::vector<Rational> qs;
        Rational mid = (triple.lo + triple.hi) / 2;
        if (rule == QRule::Quartiles) {
            qs = {(3 * triple.lo + triple.hi) / 4, mid, (triple.lo + 3 * triple.hi) / 4};
        } else {
            qs = {mid};
        }
        const RationalPoint& c1 = blowup.cone.apex_vertex(2 * t);
        const RationalPoint& c2 = blowup.cone.apex_vertex(2 * t + 1);
        for (const auto& q : qs) {
            if (q <= 0 || q >= 1 || !triple.window_contains(q))
                throw domain_error("marker_points: q-rule produced a value outside the window");
            std::vector<Rational> coords(blowup.cone.poly.dim);
            for (std::size_t i = 0; i < coords.size(); ++i)
                coords[i] = q * c1[i] + (1 - q) * c2[i];
            out.markers.push_back({t, q, RationalPoint(std::move(coords))});
        }
    }
    return out;
}

// The finite-depth coded simplex: blow-up stage plus one cone per marker
// point. Total dimension = stage k + 2 * |scheme| + #markers.
struct PhiStage {
    BlowupStage blowup;
    MarkerSet markers;
    LabeledCone marker_cone;  // base polytope = blowup.cone.poly

    const VPolytope& poly() const { return marker_cone.poly; }
};

struct PhiParams {
    std::vector<Rational> widths = {rat(1, 2), rat(1, 4), rat(1, 8)};
    std::size_t depth = 0;      // 0: one full repetition cycle
    QRule q_rule = QRule::Quartiles;
};

inline PhiStage build_phi_over_stage(const SStage& stage, const PhiParams& params = {}) {
    std::size_t depth = params.depth;
    if (depth == 0) depth = full_cycle_length(stage.base, stage.enumeration, params.widths);
    MetricScheme scheme = build_scheme(stage.base, stage.enumeration, params.widths, depth);
    BlowupStage blowup = build_blowup(stage, scheme);
    MarkerSet markers = marker_points(blowup, params.q_rule);

    std::vector<std::pair<RationalPoint, std::string>> points;
    points.reserve(markers.size());
    for (std::size_t j = 0; j < markers.size(); ++j)
        points.push_back({markers.markers[j].point, "c(m" + std::to_string(j + 1) + ")"});
    LabeledCone marker_cone = detail::assemble_cone(blowup.cone.poly, points, false);
    return PhiStage{std::move(blowup), std::move(markers), std::move(marker_cone)};
}

// Composes build_stage -> build_scheme -> build_blowup -> marker_points ->
// iterated marker cone, fully labeled. F must contain the distance functions
// to the enumerated points among its first k coordinates for the decoder's
// geometry to work; the default family is exactly d_X D.
inline PhiStage build_phi(const FiniteMetricSpace& x, const Enumeration& d,
                          const std::vector<PointFunction>& f, std::size_t n, std::size_t k,
                          const PhiParams& params = {}) {
    return build_phi_over_stage(build_stage(x, d, f, n, k), params);
}

inline PhiStage build_phi(const FiniteMetricSpace& x, const PhiParams& params = {}) {
    return build_phi_over_stage(build_distance_stage(x), params);
}

} // namespace simplexforge
