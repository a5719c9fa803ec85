#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "simplexforge/affine.hpp"
#include "simplexforge/blowup.hpp"
#include "simplexforge/codec.hpp"
#include "simplexforge/cone.hpp"
#include "simplexforge/json_io.hpp"
#include "simplexforge/katetov.hpp"
#include "simplexforge/metric_space.hpp"
#include "simplexforge/parallel.hpp"
#include "simplexforge/polytope.hpp"
#include "simplexforge/report.hpp"
#include "simplexforge/rng.hpp"
#include "simplexforge/roundtrip.hpp"
#include "simplexforge/saturation.hpp"
#include "simplexforge/sextension.hpp"
#include "simplexforge/testgen.hpp"
#include "simplexforge/twisted.hpp"

namespace simplexforge::verify {

struct Options {
    std::uint64_t seed = 1;
    std::size_t polytopes = 20;          // generated polytopes per geometry check
    std::size_t cone_pairs = 50;         // (polytope, interior point) pairs
    std::size_t swap_configs = 5;        // double-cone configurations
    std::size_t swap_points = 100;       // seeded points per configuration
    std::size_t proximity_maps = 50;     // affine map pairs
    std::size_t proximity_samples = 100; // hull samples per pair
    std::size_t katetov_instances = 200;
    std::size_t saturation_spaces = 100;
    std::size_t invariance_pairs = 20;   // isometric and non-isometric pairs each
    std::size_t corpus_points = 6;
};

namespace detail {

inline std::string point_str(const RationalPoint& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) s += ",";
        s += format_rational(p[i]);
    }
    return s + ")";
}

inline VPolytope lifted_stage(const BlowupStage& blowup) {
    std::size_t extra = 2 * blowup.scheme.size();
    std::vector<RationalPoint> verts;
    for (const auto& v : blowup.base.poly.vertices)
        verts.push_back(simplexforge::detail::lift_point(v, extra));
    return VPolytope(blowup.cone.poly.dim, std::move(verts), blowup.base.poly.labels);
}

} // namespace detail

// ---------------------------------------------------------------- geometry

inline CheckResult check_extreme_idempotent(const Options& opt) {
    Rng rng(opt.seed * 11 + 1);
    for (std::size_t t = 0; t < opt.polytopes; ++t) {
        VPolytope p = testgen::random_polytope(rng, 1 + rng.below(4), 1 + rng.below(6));
        VPolytope once = extreme_points(p);
        VPolytope twice = extreme_points(once);
        if (once.vertices != twice.vertices || once.labels != twice.labels)
            return {"extreme-idempotent", false, "instance " + std::to_string(t),
                    "second pass changed the vertex list"};
    }
    return {"extreme-idempotent", true, std::to_string(opt.polytopes) + " polytopes", ""};
}

inline CheckResult check_hull_consistency(const Options& opt) {
    Rng rng(opt.seed * 11 + 2);
    for (std::size_t t = 0; t < opt.polytopes; ++t) {
        VPolytope p = testgen::random_polytope(rng, 1 + rng.below(4), 2 + rng.below(5));
        VPolytope kept = extreme_points(p);
        for (std::size_t i = 0; i < p.size(); ++i) {
            bool removed = true;
            for (std::size_t j = 0; j < kept.size(); ++j)
                if (kept.labels[j] == p.labels[i]) { removed = false; break; }
            if (removed && !in_convex_hull(p.vertices[i], kept.vertices))
                return {"hull-consistency", false, "instance " + std::to_string(t),
                        "removed vertex " + p.labels[i] + " is outside the kept hull"};
        }
    }
    return {"hull-consistency", true, std::to_string(opt.polytopes) + " polytopes", ""};
}

inline CheckResult check_hausdorff_metric(const Options& opt) {
    Rng rng(opt.seed * 11 + 3);
    for (std::size_t t = 0; t < opt.polytopes; ++t) {
        std::size_t dim = 1 + rng.below(3);
        HilbertMetric metric(dim);
        VPolytope p = testgen::random_polytope(rng, dim, 1 + rng.below(4));
        VPolytope q = testgen::random_polytope(rng, dim, 1 + rng.below(4));
        VPolytope r = testgen::random_polytope(rng, dim, 1 + rng.below(4));

        Rational pq = hausdorff_distance(p, q, metric);
        if (pq != hausdorff_distance(q, p, metric))
            return {"hausdorff-metric", false, "instance " + std::to_string(t), "asymmetric"};
        if ((pq == 0) != same_hull(p, q))
            return {"hausdorff-metric", false, "instance " + std::to_string(t),
                    "zero distance does not match hull equality"};
        Rational qr = hausdorff_distance(q, r, metric);
        Rational pr = hausdorff_distance(p, r, metric);
        if (pr > pq + qr)
            return {"hausdorff-metric", false, "instance " + std::to_string(t),
                    "triangle inequality fails"};
    }
    return {"hausdorff-metric", true, std::to_string(opt.polytopes) + " triples", ""};
}

inline CheckResult check_affine_inverse_roundtrip(const Options& opt) {
    Rng rng(opt.seed * 11 + 4);
    std::size_t done = 0;
    while (done < opt.polytopes) {
        std::size_t dim = 1 + rng.below(3);
        AffineMap f = testgen::random_cube_map(rng, dim);
        auto inv = f.inverse();
        if (!inv) continue;  // skip singular draws deterministically
        VPolytope p = testgen::random_polytope(rng, dim, 1 + rng.below(5));
        VPolytope image = apply_affine(f, p);
        for (std::size_t i = 0; i < p.size(); ++i)
            if (inv->apply(image.vertices[i]) != p.vertices[i])
                return {"affine-inverse-roundtrip", false, "instance " + std::to_string(done),
                        "vertex " + p.labels[i] + " not restored"};
        ++done;
    }
    return {"affine-inverse-roundtrip", true, std::to_string(opt.polytopes) + " maps", ""};
}

// Two affine maps within eps at every vertex stay within eps on the hull;
// eps is taken as the exact vertex-discrepancy maximum.
inline CheckResult check_affine_proximity(const Options& opt) {
    Rng rng(opt.seed * 11 + 5);
    for (std::size_t t = 0; t < opt.proximity_maps; ++t) {
        std::size_t dim = 1 + rng.below(3);
        HilbertMetric metric(dim);
        VPolytope p = testgen::random_polytope(rng, dim, 2 + rng.below(4));
        AffineMap f = testgen::random_cube_map(rng, dim);
        AffineMap g = testgen::random_cube_map(rng, dim);

        Rational eps(0);
        for (const auto& v : p.vertices) {
            Rational d = hilbert_distance(f.apply(v), g.apply(v), metric);
            if (d > eps) eps = d;
        }
        for (std::size_t s = 0; s < opt.proximity_samples; ++s) {
            RationalPoint x = testgen::random_hull_point(rng, p);
            if (hilbert_distance(f.apply(x), g.apply(x), metric) > eps)
                return {"affine-proximity", false,
                        "map pair " + std::to_string(t) + ", sample " + std::to_string(s),
                        "hull point exceeds the vertex bound at " + detail::point_str(x)};
        }
    }
    return {"affine-proximity", true,
            std::to_string(opt.proximity_maps) + " map pairs x " +
                std::to_string(opt.proximity_samples) + " samples", ""};
}

inline std::vector<CheckResult> geometry_suite(const Options& opt) {
    return {check_extreme_idempotent(opt), check_hull_consistency(opt),
            check_hausdorff_metric(opt), check_affine_inverse_roundtrip(opt),
            check_affine_proximity(opt)};
}

// ------------------------------------------------------------------- cones

inline CheckResult check_cone_extreme_law(const Options& opt) {
    Rng rng(opt.seed * 13 + 1);
    for (std::size_t t = 0; t < opt.cone_pairs; ++t) {
        VPolytope p = testgen::random_polytope(rng, 1 + rng.below(3), 1 + rng.below(5));
        RationalPoint s = testgen::random_relative_interior_point(rng, p);
        LabeledCone c = cone(p, s, "apex");
        std::size_t before = extreme_points(p).size();
        std::size_t after = extreme_points(c.poly).size();
        if (after != before + 1)
            return {"cone-extreme-law", false, "instance " + std::to_string(t),
                    "|ext(cone)| = " + std::to_string(after) + ", |ext(base)| = " +
                        std::to_string(before)};
    }
    return {"cone-extreme-law", true, std::to_string(opt.cone_pairs) + " pairs", ""};
}

inline CheckResult check_swap_formula() {
    // The half/half instance: gamma = (1-b)a = 1/4, delta = b/(1-a(1-b)) = 2/3.
    VPolytope segment(1, {RationalPoint({rat(0)}), RationalPoint({rat(1)})}, {"e0", "e1"});
    RationalPoint s1({rat(1, 4)}), s2({rat(3, 4)});
    LabeledCone c12 = iterated_cone(segment, {{s1, "c(s1)"}, {s2, "c(s2)"}});
    // y with alpha = beta = 1/2 over x = (0):
    // y = (1-b)((1-a)x + a c(s1)) + b c'(s2)
    Rational a = rat(1, 2), b = rat(1, 2);
    RationalPoint x({rat(0)});
    std::vector<Rational> y(3, Rational(0));
    y[0] = (1 - b) * ((1 - a) * x[0] + a * s1[0]) + b * s2[0];
    y[1] = (1 - b) * a;
    y[2] = b;
    RationalPoint z = double_cone_swap(c12, RationalPoint(y));
    Rational gamma = z[2];
    Rational delta = z[1] / (1 - gamma);
    if (gamma != rat(1, 4) || delta != rat(2, 3))
        return {"double-cone-swap-formula", false,
                "gamma = " + format_rational(gamma) + ", delta = " + format_rational(delta),
                "expected (1/4, 2/3)"};
    return {"double-cone-swap-formula", true, "gamma = 1/4, delta = 2/3", ""};
}

inline CheckResult check_swap_involution(const Options& opt) {
    Rng rng(opt.seed * 13 + 2);
    for (std::size_t cfg = 0; cfg < opt.swap_configs; ++cfg) {
        VPolytope p = testgen::random_polytope(rng, 1 + rng.below(3), 2 + rng.below(3));
        RationalPoint s1 = testgen::random_hull_point(rng, p);
        RationalPoint s2 = testgen::random_hull_point(rng, p);
        LabeledCone c12 = iterated_cone(p, {{s1, "c(s1)"}, {s2, "c(s2)"}});
        LabeledCone c21 = swapped_double_cone(c12);
        for (std::size_t t = 0; t < opt.swap_points; ++t) {
            RationalPoint y = testgen::random_hull_point(rng, c12.poly);
            RationalPoint z = double_cone_swap(c12, y);
            RationalPoint back = double_cone_swap(c21, z);
            if (back != y)
                return {"swap-involution", false,
                        "configuration " + std::to_string(cfg) + ", point " + std::to_string(t),
                        detail::point_str(y) + " -> " + detail::point_str(z) + " -> " +
                            detail::point_str(back)};
        }
    }
    return {"swap-involution", true,
            std::to_string(opt.swap_configs) + " configurations x " +
                std::to_string(opt.swap_points) + " points", ""};
}

inline CheckResult check_swap_hull_preserving(const Options& opt) {
    Rng rng(opt.seed * 13 + 3);
    for (std::size_t cfg = 0; cfg < opt.swap_configs; ++cfg) {
        VPolytope p = testgen::random_polytope(rng, 1 + rng.below(3), 2 + rng.below(3));
        RationalPoint s1 = testgen::random_hull_point(rng, p);
        RationalPoint s2 = testgen::random_hull_point(rng, p);
        LabeledCone c12 = iterated_cone(p, {{s1, "c(s1)"}, {s2, "c(s2)"}});
        LabeledCone c21 = swapped_double_cone(c12);

        std::vector<std::vector<Rational>> images, targets;
        for (const auto& v : c12.poly.vertices)
            images.push_back(double_cone_swap(c12, v).coords);
        for (const auto& v : c21.poly.vertices) targets.push_back(v.coords);
        std::sort(images.begin(), images.end());
        std::sort(targets.begin(), targets.end());
        if (images != targets)
            return {"swap-hull-preserving", false, "configuration " + std::to_string(cfg),
                    "vertex image set differs from the swapped cone's vertices"};
    }
    return {"swap-hull-preserving", true, std::to_string(opt.swap_configs) + " configurations", ""};
}

inline CheckResult check_decompose_recombine(const Options& opt) {
    Rng rng(opt.seed * 13 + 4);
    for (std::size_t cfg = 0; cfg < opt.swap_configs; ++cfg) {
        VPolytope p = testgen::random_polytope(rng, 1 + rng.below(3), 2 + rng.below(3));
        std::vector<std::pair<RationalPoint, std::string>> apex_points;
        std::size_t apex_count = 1 + rng.below(3);
        for (std::size_t j = 0; j < apex_count; ++j)
            apex_points.push_back({testgen::random_hull_point(rng, p), "v" + std::to_string(100 + j)});
        LabeledCone c = iterated_cone(p, apex_points);
        for (std::size_t t = 0; t < 20; ++t) {
            RationalPoint y = testgen::random_hull_point(rng, c.poly);
            ConeDecomposition d = decompose(c, y);
            if (recombine(c, d) != y)
                return {"decompose-recombine", false,
                        "configuration " + std::to_string(cfg) + ", point " + std::to_string(t),
                        detail::point_str(y)};
        }
        // Apex-only and lifted-vertex decompositions stay exact as well.
        for (std::size_t j = 0; j < apex_count; ++j) {
            ConeDecomposition d = decompose(c, c.apex_vertex(j));
            if (d.apex_weights[j] != 1 || recombine(c, d) != c.apex_vertex(j))
                return {"decompose-recombine", false, "apex " + std::to_string(j),
                        "apex-only decomposition failed"};
        }
    }
    return {"decompose-recombine", true, std::to_string(opt.swap_configs) + " configurations", ""};
}

inline CheckResult check_extend_affine_bound(const Options& opt) {
    Rng rng(opt.seed * 13 + 5);
    for (std::size_t t = 0; t < opt.polytopes; ++t) {
        std::size_t dim = 1 + rng.below(3);
        HilbertMetric metric(dim);
        VPolytope p = testgen::random_polytope(rng, dim, 2 + rng.below(3));
        AffineMap phi = testgen::random_cube_map(rng, dim);
        RationalPoint s1 = testgen::random_hull_point(rng, p);
        RationalPoint s2 = testgen::random_hull_point(rng, p);

        Rational gap = hilbert_distance(phi.apply(s1), s2, metric);
        Rational eps = gap + rat(1, 8);
        AffineMap ext = extend_affine_to_cone(phi, s1, s2, eps);

        LabeledCone c = cone(p, s1, "apex");
        Rational worst(0);
        for (const auto& v : c.poly.vertices) {
            RationalPoint image = ext.apply(v);
            RationalPoint proj_in(std::vector<Rational>(v.coords.begin(), v.coords.end() - 1));
            RationalPoint proj_out(std::vector<Rational>(image.coords.begin(), image.coords.end() - 1));
            Rational d = hilbert_distance(phi.apply(proj_in), proj_out, metric);
            if (d > worst) worst = d;
        }
        if (worst >= eps)
            return {"extend-affine-bound", false, "instance " + std::to_string(t),
                    "vertex discrepancy " + format_rational(worst) + " >= eps " +
                        format_rational(eps)};
    }
    return {"extend-affine-bound", true, std::to_string(opt.polytopes) + " extensions", ""};
}

inline CheckResult check_subcone_is_face(const Options& opt) {
    Rng rng(opt.seed * 13 + 6);
    for (std::size_t cfg = 0; cfg < opt.swap_configs; ++cfg) {
        VPolytope p = testgen::random_polytope(rng, 1 + rng.below(2), 2 + rng.below(3));
        std::size_t apex_count = 2 + rng.below(2);
        std::vector<std::pair<RationalPoint, std::string>> apex_points;
        for (std::size_t j = 0; j < apex_count; ++j)
            apex_points.push_back({testgen::random_hull_point(rng, p), "v" + std::to_string(100 + j)});
        LabeledCone c = iterated_cone(p, apex_points);

        std::vector<std::string> subset;
        for (std::size_t j = 0; j < apex_count; ++j)
            if (rng.coin() || j == 0) subset.push_back(apex_points[j].second);
        LabeledCone sub = subcone(c, subset);
        if (!is_face(c.poly, sub.poly.labels))
            return {"subcone-is-face", false, "configuration " + std::to_string(cfg),
                    "subcone vertex set is not a face"};
    }
    return {"subcone-is-face", true, std::to_string(opt.swap_configs) + " configurations", ""};
}

inline CheckResult check_isolation_margins(const Options& opt) {
    Rng rng(opt.seed * 13 + 7);
    for (std::size_t cfg = 0; cfg < opt.swap_configs; ++cfg) {
        VPolytope p = testgen::random_polytope(rng, 1 + rng.below(2), 2 + rng.below(3));
        RationalPoint s = testgen::random_hull_point(rng, p);
        // Two stacked apexes over the same point still separate cleanly.
        LabeledCone c = iterated_cone(p, {{s, "v100"}, {s, "v101"}});
        for (const auto& label : {std::string("v100"), std::string("v101")}) {
            Rational margin = isolation_margin(c, label);
            if (margin <= 0)
                return {"isolation-margin-positive", false, "configuration " + std::to_string(cfg),
                        "margin of " + label + " = " + format_rational(margin)};
        }
    }
    return {"isolation-margin-positive", true, std::to_string(opt.swap_configs) + " configurations",
            ""};
}

inline std::vector<CheckResult> cones_suite(const Options& opt) {
    return {check_cone_extreme_law(opt), check_swap_formula(), check_swap_involution(opt),
            check_swap_hull_preserving(opt), check_decompose_recombine(opt),
            check_extend_affine_bound(opt), check_subcone_is_face(opt),
            check_isolation_margins(opt)};
}

// --------------------------------------------------------------------- sext

inline CheckResult check_vertex_embedding_agreement(const Options& opt) {
    for (const auto& x : testgen::corpus(opt.seed, opt.corpus_points)) {
        SStage stage = build_distance_stage(x);
        for (std::size_t i = 0; i < stage.n; ++i)
            if (embed_point(stage, stage.enumeration[i]) != stage.poly.vertices[i])
                return {"vertex-embedding-agreement", false, "space of " + std::to_string(x.size()),
                        "vertex " + stage.enumeration[i]};
    }
    return {"vertex-embedding-agreement", true, "corpus", ""};
}

inline CheckResult check_lipschitz_embedding(const Options& opt) {
    for (const auto& x : testgen::corpus(opt.seed, opt.corpus_points)) {
        SStage stage = build_distance_stage(x);
        HilbertMetric metric = stage.poly.metric();
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = i + 1; j < x.size(); ++j) {
                Rational hd = hilbert_distance(embed_point(stage, x.labels[i]),
                                               embed_point(stage, x.labels[j]), metric);
                if (hd > x.d[i][j])
                    return {"lipschitz-embedding", false,
                            x.labels[i] + "," + x.labels[j],
                            format_rational(hd) + " > " + format_rational(x.d[i][j])};
            }
    }
    return {"lipschitz-embedding", true, "corpus, all pairs", ""};
}

inline CheckResult check_stage_monotonicity(const Options& opt) {
    for (const auto& x : testgen::corpus(opt.seed, opt.corpus_points)) {
        if (x.size() < 2) continue;
        Enumeration d = Enumeration::all_of(x);
        auto f = distance_family(x, d.labels);
        for (std::size_t n = 1; n < x.size(); ++n) {
            SStage small = build_stage(x, d, f, n, x.size());
            SStage big = build_stage(x, d, f, n + 1, x.size());
            for (const auto& v : small.poly.vertices)
                if (!in_convex_hull(v, big.poly.vertices))
                    return {"stage-monotonicity", false, "n = " + std::to_string(n),
                            "stage vertex left the next stage's hull"};
        }
    }
    return {"stage-monotonicity", true, "corpus, all prefixes", ""};
}

inline CheckResult check_simplex_certificate(const Options& opt) {
    for (const auto& x : testgen::corpus(opt.seed, opt.corpus_points)) {
        SStage stage = build_distance_stage(x);
        auto sat = check_saturation(stage.functions, x.labels, x);
        if (sat.saturated && !vertices_affinely_independent(stage.poly))
            return {"simplex-certificate", false, "space of " + std::to_string(x.size()),
                    "saturated family but affinely dependent vertices"};
    }
    return {"simplex-certificate", true, "corpus", ""};
}

inline CheckResult check_permutation_equivariance(const Options& opt) {
    Rng rng(opt.seed * 17 + 1);
    for (const auto& x : testgen::corpus(opt.seed, std::min<std::size_t>(opt.corpus_points, 5))) {
        Enumeration d = Enumeration::all_of(x);
        auto f = distance_family(x, d.labels);
        std::vector<std::size_t> pi(f.size());
        std::iota(pi.begin(), pi.end(), 0);
        for (std::size_t i = pi.size(); i > 1; --i) std::swap(pi[i - 1], pi[rng.below(i)]);

        std::vector<PointFunction> pf(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) pf[j] = f[pi[j]];

        SStage stage = build_stage(x, d, f, x.size(), x.size());
        SStage permuted = build_stage(x, d, pf, x.size(), x.size());
        for (std::size_t i = 0; i < stage.n; ++i)
            for (std::size_t j = 0; j < stage.k; ++j)
                if (permuted.poly.vertices[i][j] != stage.poly.vertices[i][pi[j]])
                    return {"permutation-equivariance", false,
                            "vertex " + std::to_string(i) + ", coord " + std::to_string(j),
                            "coordinate permutation mismatch"};
    }
    return {"permutation-equivariance", true, "corpus", ""};
}

inline CheckResult check_extreme_embedding(const Options& opt) {
    std::size_t vertices = 0;
    for (const auto& x : testgen::corpus(opt.seed, opt.corpus_points)) {
        SStage stage = build_distance_stage(x);
        auto report = verify_extreme_embedding(stage);
        for (const auto& [label, status] : report.entries) {
            ++vertices;
            if (status == ExtremeEmbeddingReport::Status::Failure)
                return {"extreme-embedding", false, "space of " + std::to_string(x.size()),
                        "embedded point " + label + " is not extreme"};
        }
    }
    return {"extreme-embedding", true, std::to_string(vertices) + " embedded points", ""};
}

inline CheckResult check_epsilon_face_examples(const Options& opt) {
    // Segment stage: a 2-point space, F = dXD, vertices (0,1) and (1,0).
    auto x = validate_metric({"a", "b"}, {{rat(0), rat(1)}, {rat(1), rat(0)}});
    SStage stage = build_distance_stage(x);

    VPolytope one_vertex(2, {stage.poly.vertices[0]}, {"a"});
    auto r1 = epsilon_face_check(stage, one_vertex, rat(1, 100), 40, opt.seed);
    if (!r1.holds)
        return {"epsilon-face-examples", false, "extreme vertex", "vertex face rejected"};

    auto r2 = epsilon_face_check(stage, stage.poly, rat(1, 100), 40, opt.seed);
    if (!r2.holds)
        return {"epsilon-face-examples", false, "whole stage", "whole stage rejected"};

    std::vector<Rational> mid(2);
    for (std::size_t t = 0; t < 2; ++t)
        mid[t] = (stage.poly.vertices[0][t] + stage.poly.vertices[1][t]) / 2;
    VPolytope midpoint(2, {RationalPoint(mid)}, {"mid"});
    auto r3 = epsilon_face_check(stage, midpoint, rat(1, 8), 0, opt.seed);
    if (r3.holds || !r3.counterexample)
        return {"epsilon-face-examples", false, "midpoint", "falsifier missed the midpoint"};
    return {"epsilon-face-examples", true, "3 configurations", ""};
}

inline CheckResult check_twisted_certification(const Options& opt) {
    Rng rng(opt.seed * 17 + 2);
    FiniteMetricSpace x = testgen::random_space(rng, 6);
    SStage source = build_distance_stage(x);
    while (!vertices_affinely_independent(source.poly)) {
        x = testgen::random_space(rng, 6);
        source = build_distance_stage(x);
    }

    std::vector<std::string> reordered(x.labels.rbegin(), x.labels.rend());
    SStage target = build_stage(x, Enumeration(reordered), source.functions, 6, 6);

    TwistedSequence seq = build_twisted(source, target, 8);
    TwistedReport report = verify_twisted(seq);
    if (!report.conditions_pass())
        return {"twisted-certification", false, "6-point space, depth 8",
                "a certified condition failed"};
    if (report.final_range_gap != 0)
        return {"twisted-certification", false, "6-point space, depth 8",
                "final Hausdorff gap " + format_rational(report.final_range_gap) + " != 0"};
    return {"twisted-certification", true, "conditions (i),(i'),(ii),(iii) at depth 8", ""};
}

inline CheckResult check_saturation_witnesses(const Options& opt) {
    Rng rng(opt.seed * 17 + 3);
    for (std::size_t t = 0; t < opt.saturation_spaces; ++t) {
        FiniteMetricSpace x = testgen::random_space(rng, 2 + rng.below(3));
        // The stand-in for a dense pool: more extension points than targets,
        // so a full-rank selection exists whenever any draw separates them.
        std::size_t extra = 2 * x.size() + 1;
        FiniteMetricSpace extended = x;
        for (std::size_t j = 0; j < extra; ++j) {
            KatetovFunction f = testgen::random_katetov(rng, extended);
            extended = katetov_extend(extended, {f}, {"w" + std::to_string(t) + "_" + std::to_string(j)});
        }
        std::vector<std::string> pool(extended.labels.begin() + x.size(), extended.labels.end());
        std::vector<std::string> witnesses;
        try {
            witnesses = saturation_witnesses(x.labels, pool, extended);
        } catch (const Error& e) {
            return {"saturation-witnesses", false, "instance " + std::to_string(t), e.what()};
        }
        Rational det = witness_determinant(x.labels, witnesses, extended);
        if (det == 0)
            return {"saturation-witnesses", false, "instance " + std::to_string(t),
                    "witness matrix is singular"};
    }
    return {"saturation-witnesses", true, std::to_string(opt.saturation_spaces) + " spaces", ""};
}

inline CheckResult check_katetov_closure(const Options& opt) {
    Rng rng(opt.seed * 17 + 4);
    for (std::size_t t = 0; t < opt.katetov_instances; ++t) {
        FiniteMetricSpace x = testgen::random_space(rng, 2 + rng.below(4));
        KatetovFunction f = testgen::random_katetov(rng, x);
        KatetovFunction g = testgen::random_katetov(rng, x);
        Rational alpha = rng.rational01();
        KatetovFunction h = convex_combine_katetov(x, f, g, alpha);
        PointFunction probe{"h", h.values, false};
        if (!is_katetov(x, probe))
            return {"katetov-closure", false, "instance " + std::to_string(t),
                    "combination failed the Katetov inequalities"};
    }
    return {"katetov-closure", true, std::to_string(opt.katetov_instances) + " instances", ""};
}

inline CheckResult check_estimates_inequality(const Options& opt) {
    Rng rng(opt.seed * 17 + 5);
    for (std::size_t t = 0; t < opt.katetov_instances; ++t) {
        std::size_t k = 1 + rng.below(6);
        Rational delta = rng.rational01(8) / 4;
        Rational b = rng.rational01();
        std::vector<Rational> as(k), bs(k);
        for (std::size_t i = 0; i < k; ++i) {
            as[i] = rng.rational01();
            Rational lo = std::max(Rational(0), b - as[i] - delta);
            Rational hi = std::min(Rational(1), b + as[i] + delta);
            bs[i] = lo + (hi - lo) * rng.rational01();
        }
        std::vector<Rational> alphas = rng.simplex_weights(k);
        Rational combo(0), bound(delta);
        for (std::size_t i = 0; i < k; ++i) {
            combo += alphas[i] * bs[i];
            bound += alphas[i] * as[i];
        }
        if (rat_abs(b - combo) > bound)
            return {"estimates-inequality", false, "instance " + std::to_string(t),
                    format_rational(rat_abs(b - combo)) + " > " + format_rational(bound)};
    }
    return {"estimates-inequality", true, std::to_string(opt.katetov_instances) + " instances", ""};
}

inline CheckResult check_katetov_extend_valid(const Options& opt) {
    Rng rng(opt.seed * 17 + 6);
    for (std::size_t t = 0; t < 30; ++t) {
        FiniteMetricSpace x = testgen::random_space(rng, 2 + rng.below(4));
        std::vector<KatetovFunction> fs;
        std::vector<std::string> labels;
        for (std::size_t j = 0; j < 2; ++j) {
            fs.push_back(testgen::random_katetov(rng, x));
            labels.push_back("n" + std::to_string(j));
        }
        try {
            FiniteMetricSpace ext = katetov_extend(x, fs, labels);
            auto issues = metric_violations(ext.labels, ext.d);
            if (!issues.empty())
                return {"katetov-extend-valid", false, "instance " + std::to_string(t),
                        issues.front().message};
        } catch (const Error&) {
            // A degenerate draw (coinciding new points) is a legitimate
            // rejection, not a validity failure.
        }
    }
    return {"katetov-extend-valid", true, "30 extensions", ""};
}

inline CheckResult check_normalize_isometry(const Options& opt) {
    Rng rng(opt.seed * 17 + 7);
    for (std::size_t t = 0; t < 20; ++t) {
        std::size_t n = 2 + rng.below(4);
        FiniteMetricSpace x = testgen::random_space(rng, n);
        std::vector<std::size_t> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        for (std::size_t i = n; i > 1; --i) std::swap(sigma[i - 1], sigma[rng.below(i)]);
        FiniteMetricSpace y = apply_relabeling(x, sigma, testgen::point_labels(n, "y"));

        auto before = brute_force_isometry(x, y);
        auto after = brute_force_isometry(normalize_diameter(x), normalize_diameter(y));
        if (!before || !after || before->mapping != after->mapping)
            return {"normalize-isometry", false, "instance " + std::to_string(t),
                    "witness changed under diameter normalization"};
    }
    return {"normalize-isometry", true, "20 relabeled pairs", ""};
}

inline std::vector<CheckResult> sext_suite(const Options& opt) {
    return {check_vertex_embedding_agreement(opt), check_lipschitz_embedding(opt),
            check_stage_monotonicity(opt), check_simplex_certificate(opt),
            check_permutation_equivariance(opt), check_extreme_embedding(opt),
            check_epsilon_face_examples(opt), check_twisted_certification(opt),
            check_saturation_witnesses(opt), check_katetov_closure(opt),
            check_estimates_inequality(opt), check_katetov_extend_valid(opt),
            check_normalize_isometry(opt)};
}

// -------------------------------------------------------------------- codec

inline CheckResult check_scheme_soundness(const Options& opt) {
    std::size_t triples = 0;
    for (const auto& x : testgen::corpus(opt.seed, 4)) {
        if (x.size() < 2) continue;
        Enumeration d = Enumeration::all_of(x);
        MetricScheme scheme = build_scheme(x, d, {rat(1, 2), rat(1, 4), rat(1, 8)},
                                           full_cycle_length(x, d, {rat(1, 2), rat(1, 4), rat(1, 8)}));
        for (const auto& t : scheme.triples) {
            ++triples;
            if (!t.window_contains(x.dist(t.x, t.y)))
                return {"scheme-soundness", false, t.x + "," + t.y,
                        "distance outside the window [" + format_rational(t.lo) + "," +
                            format_rational(t.hi) + "]"};
        }
    }
    return {"scheme-soundness", true, std::to_string(triples) + " triples", ""};
}

inline CheckResult check_marker_geometry(const Options& opt) {
    std::size_t markers = 0;
    for (const auto& x : testgen::corpus(opt.seed, 3)) {
        if (x.size() < 2) continue;
        PhiStage phi = build_phi(x, PhiParams{{rat(1, 2), rat(1, 4)}, 0, QRule::Quartiles});
        VPolytope lifted = detail::lifted_stage(phi.blowup);
        for (const auto& m : phi.markers.markers) {
            ++markers;
            const RationalPoint& c1 = phi.blowup.cone.apex_vertex(2 * m.triple);
            const RationalPoint& c2 = phi.blowup.cone.apex_vertex(2 * m.triple + 1);
            auto lambda = segment_coefficient(m.point, c1, c2);
            if (!lambda || *lambda <= 0 || *lambda >= 1)
                return {"marker-geometry", false, "marker " + std::to_string(markers),
                        "marker is not strictly inside its apex segment"};
            if (in_convex_hull(m.point, lifted.vertices))
                return {"marker-geometry", false, "marker " + std::to_string(markers),
                        "marker lies in the lifted blow-up base"};
        }
    }
    return {"marker-geometry", true, std::to_string(markers) + " markers", ""};
}

inline CheckResult check_detect_recovery(const Options& opt) {
    std::size_t builds = 0;
    for (const auto& x : testgen::corpus(opt.seed, 4)) {
        if (x.size() < 2 || x.size() > 4) continue;
        for (std::size_t depth = 0; depth <= 4; ++depth) {
            PhiStage phi = build_phi(x, PhiParams{{rat(1, 2), rat(1, 4)}, depth == 0 ? 1 : depth,
                                                  QRule::Quartiles});
            ++builds;
            DetectedStructure det = detect_structure(phi.poly());
            if (!det.ok || !same_partition(det, ground_truth_structure(phi)))
                return {"detect-recovery", false,
                        "space of " + std::to_string(x.size()) + ", depth " + std::to_string(depth),
                        det.ok ? "partition mismatch" : det.ambiguity};
        }
    }
    return {"detect-recovery", true, std::to_string(builds) + " coded polytopes", ""};
}

inline CheckResult check_decoder_soundness(const Options& opt) {
    std::vector<Rational> widths = {rat(1, 2), rat(1, 4), rat(1, 8)};
    for (const auto& x : testgen::corpus(opt.seed, 4)) {
        if (x.size() < 2) continue;
        PhiStage phi = build_phi(x, PhiParams{widths, 0, QRule::Quartiles});
        DetectedStructure det = detect_structure(phi.poly());
        if (!det.ok) return {"decoder-soundness", false, "detection", det.ambiguity};
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = i + 1; j < x.size(); ++j) {
                DecodedEntry e = decode_distance(phi, det, x.labels[i], x.labels[j]);
                attach_truth(e, x);
                if (!e.determined || !e.contains)
                    return {"decoder-soundness", false, x.labels[i] + "," + x.labels[j],
                            "true distance escaped the decoded interval"};
                if (e.width() > rat(1, 8))
                    return {"decoder-sharpness", false, x.labels[i] + "," + x.labels[j],
                            "width " + format_rational(e.width()) + " > 1/8"};
            }
    }
    return {"decoder-soundness", true, "corpus, full depth, width <= smallest window", ""};
}

inline CheckResult check_isometry_invariance(const Options& opt) {
    Rng rng(opt.seed * 19 + 1);
    for (std::size_t t = 0; t < opt.invariance_pairs; ++t) {
        std::size_t n = 2 + rng.below(3);
        FiniteMetricSpace x = testgen::random_space(rng, n, 4);
        std::vector<std::size_t> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        for (std::size_t i = n; i > 1; --i) std::swap(sigma[i - 1], sigma[rng.below(i)]);
        FiniteMetricSpace y = apply_relabeling(x, sigma, testgen::point_labels(n, "y"));

        PhiParams params{{rat(1, 2), rat(1, 4)}, 0, QRule::Quartiles};
        PhiStage px = build_phi(x, params);
        PhiStage py = build_phi(y, params);
        auto witness = brute_force_isometry(x, y);
        if (!witness || !phi_matches_under_mapping(px, py, witness->mapping))
            return {"isometry-invariance", false, "isometric pair " + std::to_string(t),
                    "coded polytopes do not match under the witness"};
    }
    for (std::size_t t = 0; t < opt.invariance_pairs; ++t) {
        std::size_t n = 2 + rng.below(3);
        FiniteMetricSpace x = testgen::random_space(rng, n, 4);
        FiniteMetricSpace y = testgen::random_space(rng, n, 8, "y");
        if (brute_force_isometry(x, y)) { --t; continue; }

        PhiParams params{{rat(1, 2), rat(1, 4)}, 0, QRule::Quartiles};
        PhiStage px = build_phi(x, params);
        PhiStage py = build_phi(y, params);
        if (phi_match_exhaustive(px, py))
            return {"isometry-invariance", false, "non-isometric pair " + std::to_string(t),
                    "a permutation matched coded polytopes of non-isometric spaces"};
    }
    return {"isometry-invariance", true,
            std::to_string(opt.invariance_pairs) + " isometric + " +
                std::to_string(opt.invariance_pairs) + " non-isometric pairs", ""};
}

inline CheckResult check_roundtrip_corpus(const Options& opt) {
    for (const auto& x : testgen::corpus(opt.seed, 3)) {
        if (x.size() < 2) continue;
        RoundtripParams params;
        params.seed = opt.seed;
        RoundtripReport report = roundtrip(x, params);
        if (!report.pass())
            return {"roundtrip-corpus", false, "space of " + std::to_string(x.size()),
                    "roundtrip report failed"};
    }
    return {"roundtrip-corpus", true, "corpus spaces up to 3 points", ""};
}

inline std::vector<CheckResult> codec_suite(const Options& opt) {
    return {check_scheme_soundness(opt), check_marker_geometry(opt), check_detect_recovery(opt),
            check_decoder_soundness(opt), check_isometry_invariance(opt),
            check_roundtrip_corpus(opt)};
}

inline std::vector<CheckResult> all_suites(const Options& opt) {
    std::vector<std::vector<CheckResult>> partial(4);
    parallel_for(4, [&](std::size_t i) {
        switch (i) {
            case 0: partial[0] = geometry_suite(opt); break;
            case 1: partial[1] = cones_suite(opt); break;
            case 2: partial[2] = sext_suite(opt); break;
            default: partial[3] = codec_suite(opt); break;
        }
    });
    std::vector<CheckResult> out;
    for (auto& p : partial) out.insert(out.end(), p.begin(), p.end());
    return out;
}

// Invariant checks applicable to a user-supplied polytope file.
inline std::vector<CheckResult> polytope_file_checks(const Json& j) {
    std::vector<CheckResult> out;
    try {
        VPolytope p = polytope_from_json(j);
        out.push_back({"polytope-valid", true, std::to_string(p.size()) + " vertices", ""});
        VPolytope once = extreme_points(p);
        VPolytope twice = extreme_points(once);
        out.push_back({"extreme-idempotent", once.vertices == twice.vertices, "", ""});
        bool consistent = true;
        for (std::size_t i = 0; i < p.size() && consistent; ++i) {
            bool kept = false;
            for (const auto& label : once.labels)
                if (label == p.labels[i]) { kept = true; break; }
            if (!kept) consistent = in_convex_hull(p.vertices[i], once.vertices);
        }
        out.push_back({"hull-consistency", consistent, "", ""});
    } catch (const Error& e) {
        out.push_back({"polytope-valid", false, "", e.what()});
    }
    return out;
}

} // namespace simplexforge::verify
