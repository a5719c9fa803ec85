#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "simplexforge/affine.hpp"
#include "simplexforge/error.hpp"
#include "simplexforge/polytope.hpp"
#include "simplexforge/sextension.hpp"

namespace simplexforge {

// One rung of the certified approximation ladder: at depth m the vertex
// images stay within base_bound = 1/m of their sources in the base metric,
// hence within hilbert_bound in the stage coordinates (the functions are
// Lipschitz 1 and the truncated weights sum to 1 - 2^-k).
struct TwistedRung {
    std::size_t m = 0;
    Rational base_bound;
    Rational hilbert_bound;
    std::vector<std::size_t> vertex_images;  // i -> index into the target enumeration
    AffineMap map;
};

struct TwistedSequence {
    SStage source;
    SStage target;
    std::vector<TwistedRung> rungs;
};

// Builds the maps phi_m, m = 1..depth, sending each source vertex a_i to the
// target vertex over the enumeration point nearest to d_i (ties broken by
// lowest index), gated by the requirement that the nearest distance is at
// most 1/m.
inline TwistedSequence build_twisted(const SStage& source, const SStage& target,
                                     std::size_t depth) {
    if (source.base.labels != target.base.labels || source.base.d != target.base.d)
        throw domain_error("build_twisted: stages must share a base space");
    if (source.k != target.k)
        throw domain_error("build_twisted: stages must share the coordinate count");
    if (depth == 0) throw domain_error("build_twisted: depth must be positive");

    const FiniteMetricSpace& x = source.base;
    Rational weight_sum = HilbertMetric(source.k).total_weight();

    TwistedSequence seq{source, target, {}};
    for (std::size_t m = 1; m <= depth; ++m) {
        TwistedRung rung;
        rung.m = m;
        rung.base_bound = Rational(Integer(1), Integer(m));
        rung.hilbert_bound = weight_sum * rung.base_bound;

        std::vector<RationalPoint> images;
        for (std::size_t i = 0; i < source.n; ++i) {
            std::size_t si = x.index_of(source.enumeration[i]);
            std::size_t best = target.n;
            for (std::size_t j = 0; j < target.n; ++j) {
                std::size_t tj = x.index_of(target.enumeration[j]);
                if (best == target.n || x.d[si][tj] < x.d[si][x.index_of(target.enumeration[best])])
                    best = j;
            }
            Rational nearest = x.d[si][x.index_of(target.enumeration[best])];
            if (nearest > rung.base_bound)
                throw domain_error("build_twisted: approximation impossible at depth " +
                                   std::to_string(m) + " for source point \"" +
                                   source.enumeration[i] + "\" (nearest distance " +
                                   format_rational(nearest) + " exceeds 1/" + std::to_string(m) + ")");
            rung.vertex_images.push_back(best);
            images.push_back(target.poly.vertices[best]);
        }

        auto map = affine_from_images(source.poly.vertices, images);
        if (!map)
            throw domain_error("build_twisted: source vertices are affinely dependent with "
                               "inconsistent images at depth " + std::to_string(m));
        rung.map = std::move(*map);

        for (std::size_t i = 0; i < source.n; ++i) {
            Rational dev = hilbert_distance(source.poly.vertices[i],
                                            rung.map.apply(source.poly.vertices[i]));
            if (dev > rung.hilbert_bound)
                throw domain_error("build_twisted: certified bound violated at depth " +
                                   std::to_string(m));
        }
        seq.rungs.push_back(std::move(rung));
    }
    return seq;
}

struct TwistedCheck {
    std::string condition;  // "(i)", "(i')", "(ii)", "(iii)"
    std::size_t m = 0, l = 0;  // rung indices involved (l unused except for (i))
    Rational measured;
    Rational bound;   // certified bound; for (ii) the reported target gap
    bool pass = true;
};

struct TwistedReport {
    std::vector<TwistedCheck> checks;
    Rational final_range_gap;  // Hausdorff gap of the last rung's range

    bool conditions_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    Rational worst_violation(const std::string& condition) const {
        Rational worst(0);
        for (const auto& c : checks)
            if (c.condition == condition && !c.pass && c.measured - c.bound > worst)
                worst = c.measured - c.bound;
        return worst;
    }
};

// Verifies the strong twisted approximation conditions on the built
// sequence. (i) and (i') are checked at all vertices, which suffices for the
// whole hull since two affine maps within eps at every extreme point stay
// within eps everywhere; (iii) is checked on all vertex pairs against the
// 2/m schedule; (ii) measures the Hausdorff gap between each map's range and
// the target stage.
inline TwistedReport verify_twisted(const TwistedSequence& seq) {
    TwistedReport report;
    const auto& src = seq.source.poly;
    HilbertMetric metric = src.metric();

    std::vector<std::vector<RationalPoint>> images(seq.rungs.size());
    for (std::size_t r = 0; r < seq.rungs.size(); ++r)
        for (const auto& v : src.vertices)
            images[r].push_back(seq.rungs[r].map.apply(v));

    for (std::size_t r = 0; r < seq.rungs.size(); ++r) {
        const auto& rung = seq.rungs[r];

        Rational worst(0);
        for (std::size_t i = 0; i < src.size(); ++i) {
            Rational dev = hilbert_distance(images[r][i], src.vertices[i], metric);
            if (dev > worst) worst = dev;
        }
        report.checks.push_back({"(i')", rung.m, 0, worst, rung.hilbert_bound,
                                 worst <= rung.hilbert_bound});

        worst = 0;
        for (std::size_t i = 0; i < src.size(); ++i)
            for (std::size_t j = i + 1; j < src.size(); ++j) {
                Rational mapped = hilbert_distance(images[r][i], images[r][j], metric);
                Rational original = hilbert_distance(src.vertices[i], src.vertices[j], metric);
                Rational dev = rat_abs(mapped - original);
                if (dev > worst) worst = dev;
            }
        Rational iso_bound = 2 * rung.hilbert_bound;
        report.checks.push_back({"(iii)", rung.m, 0, worst, iso_bound, worst <= iso_bound});

        VPolytope range(src.dim, images[r], src.labels);
        Rational gap = hausdorff_distance(range, seq.target.poly, metric);
        report.checks.push_back({"(ii)", rung.m, 0, gap, gap, true});
        if (r + 1 == seq.rungs.size()) report.final_range_gap = gap;
    }

    for (std::size_t r = 0; r < seq.rungs.size(); ++r)
        for (std::size_t s = r + 1; s < seq.rungs.size(); ++s) {
            Rational worst(0);
            for (std::size_t i = 0; i < src.size(); ++i) {
                Rational dev = hilbert_distance(images[r][i], images[s][i], metric);
                if (dev > worst) worst = dev;
            }
            Rational bound = seq.rungs[r].hilbert_bound + seq.rungs[s].hilbert_bound;
            report.checks.push_back({"(i)", seq.rungs[r].m, seq.rungs[s].m, worst, bound,
                                     worst <= bound});
        }

    return report;
}

} // namespace simplexforge
