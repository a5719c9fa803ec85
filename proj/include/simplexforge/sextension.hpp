#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simplexforge/error.hpp"
#include "simplexforge/katetov.hpp"
#include "simplexforge/linalg.hpp"
#include "simplexforge/metric_space.hpp"
#include "simplexforge/polytope.hpp"
#include "simplexforge/r1_family.hpp"
#include "simplexforge/rng.hpp"

namespace simplexforge {

// Ordered, repeat-free list of labels: the finite stand-in for the dense set.
struct Enumeration {
    std::vector<std::string> labels;

    Enumeration() = default;
    explicit Enumeration(std::vector<std::string> l) : labels(std::move(l)) {
        if (labels.empty()) throw domain_error("enumeration: empty");
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw domain_error("enumeration: repeated label");
    }

    static Enumeration all_of(const FiniteMetricSpace& x) { return Enumeration(x.labels); }

    std::size_t size() const { return labels.size(); }
    const std::string& operator[](std::size_t i) const { return labels[i]; }
};

// A finite stage of the S-extension: the polytope spanned by the evaluation
// vectors a_i = (f_1(d_i), ..., f_k(d_i)) of the first n enumerated points.
struct SStage {
    FiniteMetricSpace base;
    Enumeration enumeration;
    std::vector<PointFunction> functions;  // the first k are the coordinates
    std::size_t n = 0, k = 0;
    VPolytope poly;
};

inline RationalPoint evaluate_functions(const std::vector<PointFunction>& fs, std::size_t k,
                                        std::size_t point_index) {
    std::vector<Rational> coords(k);
    for (std::size_t j = 0; j < k; ++j) coords[j] = fs[j].at(point_index);
    return RationalPoint(std::move(coords));
}

// Builds the stage with exact vertex matrix a_i[j] = f_j(d_i).
inline SStage build_stage(const FiniteMetricSpace& x, const Enumeration& d,
                          const std::vector<PointFunction>& f, std::size_t n, std::size_t k) {
    if (n == 0 || n > d.size()) throw domain_error("build_stage: point count out of range");
    if (k == 0 || k > f.size()) throw domain_error("build_stage: coordinate count out of range");
    for (const auto& fn : f) {
        if (!fn.lipschitz_cert)
            throw domain_error("build_stage: function \"" + fn.name + "\" lacks a Lipschitz-1 certificate");
        if (fn.values.size() != x.size())
            throw domain_error("build_stage: function \"" + fn.name + "\" value count mismatch");
        for (const auto& v : fn.values)
            if (v < 0 || v > 1)
                throw domain_error("build_stage: function \"" + fn.name + "\" value outside [0,1]");
    }

    std::vector<RationalPoint> verts;
    std::vector<std::string> labels;
    verts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t pi = x.index_of(d[i]);
        verts.push_back(evaluate_functions(f, k, pi));
        labels.push_back(d[i]);
    }
    SStage stage{x, d, f, n, k, VPolytope(k, std::move(verts), std::move(labels))};
    return stage;
}

// The stage built from the distance functions to the full enumeration, the
// default configuration everywhere.
inline SStage build_distance_stage(const FiniteMetricSpace& x) {
    Enumeration d = Enumeration::all_of(x);
    return build_stage(x, d, distance_family(x, d.labels), x.size(), x.size());
}

// The k-truncated evaluation vector i_F(x); equals vertex a_i at x = d_i.
inline RationalPoint embed_point(const SStage& stage, const std::string& label) {
    return evaluate_functions(stage.functions, stage.k, stage.base.index_of(label));
}

struct SaturationCheck {
    bool saturated = false;
    std::vector<std::size_t> witness_indices;  // indices into the function list
};

// Finds function indices whose evaluation matrix at the targets has full
// rank, scanning in list order and keeping every function that raises the
// rank. Greedy is complete here: vector sets form a matroid.
inline SaturationCheck check_saturation(const std::vector<PointFunction>& f,
                                        const std::vector<std::string>& targets,
                                        const FiniteMetricSpace& x) {
    std::size_t n = targets.size();
    if (n == 0) throw domain_error("check_saturation: no targets");
    std::vector<std::size_t> target_idx;
    for (const auto& t : targets) target_idx.push_back(x.index_of(t));

    SaturationCheck out;
    RationalMatrix columns;  // one row per chosen function, n entries
    for (std::size_t j = 0; j < f.size() && out.witness_indices.size() < n; ++j) {
        RationalRow col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = f[j].at(target_idx[i]);
        columns.push_back(col);
        if (linalg::rank(columns) == columns.size()) {
            out.witness_indices.push_back(j);
        } else {
            columns.pop_back();
        }
    }
    out.saturated = out.witness_indices.size() == n;
    if (!out.saturated) out.witness_indices.clear();
    return out;
}

struct ExtremeEmbeddingReport {
    enum class Status { Extreme, Degenerate, Failure };
    std::vector<std::pair<std::string, Status>> entries;  // per stage vertex

    bool all_extreme() const {
        for (const auto& [label, st] : entries)
            if (st == Status::Failure) return false;
        return true;
    }
};

// Asserts each a_i is an extreme point of the stage polytope. Duplicated
// vertices are reported as degenerate rather than failures.
inline ExtremeEmbeddingReport verify_extreme_embedding(const SStage& stage) {
    ExtremeEmbeddingReport report;
    const auto& verts = stage.poly.vertices;

    std::vector<RationalPoint> unique;
    for (const auto& v : verts) {
        bool seen = false;
        for (const auto& u : unique)
            if (u == v) { seen = true; break; }
        if (!seen) unique.push_back(v);
    }

    for (std::size_t i = 0; i < verts.size(); ++i) {
        bool duplicate = false;
        for (std::size_t j = 0; j < i; ++j)
            if (verts[j] == verts[i]) { duplicate = true; break; }
        if (duplicate) {
            report.entries.emplace_back(stage.poly.labels[i], ExtremeEmbeddingReport::Status::Degenerate);
            continue;
        }
        std::size_t ui = 0;
        while (unique[ui] != verts[i]) ++ui;
        bool extreme = detail::is_extreme_point(unique, ui, stage.k);
        report.entries.emplace_back(stage.poly.labels[i],
                                    extreme ? ExtremeEmbeddingReport::Status::Extreme
                                            : ExtremeEmbeddingReport::Status::Failure);
    }
    return report;
}

struct EpsilonFaceResult {
    bool holds = true;
    std::optional<std::pair<RationalPoint, RationalPoint>> counterexample;
};

// Finite surrogate of the epsilon-face condition: over all vertex pairs and
// `samples` seeded random pairs of hull points, whenever the midpoint lies in
// hull(A) both endpoints must be strictly within eps of hull(A). This is a
// falsifier, not a prover; the exact universal statement quantifies over a
// continuum.
inline EpsilonFaceResult epsilon_face_check(const SStage& stage, const VPolytope& a,
                                            const Rational& eps, std::size_t samples,
                                            std::uint64_t seed) {
    if (a.dim != stage.poly.dim) throw domain_error("epsilon_face_check: dimension mismatch");
    for (const auto& v : a.vertices)
        if (!in_convex_hull(v, stage.poly.vertices))
            throw domain_error("epsilon_face_check: A is not contained in the stage");

    HilbertMetric metric = stage.poly.metric();
    auto midpoint_pair_violates = [&](const RationalPoint& x, const RationalPoint& y)
        -> std::optional<std::pair<RationalPoint, RationalPoint>> {
        std::vector<Rational> mid(stage.poly.dim);
        for (std::size_t t = 0; t < stage.poly.dim; ++t) mid[t] = (x[t] + y[t]) / 2;
        if (!in_convex_hull(RationalPoint(mid), a.vertices)) return std::nullopt;
        if (point_to_hull_distance(x, a.vertices, metric) >= eps ||
            point_to_hull_distance(y, a.vertices, metric) >= eps)
            return std::make_pair(x, y);
        return std::nullopt;
    };

    const auto& verts = stage.poly.vertices;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (auto bad = midpoint_pair_violates(verts[i], verts[j]))
                return {false, bad};

    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        RationalPoint x = combine(stage.poly, rng.simplex_weights(verts.size()));
        RationalPoint y = combine(stage.poly, rng.simplex_weights(verts.size()));
        if (auto bad = midpoint_pair_violates(x, y)) return {false, bad};
    }
    return {};
}

// Exact affine-independence certificate: the n stage vertices span an
// (n-1)-dimensional affine subspace.
inline bool vertices_affinely_independent(const VPolytope& poly) {
    if (poly.size() <= 1) return true;
    RationalMatrix diffs = linalg::zeros(poly.size() - 1, poly.dim);
    for (std::size_t i = 1; i < poly.size(); ++i)
        for (std::size_t t = 0; t < poly.dim; ++t)
            diffs[i - 1][t] = poly.vertices[i][t] - poly.vertices[0][t];
    return linalg::rank(std::move(diffs)) == poly.size() - 1;
}

} // namespace simplexforge
