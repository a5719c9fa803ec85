#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "simplexforge/error.hpp"
#include "simplexforge/linalg.hpp"
#include "simplexforge/rational.hpp"

namespace simplexforge {

// One named defect of a candidate distance matrix.
struct MetricViolation {
    enum class Kind { Shape, DuplicateLabel, Asymmetry, NonzeroDiagonal, NonpositiveOffDiagonal, Triangle, NotUnitBounded };
    Kind kind;
    std::vector<std::size_t> indices;  // the offending point(s), in order
    std::string message;
};

// Labeled points with an exact-rational distance matrix. Distinct points at
// distance zero are rejected everywhere: these are metric spaces, not
// pseudometrics.
struct FiniteMetricSpace {
    std::vector<std::string> labels;
    RationalMatrix d;
    bool unit_bounded = false;

    std::size_t size() const { return labels.size(); }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return i;
        throw domain_error("metric space: unknown label \"" + label + "\"");
    }

    const Rational& dist(std::size_t i, std::size_t j) const { return d[i][j]; }

    const Rational& dist(const std::string& a, const std::string& b) const {
        return d[index_of(a)][index_of(b)];
    }

    Rational diameter() const {
        Rational best(0);
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (d[i][j] > best) best = d[i][j];
        return best;
    }

    Rational min_positive_distance() const {
        std::optional<Rational> best;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (!best || d[i][j] < *best) best = d[i][j];
        return best ? *best : Rational(0);
    }
};

// Checks a candidate matrix; each violation names the offending points.
inline std::vector<MetricViolation> metric_violations(const std::vector<std::string>& labels,
                                                      const RationalMatrix& d,
                                                      bool require_unit_bounded = false) {
    using K = MetricViolation::Kind;
    std::vector<MetricViolation> out;
    std::size_t n = labels.size();

    if (d.size() != n) {
        out.push_back({K::Shape, {}, "matrix row count does not match label count"});
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (d[i].size() != n) {
            out.push_back({K::Shape, {i}, "matrix is not square at row " + std::to_string(i)});
            return out;
        }

    {
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        auto it = std::adjacent_find(sorted.begin(), sorted.end());
        if (it != sorted.end())
            out.push_back({K::DuplicateLabel, {}, "duplicate label \"" + *it + "\""});
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (d[i][i] != 0)
            out.push_back({K::NonzeroDiagonal, {i}, "d(" + labels[i] + "," + labels[i] + ") != 0"});
        for (std::size_t j = i + 1; j < n; ++j) {
            if (d[i][j] != d[j][i])
                out.push_back({K::Asymmetry, {i, j},
                               "d(" + labels[i] + "," + labels[j] + ") != d(" + labels[j] + "," + labels[i] + ")"});
            if (d[i][j] <= 0)
                out.push_back({K::NonpositiveOffDiagonal, {i, j},
                               "d(" + labels[i] + "," + labels[j] + ") = " + format_rational(d[i][j]) +
                               " must be positive"});
            if (require_unit_bounded && d[i][j] > 1)
                out.push_back({K::NotUnitBounded, {i, j},
                               "d(" + labels[i] + "," + labels[j] + ") = " + format_rational(d[i][j]) + " > 1"});
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (k == i) continue;
                if (d[j][k] > d[j][i] + d[i][k])
                    out.push_back({K::Triangle, {j, i, k},
                                   "d(" + labels[j] + "," + labels[k] + ") > d(" + labels[j] + "," +
                                   labels[i] + ") + d(" + labels[i] + "," + labels[k] + ")"});
            }
        }
    return out;
}

// Returns the validated space or throws with the first violation named.
inline FiniteMetricSpace validate_metric(std::vector<std::string> labels, RationalMatrix d,
                                         bool require_unit_bounded = false) {
    auto issues = metric_violations(labels, d, require_unit_bounded);
    if (!issues.empty()) throw domain_error("invalid metric: " + issues.front().message);
    FiniteMetricSpace space{std::move(labels), std::move(d), false};
    space.unit_bounded = space.diameter() <= 1;
    return space;
}

// Entrywise d -> d/(1+d). The result has diameter < 1 and the isometry class
// of the output depends only on that of the input.
inline FiniteMetricSpace normalize_diameter(const FiniteMetricSpace& m) {
    FiniteMetricSpace out = m;
    for (auto& row : out.d)
        for (auto& v : row)
            if (v != 0) v = v / (1 + v);
    out.unit_bounded = true;
    return out;
}

// Distance-preserving bijection between two spaces' label sets.
struct IsometryWitness {
    std::vector<std::size_t> mapping;  // X index -> Y index

    std::vector<std::string> mapped_labels(const FiniteMetricSpace& y) const {
        std::vector<std::string> out(mapping.size());
        for (std::size_t i = 0; i < mapping.size(); ++i) out[i] = y.labels[mapping[i]];
        return out;
    }
};

inline bool permutation_is_isometry(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                    const std::vector<std::size_t>& perm) {
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (y.d[perm[i]][perm[j]] != x.d[i][j]) return false;
    return true;
}

inline constexpr std::size_t kIsometryGuard = 9;

// Deterministic factorial search; returns the lexicographically first
// distance-preserving bijection, none if sizes differ or no bijection exists.
// Sizes above the guard are refused outright.
inline std::optional<IsometryWitness> brute_force_isometry(const FiniteMetricSpace& x,
                                                           const FiniteMetricSpace& y) {
    if (x.size() != y.size()) return std::nullopt;
    if (x.size() > kIsometryGuard)
        throw guard_error("brute_force_isometry: more than " + std::to_string(kIsometryGuard) +
                          " points (factorial guard)");
    std::vector<std::size_t> perm(x.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (permutation_is_isometry(x, y, perm)) return IsometryWitness{perm};
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

// Relabels a space and reorders its matrix by the given permutation:
// new index perm[i] hosts old point i under the new label list.
inline FiniteMetricSpace apply_relabeling(const FiniteMetricSpace& x,
                                          const std::vector<std::size_t>& perm,
                                          const std::vector<std::string>& new_labels) {
    if (perm.size() != x.size() || new_labels.size() != x.size())
        throw domain_error("apply_relabeling: size mismatch");
    RationalMatrix d = linalg::zeros(x.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            d[perm[i]][perm[j]] = x.d[i][j];
    return validate_metric(new_labels, std::move(d));
}

} // namespace simplexforge
