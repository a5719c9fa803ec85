#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simplexforge/blowup.hpp"
#include "simplexforge/error.hpp"
#include "simplexforge/metric_space.hpp"
#include "simplexforge/polytope.hpp"
#include "simplexforge/rational.hpp"

namespace simplexforge {

// The structural partition of a coded polytope's extreme points: marker
// apexes, blow-up apex pairs (ordered by cone coordinate, so c1 before c2),
// and base extremes. Indices refer to the polytope's vertex list.
struct DetectedStructure {
    struct ApexPair {
        std::size_t c1 = 0, c2 = 0;            // vertex indices
        std::size_t c1_coord = 0, c2_coord = 0;  // their own cone coordinates
        std::vector<Rational> lambdas;           // marker coefficients on c1, ascending
    };

    bool ok = true;
    std::string ambiguity;              // set when ok is false
    std::vector<std::size_t> marker_apexes;
    std::vector<ApexPair> pairs;
    std::vector<std::size_t> base_extremes;
};

// Geometrically re-identifies the coding structure from the bare polytope,
// labels unseen. Marker apexes are the extreme points owning a coordinate in
// which they are the only nonzero entry (value 1) and whose projection along
// that coordinate lies on the open segment between two other extreme points;
// those segment endpoints form the blow-up apex pairs; the rest is base.
inline DetectedStructure detect_structure(const VPolytope& poly) {
    DetectedStructure out;
    std::size_t n = poly.size(), dim = poly.dim;
    const auto& pts = poly.vertices;

    std::vector<bool> extreme(n, false);
    {
        std::vector<RationalPoint> unique;
        std::vector<std::size_t> rep_of(n);
        for (std::size_t i = 0; i < n; ++i) {
            bool seen = false;
            for (std::size_t u = 0; u < unique.size(); ++u)
                if (unique[u] == pts[i]) { rep_of[i] = u; seen = true; break; }
            if (!seen) { rep_of[i] = unique.size(); unique.push_back(pts[i]); }
        }
        std::vector<bool> first(unique.size(), true);
        for (std::size_t i = 0; i < n; ++i) {
            if (!first[rep_of[i]]) continue;
            first[rep_of[i]] = false;
            extreme[i] = detail::is_extreme_point(unique, rep_of[i], dim);
        }
    }

    // Candidate marker coordinates: exactly one nonzero entry, equal to 1.
    std::vector<std::pair<std::size_t, std::size_t>> candidates;  // (vertex, coord)
    for (std::size_t j = 0; j < dim; ++j) {
        std::size_t owner = n;
        bool single = true;
        for (std::size_t i = 0; i < n && single; ++i) {
            if (pts[i][j] == 0) continue;
            if (owner != n) single = false;
            else owner = i;
        }
        if (single && owner != n && pts[owner][j] == 1 && extreme[owner])
            candidates.emplace_back(owner, j);
    }
    {
        std::vector<std::size_t> owners;
        for (const auto& [v, j] : candidates) owners.push_back(v);
        std::sort(owners.begin(), owners.end());
        if (std::adjacent_find(owners.begin(), owners.end()) != owners.end()) {
            out.ok = false;
            out.ambiguity = "a vertex owns more than one singleton coordinate";
            return out;
        }
    }

    std::vector<bool> is_marker(n, false);
    struct Confirmed { std::size_t vertex, u, v; Rational lambda; };
    std::vector<Confirmed> confirmed;

    std::vector<bool> is_candidate(n, false);
    for (const auto& [cv, cj] : candidates) is_candidate[cv] = true;

    for (const auto& [mv, mcoord] : candidates) {
        RationalPoint dropped = pts[mv];
        dropped[mcoord] = 0;

        // A segment through `dropped` can only use endpoints supported where
        // `dropped` is: coordinates are nonnegative, so a zero in the target
        // forces zeros in both endpoints.
        std::vector<std::size_t> allowed;
        for (std::size_t u = 0; u < n; ++u) {
            if (!extreme[u] || u == mv || is_candidate[u]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < dim && ok; ++j)
                if (pts[u][j] != 0 && dropped[j] == 0) ok = false;
            if (ok) allowed.push_back(u);
        }

        std::vector<std::pair<std::size_t, std::size_t>> hits;
        std::optional<Rational> hit_lambda;
        for (std::size_t ui = 0; ui < allowed.size(); ++ui)
            for (std::size_t vi = ui + 1; vi < allowed.size(); ++vi) {
                std::size_t u = allowed[ui], v = allowed[vi];
                auto lambda = segment_coefficient(dropped, pts[u], pts[v]);
                if (lambda && *lambda > 0 && *lambda < 1) {
                    hits.emplace_back(u, v);
                    hit_lambda = *lambda;
                }
            }
        if (hits.empty()) continue;  // not a marker apex (e.g. depth 0)
        if (hits.size() > 1) {
            out.ok = false;
            out.ambiguity = "a marker projection lies on more than one extreme segment";
            return out;
        }
        is_marker[mv] = true;
        confirmed.push_back({mv, hits[0].first, hits[0].second, *hit_lambda});
    }

    // A pair member's own cone coordinate: it has value 1 there and every
    // other nonzero entry belongs to a confirmed marker apex with value
    // strictly inside (0,1).
    auto own_coord = [&](std::size_t vertex) -> std::optional<std::size_t> {
        std::optional<std::size_t> found;
        for (std::size_t j = 0; j < dim; ++j) {
            if (pts[vertex][j] != 1) continue;
            bool qualifies = true;
            for (std::size_t i = 0; i < n && qualifies; ++i) {
                if (i == vertex || pts[i][j] == 0) continue;
                if (!is_marker[i] || pts[i][j] <= 0 || pts[i][j] >= 1) qualifies = false;
            }
            if (!qualifies) continue;
            if (found) return std::nullopt;  // multiple candidates: ambiguous
            found = j;
        }
        return found;
    };

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_index;
    std::vector<bool> is_pair_member(n, false);
    for (const auto& c : confirmed) {
        auto key = std::minmax(c.u, c.v);
        auto it = pair_index.find(key);
        if (it == pair_index.end()) {
            auto cu = own_coord(c.u), cv = own_coord(c.v);
            if (!cu || !cv) {
                out.ok = false;
                out.ambiguity = "cannot identify the cone coordinate of an apex pair member";
                return out;
            }
            DetectedStructure::ApexPair pair;
            if (*cu < *cv) pair = {c.u, c.v, *cu, *cv, {}};
            else pair = {c.v, c.u, *cv, *cu, {}};
            pair_index[key] = out.pairs.size();
            out.pairs.push_back(pair);
            is_pair_member[c.u] = is_pair_member[c.v] = true;
        }
        auto& pair = out.pairs[pair_index[key]];
        // Coefficient reported on c1, the earlier cone coordinate.
        Rational lambda = (pair.c1 == c.u) ? c.lambda : Rational(1) - c.lambda;
        pair.lambdas.push_back(lambda);
        out.marker_apexes.push_back(c.vertex);
    }
    for (auto& pair : out.pairs) std::sort(pair.lambdas.begin(), pair.lambdas.end());

    for (std::size_t i = 0; i < n; ++i)
        if (extreme[i] && !is_marker[i] && !is_pair_member[i])
            out.base_extremes.push_back(i);
    return out;
}

// The partition read off the construction labels, for comparison.
inline DetectedStructure ground_truth_structure(const PhiStage& phi) {
    DetectedStructure out;
    std::size_t n_base = phi.blowup.base.poly.size();
    std::size_t n_triples = phi.blowup.scheme.size();
    std::size_t blow_dim = phi.blowup.cone.poly.dim;
    std::size_t marker_base = n_base + 2 * n_triples;

    for (std::size_t t = 0; t < n_triples; ++t) {
        DetectedStructure::ApexPair pair;
        pair.c1 = n_base + 2 * t;
        pair.c2 = n_base + 2 * t + 1;
        pair.c1_coord = phi.blowup.cone.apexes[2 * t].coord;
        pair.c2_coord = phi.blowup.cone.apexes[2 * t + 1].coord;
        out.pairs.push_back(pair);
    }
    for (std::size_t m = 0; m < phi.markers.size(); ++m) {
        out.marker_apexes.push_back(marker_base + m);
        const auto& marker = phi.markers.markers[m];
        out.pairs[marker.triple].lambdas.push_back(marker.q);
    }
    for (auto& pair : out.pairs) std::sort(pair.lambdas.begin(), pair.lambdas.end());
    for (std::size_t i = 0; i < n_base; ++i) out.base_extremes.push_back(i);
    (void)blow_dim;
    return out;
}

inline bool same_partition(const DetectedStructure& a, const DetectedStructure& b) {
    if (!a.ok || !b.ok) return false;
    auto sorted = [](std::vector<std::size_t> v) { std::sort(v.begin(), v.end()); return v; };
    if (sorted(a.marker_apexes) != sorted(b.marker_apexes)) return false;
    if (sorted(a.base_extremes) != sorted(b.base_extremes)) return false;
    auto pair_set = [](const DetectedStructure& s) {
        std::vector<std::tuple<std::size_t, std::size_t, std::vector<Rational>>> out;
        for (const auto& p : s.pairs) out.emplace_back(p.c1, p.c2, p.lambdas);
        std::sort(out.begin(), out.end());
        return out;
    };
    return pair_set(a) == pair_set(b);
}

// A decoded distance estimate for one pair of base points.
struct DecodedEntry {
    std::string x, y;
    bool determined = false;
    Rational lo, hi;            // within [0,1], lo <= hi
    std::size_t matched_pairs = 0;
    std::optional<Rational> true_distance;
    bool contains = false;      // meaningful when true_distance is set

    Rational width() const { return hi - lo; }
};

namespace detail {

inline Rational prefix_distance(const RationalPoint& a, const RationalPoint& b, std::size_t k) {
    Rational d(0);
    for (std::size_t t = 0; t < k; ++t)
        if (a[t] != b[t]) d += dyadic_weight(t) * rat_abs(a[t] - b[t]);
    return d;
}

// Tightest window consistent with the marker coefficients: three or more
// equally spaced values reconstruct the emitting window exactly (the default
// quartile rule spaces markers a quarter-width apart); otherwise fall back
// to the bare span.
inline std::pair<Rational, Rational> reconstruct_window(const std::vector<Rational>& lambdas) {
    Rational lo = lambdas.front(), hi = lambdas.back();
    if (lambdas.size() >= 2) {
        Rational spacing = lambdas[1] - lambdas[0];
        bool even = spacing > 0;
        for (std::size_t i = 2; i < lambdas.size() && even; ++i)
            if (lambdas[i] - lambdas[i - 1] != spacing) even = false;
        if (even && lambdas.size() >= 3) {
            lo -= spacing;
            hi += spacing;
            if (lo < 0) lo = 0;
            if (hi > 1) hi = 1;
        }
    }
    return {lo, hi};
}

} // namespace detail

// Default matching radius: half the minimum positive Hilbert distance
// between embedded enumeration points, which makes apex matching unambiguous.
inline Rational default_neighborhood(const SStage& stage) {
    std::optional<Rational> best;
    for (std::size_t i = 0; i < stage.n; ++i)
        for (std::size_t j = i + 1; j < stage.n; ++j) {
            Rational d = hilbert_distance(stage.poly.vertices[i], stage.poly.vertices[j]);
            if (d > 0 && (!best || d < *best)) best = d;
        }
    return best ? *best / 2 : Rational(1);
}

// Finite transcription of the decoding predicate: collect the detected apex
// pairs whose base projections match embed(x) and embed(y) within the
// neighborhood (in either orientation, flipping the coefficient when
// reversed), reconstruct each pair's window from its marker coefficients and
// intersect. The result is "undetermined" when no pair matches.
inline DecodedEntry decode_distance(const PhiStage& phi, const DetectedStructure& det,
                                    const std::string& x, const std::string& y,
                                    std::optional<Rational> neighborhood = std::nullopt) {
    DecodedEntry entry;
    entry.x = x;
    entry.y = y;
    if (!det.ok) throw domain_error("decode_distance: detection was ambiguous");

    const SStage& stage = phi.blowup.base;
    RationalPoint ex = embed_point(stage, x);
    RationalPoint ey = embed_point(stage, y);
    if (x == y) return entry;  // the scheme has no such triples

    Rational radius = neighborhood ? *neighborhood : default_neighborhood(stage);
    const auto& pts = phi.poly().vertices;
    std::size_t k = stage.k;

    std::optional<Rational> lo, hi;
    for (const auto& pair : det.pairs) {
        if (pair.lambdas.empty()) continue;
        Rational d1x = detail::prefix_distance(pts[pair.c1], ex, k);
        Rational d2y = detail::prefix_distance(pts[pair.c2], ey, k);
        Rational d1y = detail::prefix_distance(pts[pair.c1], ey, k);
        Rational d2x = detail::prefix_distance(pts[pair.c2], ex, k);

        bool direct = d1x < radius && d2y < radius;
        bool reversed = d1y < radius && d2x < radius;
        if (!direct && !reversed) continue;
        // The admissible coefficients are the pair's own marker lambdas in
        // either orientation: the triple behind a reverse match windows the
        // same (symmetric) distance.
        auto [wlo, whi] = detail::reconstruct_window(pair.lambdas);
        lo = lo ? std::max(*lo, wlo) : wlo;
        hi = hi ? std::min(*hi, whi) : whi;
        ++entry.matched_pairs;
    }

    if (entry.matched_pairs == 0) return entry;
    entry.determined = true;
    entry.lo = *lo;
    entry.hi = *hi;
    if (entry.lo > entry.hi)
        throw domain_error("decode_distance: window intersection is empty for (" + x + "," + y + ")");
    return entry;
}

inline void attach_truth(DecodedEntry& entry, const FiniteMetricSpace& x) {
    if (entry.x == entry.y) return;
    entry.true_distance = x.dist(entry.x, entry.y);
    entry.contains = entry.determined && entry.lo <= *entry.true_distance &&
                     *entry.true_distance <= entry.hi;
}

} // namespace simplexforge
