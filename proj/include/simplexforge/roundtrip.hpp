#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "simplexforge/blowup.hpp"
#include "simplexforge/codec.hpp"
#include "simplexforge/error.hpp"
#include "simplexforge/metric_space.hpp"
#include "simplexforge/rng.hpp"

namespace simplexforge {

// The coordinate permutation of phi_x induced by a point bijection
// mapping[i] = index in Y of the image of X point i: stage coordinates follow
// the enumerations, scheme blocks follow matching (ordered pair, window,
// cycle) triples, marker coordinates follow (triple, q). Returns nullopt when
// the structures do not correspond, which is exactly what happens when the
// mapping is not an isometry.
inline std::optional<std::vector<std::size_t>> induced_coordinate_map(
    const PhiStage& px, const PhiStage& py, const std::vector<std::size_t>& mapping) {
    const SStage& sx = px.blowup.base;
    const SStage& sy = py.blowup.base;
    if (sx.n != sx.k || sy.n != sy.k || sx.n != sx.base.size() || sy.n != sy.base.size())
        return std::nullopt;  // permutation matching needs full d_X D stages
    if (sx.n != sy.n || px.poly().dim != py.poly().dim) return std::nullopt;
    if (px.blowup.scheme.size() != py.blowup.scheme.size()) return std::nullopt;
    if (px.markers.size() != py.markers.size()) return std::nullopt;

    std::size_t k = sx.k, triples = px.blowup.scheme.size();
    std::vector<std::size_t> perm(px.poly().dim);

    auto y_label = [&](const std::string& x_label) {
        return sy.base.labels[mapping[sx.base.index_of(x_label)]];
    };
    auto y_enum_pos = [&](const std::string& label) -> std::optional<std::size_t> {
        for (std::size_t j = 0; j < sy.n; ++j)
            if (sy.enumeration[j] == label) return j;
        return std::nullopt;
    };

    for (std::size_t j = 0; j < k; ++j) {
        auto pos = y_enum_pos(y_label(sx.enumeration[j]));
        if (!pos) return std::nullopt;
        perm[j] = *pos;
    }

    std::vector<std::size_t> triple_map(triples);
    std::vector<bool> used(triples, false);
    for (std::size_t t = 0; t < triples; ++t) {
        const auto& p = px.blowup.scheme.triples[t];
        std::string ix = y_label(p.x), iy = y_label(p.y);
        bool found = false;
        for (std::size_t s = 0; s < triples && !found; ++s) {
            if (used[s]) continue;
            const auto& q = py.blowup.scheme.triples[s];
            if (q.x == ix && q.y == iy && q.lo == p.lo && q.hi == p.hi && q.cycle == p.cycle) {
                triple_map[t] = s;
                used[s] = true;
                found = true;
            }
        }
        if (!found) return std::nullopt;
        perm[k + 2 * t] = k + 2 * triple_map[t];
        perm[k + 2 * t + 1] = k + 2 * triple_map[t] + 1;
    }

    std::size_t marker_base = k + 2 * triples;
    std::vector<bool> marker_used(px.markers.size(), false);
    for (std::size_t m = 0; m < px.markers.size(); ++m) {
        const auto& marker = px.markers.markers[m];
        bool found = false;
        for (std::size_t m2 = 0; m2 < py.markers.size() && !found; ++m2) {
            if (marker_used[m2]) continue;
            const auto& other = py.markers.markers[m2];
            if (other.triple == triple_map[marker.triple] && other.q == marker.q) {
                perm[marker_base + m] = marker_base + m2;
                marker_used[m2] = true;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    return perm;
}

// Exact vertex-set equality of the two coded polytopes after applying the
// induced coordinate permutation.
inline bool phi_matches_under_mapping(const PhiStage& px, const PhiStage& py,
                                      const std::vector<std::size_t>& mapping) {
    auto perm = induced_coordinate_map(px, py, mapping);
    if (!perm) return false;

    std::vector<std::vector<Rational>> mapped, target;
    for (const auto& v : px.poly().vertices) {
        std::vector<Rational> w(v.dim());
        for (std::size_t j = 0; j < v.dim(); ++j) w[(*perm)[j]] = v[j];
        mapped.push_back(std::move(w));
    }
    for (const auto& v : py.poly().vertices) target.push_back(v.coords);
    std::sort(mapped.begin(), mapped.end());
    std::sort(target.begin(), target.end());
    return mapped == target;
}

// Exhaustive search over point bijections (guarded factorially): the witness
// certifying that some relabeling matches the coded polytopes, none when the
// spaces cannot be aligned.
inline std::optional<std::vector<std::size_t>> phi_match_exhaustive(const PhiStage& px,
                                                                    const PhiStage& py) {
    std::size_t n = px.blowup.base.base.size();
    if (n != py.blowup.base.base.size()) return std::nullopt;
    if (n > kIsometryGuard)
        throw guard_error("phi_match_exhaustive: more than " + std::to_string(kIsometryGuard) +
                          " points");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (phi_matches_under_mapping(px, py, perm)) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

inline constexpr std::size_t kRoundtripGuard = 6;

struct RoundtripParams {
    std::vector<Rational> widths = {rat(1, 2), rat(1, 4), rat(1, 8)};
    std::size_t depth = 0;        // final scheme depth; 0 means one full cycle
    QRule q_rule = QRule::Quartiles;
    bool strict = true;           // detection from bare geometry
    std::uint64_t seed = 7;       // drives the relabeled-copy permutation
    std::size_t ladder_cap = 6;   // how many shallow prefixes to decode
    std::optional<Rational> neighborhood;  // apex matching radius override
};

struct RoundtripReport {
    struct DepthRow {
        std::size_t depth = 0;
        std::vector<DecodedEntry> entries;
        Rational max_width;
        bool all_contained = true;
        bool all_determined = true;
    };

    std::vector<DepthRow> rows;
    bool widths_non_increasing = true;
    bool detection_matches = true;
    bool copy_matches = true;
    std::vector<std::size_t> copy_permutation;
    std::vector<std::pair<std::string, std::string>> low_confidence;  // < 2 occurrences
    std::string note;

    // Pairs may be undetermined before the scheme reaches them; the final
    // depth must determine every pair, every determined interval must
    // contain the truth, and per-pair widths must not grow with depth.
    bool pass() const {
        for (const auto& row : rows)
            if (!row.all_contained) return false;
        if (!rows.empty() && !rows.back().all_determined) return false;
        return widths_non_increasing && detection_matches && copy_matches;
    }
};

namespace detail {

inline RoundtripReport::DepthRow decode_all_pairs(const FiniteMetricSpace& x,
                                                  const PhiStage& phi, bool strict,
                                                  const std::optional<Rational>& neighborhood) {
    RoundtripReport::DepthRow row;
    row.depth = phi.blowup.scheme.size();
    DetectedStructure det =
        strict ? detect_structure(phi.poly()) : ground_truth_structure(phi);
    if (!det.ok) throw domain_error("roundtrip: ambiguous structure detection");
    row.max_width = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            DecodedEntry entry =
                decode_distance(phi, det, x.labels[i], x.labels[j], neighborhood);
            attach_truth(entry, x);
            if (!entry.determined) row.all_determined = false;
            else {
                if (!entry.contains) row.all_contained = false;
                if (entry.width() > row.max_width) row.max_width = entry.width();
            }
            row.entries.push_back(std::move(entry));
        }
    return row;
}

} // namespace detail

// Builds the coded polytope at a ladder of scheme depths, decodes every pair
// at each depth, and checks: containment of the true distance, widths
// non-increasing with depth, exact structure recovery at full depth, and
// vertex-set equality with the coded polytope of a seeded relabeled copy
// under the brute-forced witness.
inline RoundtripReport roundtrip(const FiniteMetricSpace& x, const RoundtripParams& params = {}) {
    if (x.size() > kRoundtripGuard)
        throw guard_error("roundtrip: more than " + std::to_string(kRoundtripGuard) + " points");
    if (!x.unit_bounded) throw domain_error("roundtrip: space must be unit-bounded");

    RoundtripReport report;
    SStage stage = build_distance_stage(x);
    std::size_t full = full_cycle_length(x, stage.enumeration, params.widths);
    std::size_t final_depth = params.depth == 0 ? full : params.depth;

    std::vector<std::size_t> ladder;
    if (x.size() >= 2) {
        for (std::size_t d = 1; d < final_depth && ladder.size() < params.ladder_cap; ++d)
            ladder.push_back(d);
        ladder.push_back(final_depth);
    }

    PhiParams phi_params{params.widths, final_depth, params.q_rule};
    PhiStage final_phi = build_phi_over_stage(stage, phi_params);

    for (std::size_t d : ladder) {
        PhiParams pp{params.widths, d, params.q_rule};
        PhiStage phi = d == final_depth ? final_phi : build_phi_over_stage(stage, pp);
        report.rows.push_back(detail::decode_all_pairs(x, phi, params.strict, params.neighborhood));
    }
    if (!report.rows.empty()) {
        std::size_t pairs = report.rows.front().entries.size();
        for (std::size_t p = 0; p < pairs; ++p) {
            std::optional<Rational> prev;
            for (const auto& row : report.rows) {
                const auto& e = row.entries[p];
                if (!e.determined) continue;
                if (prev && e.width() > *prev) report.widths_non_increasing = false;
                prev = e.width();
            }
        }
    }

    if (params.strict) {
        DetectedStructure det = detect_structure(final_phi.poly());
        report.detection_matches = det.ok && same_partition(det, ground_truth_structure(final_phi));
    }

    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            std::size_t occurrences = 0;
            for (const auto& t : final_phi.blowup.scheme.triples)
                if ((t.x == x.labels[i] && t.y == x.labels[j]) ||
                    (t.x == x.labels[j] && t.y == x.labels[i]))
                    ++occurrences;
            if (occurrences < 2) report.low_confidence.emplace_back(x.labels[i], x.labels[j]);
        }

    if (x.size() >= 2) {
        Rng rng(params.seed);
        std::vector<std::size_t> sigma(x.size());
        std::iota(sigma.begin(), sigma.end(), 0);
        for (std::size_t i = sigma.size(); i > 1; --i)
            std::swap(sigma[i - 1], sigma[rng.below(i)]);
        std::vector<std::string> new_labels(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) new_labels[i] = "q" + std::to_string(i + 1);
        FiniteMetricSpace y = apply_relabeling(x, sigma, new_labels);

        auto witness = brute_force_isometry(x, y);
        if (!witness) {
            report.copy_matches = false;
            report.note = "relabeled copy unexpectedly not isometric";
        } else {
            report.copy_permutation = witness->mapping;
            PhiStage phi_y = build_phi(y, phi_params);
            report.copy_matches = phi_matches_under_mapping(final_phi, phi_y, witness->mapping);
        }
    }
    return report;
}

} // namespace simplexforge
