#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "simplexforge/blowup.hpp"
#include "simplexforge/codec.hpp"
#include "simplexforge/cone.hpp"
#include "simplexforge/error.hpp"
#include "simplexforge/metric_space.hpp"
#include "simplexforge/polytope.hpp"
#include "simplexforge/rational.hpp"
#include "simplexforge/roundtrip.hpp"
#include "simplexforge/scheme.hpp"
#include "simplexforge/sextension.hpp"
#include "simplexforge/twisted.hpp"

namespace simplexforge {

// Stable field ordering everywhere, for diffable artifacts.
using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return format_rational(r); }

inline Json to_json(const RationalPoint& p) {
    Json arr = Json::array();
    for (const auto& c : p.coords) arr.push_back(format_rational(c));
    return arr;
}

inline Json to_json(const VPolytope& p) {
    Json j;
    j["dim"] = p.dim;
    Json verts = Json::array();
    for (const auto& v : p.vertices) verts.push_back(to_json(v));
    j["vertices"] = std::move(verts);
    j["labels"] = p.labels;
    return j;
}

inline Json to_json(const FiniteMetricSpace& x) {
    Json j;
    j["labels"] = x.labels;
    Json rows = Json::array();
    for (const auto& row : x.d) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(format_rational(v));
        rows.push_back(std::move(r));
    }
    j["d"] = std::move(rows);
    j["unit_bounded"] = x.unit_bounded;
    return j;
}

inline Json to_json(const PointFunction& f) {
    Json j;
    j["name"] = f.name;
    Json vals = Json::array();
    for (const auto& v : f.values) vals.push_back(format_rational(v));
    j["values"] = std::move(vals);
    j["lipschitz_1"] = f.lipschitz_cert;
    return j;
}

inline Json to_json(const SStage& stage) {
    Json j;
    j["space"] = to_json(stage.base);
    j["enumeration"] = stage.enumeration.labels;
    Json funcs = Json::array();
    for (const auto& f : stage.functions) funcs.push_back(to_json(f));
    j["functions"] = std::move(funcs);
    j["n"] = stage.n;
    j["k"] = stage.k;
    j["polytope"] = to_json(stage.poly);
    return j;
}

// Extends the polytope JSON with the apex records.
inline Json to_json(const LabeledCone& c) {
    Json j = to_json(c.poly);
    Json apexes = Json::array();
    for (const auto& a : c.apexes) {
        Json aj;
        aj["label"] = a.label;
        aj["base_point"] = to_json(a.base_point);
        aj["coord"] = a.coord;
        apexes.push_back(std::move(aj));
    }
    j["apexes"] = std::move(apexes);
    return j;
}

inline Json to_json(const MetricScheme& s) {
    Json j;
    Json widths = Json::array();
    for (const auto& w : s.widths) widths.push_back(format_rational(w));
    j["widths"] = std::move(widths);
    j["depth"] = s.depth;
    Json triples = Json::array();
    for (const auto& t : s.triples) {
        Json tj;
        tj["x"] = t.x;
        tj["y"] = t.y;
        tj["lo"] = format_rational(t.lo);
        tj["hi"] = format_rational(t.hi);
        tj["width"] = format_rational(t.width);
        tj["cycle"] = t.cycle;
        triples.push_back(std::move(tj));
    }
    j["triples"] = std::move(triples);
    return j;
}

inline Json to_json(const BlowupStage& b) {
    Json j;
    j["stage"] = to_json(b.base);
    j["scheme"] = to_json(b.scheme);
    j["cone"] = to_json(b.cone);
    return j;
}

inline Json to_json(const PhiStage& phi) {
    Json j;
    j["blowup"] = to_json(phi.blowup);
    Json markers = Json::array();
    for (const auto& m : phi.markers.markers) {
        Json mj;
        mj["triple"] = m.triple;
        mj["q"] = format_rational(m.q);
        mj["point"] = to_json(m.point);
        markers.push_back(std::move(mj));
    }
    j["markers"] = std::move(markers);
    j["cone"] = to_json(phi.marker_cone);
    return j;
}

inline Json to_json(const DecodedEntry& e) {
    Json j;
    j["pair"] = Json::array({e.x, e.y});
    if (e.determined)
        j["interval"] = Json::array({format_rational(e.lo), format_rational(e.hi)});
    else
        j["interval"] = nullptr;
    if (e.true_distance) j["true_d"] = format_rational(*e.true_distance);
    j["contains"] = e.contains;
    return j;
}

inline Json to_json(const RoundtripReport& r) {
    Json j;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json rj;
        rj["depth"] = row.depth;
        Json entries = Json::array();
        for (const auto& e : row.entries) entries.push_back(to_json(e));
        rj["decoded"] = std::move(entries);
        rj["max_width"] = format_rational(row.max_width);
        rj["all_contained"] = row.all_contained;
        rj["all_determined"] = row.all_determined;
        rows.push_back(std::move(rj));
    }
    j["by_depth"] = std::move(rows);
    j["widths_non_increasing"] = r.widths_non_increasing;
    j["detection_matches"] = r.detection_matches;
    j["copy_matches"] = r.copy_matches;
    j["copy_permutation"] = r.copy_permutation;
    Json low = Json::array();
    for (const auto& [a, b] : r.low_confidence) low.push_back(Json::array({a, b}));
    j["low_confidence_pairs"] = std::move(low);
    if (!r.note.empty()) j["note"] = r.note;
    j["pass"] = r.pass();
    return j;
}

inline Json to_json(const TwistedReport& r) {
    Json j;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json cj;
        cj["condition"] = c.condition;
        cj["m"] = c.m;
        if (c.condition == "(i)") cj["l"] = c.l;
        cj["measured"] = format_rational(c.measured);
        cj["bound"] = format_rational(c.bound);
        cj["pass"] = c.pass;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    j["final_range_gap"] = format_rational(r.final_range_gap);
    j["conditions_pass"] = r.conditions_pass();
    return j;
}

inline RationalPoint point_from_json(const Json& j) {
    std::vector<Rational> coords;
    for (const auto& c : j) coords.push_back(parse_rational(c.get<std::string>()));
    return RationalPoint(std::move(coords));
}

inline VPolytope polytope_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("vertices") || !j.contains("labels"))
        throw parse_error("polytope JSON needs dim, vertices, labels");
    std::vector<RationalPoint> verts;
    for (const auto& v : j["vertices"]) verts.push_back(point_from_json(v));
    return VPolytope(j["dim"].get<std::size_t>(), std::move(verts),
                     j["labels"].get<std::vector<std::string>>());
}

// Parses and validates; throws parse_error on shape problems and
// domain_error on metric violations.
inline FiniteMetricSpace space_from_json(const Json& j) {
    if (!j.contains("labels") || !j.contains("d"))
        throw parse_error("metric-space JSON needs labels and d");
    auto labels = j["labels"].get<std::vector<std::string>>();
    RationalMatrix d;
    for (const auto& row : j["d"]) {
        RationalRow r;
        for (const auto& v : row) r.push_back(parse_rational(v.get<std::string>()));
        d.push_back(std::move(r));
    }
    bool require_unit = j.value("unit_bounded", false);
    return validate_metric(std::move(labels), std::move(d), require_unit);
}

} // namespace simplexforge
