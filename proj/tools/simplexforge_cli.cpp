#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simplexforge/simplexforge.hpp"

namespace sfx = simplexforge;
using sfx::Json;

namespace {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sfx::parse_error("cannot open \"" + path + "\"");
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw sfx::parse_error("JSON parse failure in \"" + path + "\": " + e.what());
    }
}

void write_output(const Json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw sfx::parse_error("cannot write \"" + out_path + "\"");
        out << text;
    }
}

std::vector<sfx::Rational> parse_widths(const std::string& text) {
    std::vector<sfx::Rational> widths;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ','))
        if (!token.empty()) widths.push_back(sfx::parse_rational(token));
    if (widths.empty()) throw sfx::parse_error("empty width list");
    return widths;
}

sfx::QRule parse_q_rule(const std::string& text) {
    if (text == "quartiles") return sfx::QRule::Quartiles;
    if (text == "midpoint") return sfx::QRule::Midpoint;
    throw sfx::parse_error("unknown q-rule \"" + text + "\" (quartiles|midpoint)");
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~Timer() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start).count();
        std::cerr << "elapsed: " << ms << " ms\n";
    }
};

int cmd_validate(const std::string& path, const std::string& out_path) {
    Json j = read_json_file(path);
    if (!j.contains("labels") || !j.contains("d"))
        throw sfx::parse_error("metric-space JSON needs labels and d");
    auto labels = j["labels"].get<std::vector<std::string>>();
    sfx::RationalMatrix d;
    for (const auto& row : j["d"]) {
        sfx::RationalRow r;
        for (const auto& v : row) r.push_back(sfx::parse_rational(v.get<std::string>()));
        d.push_back(std::move(r));
    }
    auto issues = sfx::metric_violations(labels, d, j.value("unit_bounded", false));

    sfx::Report report;
    report.command = "validate";
    report.params["path"] = path;
    if (issues.empty()) {
        report.checks.push_back({"metric-valid", true,
                                 std::to_string(labels.size()) + " points", ""});
    } else {
        for (const auto& issue : issues)
            report.checks.push_back({"metric-valid", false, "", issue.message});
    }
    write_output(report.to_json(), out_path);
    return issues.empty() ? 0 : 2;
}

int cmd_build(const std::string& path, const std::string& kind, std::size_t depth,
              std::size_t coords, std::size_t points, const std::string& widths_text,
              const std::string& q_rule_text, const std::string& out_path) {
    sfx::FiniteMetricSpace x = sfx::space_from_json(read_json_file(path));
    sfx::Enumeration d = sfx::Enumeration::all_of(x);
    auto family = sfx::distance_family(x, d.labels);
    std::size_t n = points == 0 ? x.size() : points;
    std::size_t k = coords == 0 ? x.size() : coords;
    sfx::SStage stage = sfx::build_stage(x, d, family, n, k);

    sfx::PhiParams params;
    params.widths = parse_widths(widths_text);
    params.depth = depth;
    params.q_rule = parse_q_rule(q_rule_text);

    if (kind == "sext") {
        write_output(sfx::to_json(stage), out_path);
    } else if (kind == "blowup") {
        std::size_t target = depth == 0
                                 ? sfx::full_cycle_length(x, d, params.widths)
                                 : depth;
        sfx::MetricScheme scheme = sfx::build_scheme(x, d, params.widths, target);
        write_output(sfx::to_json(sfx::build_blowup(stage, scheme)), out_path);
    } else if (kind == "phi") {
        write_output(sfx::to_json(sfx::build_phi_over_stage(stage, params)), out_path);
    } else {
        throw sfx::parse_error("unknown kind \"" + kind + "\" (sext|blowup|phi)");
    }
    return 0;
}

int cmd_verify(const std::string& path, const std::string& suite, std::uint64_t seed,
               const std::string& out_path) {
    sfx::verify::Options opt;
    opt.seed = seed;

    sfx::Report report;
    report.command = "verify";
    report.params["suite"] = suite;
    report.params["seed"] = seed;
    if (!path.empty()) report.params["path"] = path;

    if (!path.empty()) {
        Json j = read_json_file(path);
        if (j.contains("vertices")) {
            for (auto& c : sfx::verify::polytope_file_checks(j)) report.checks.push_back(c);
        } else {
            try {
                sfx::FiniteMetricSpace x = sfx::space_from_json(j);
                report.checks.push_back({"metric-valid", true,
                                         std::to_string(x.size()) + " points", ""});
            } catch (const sfx::Error& e) {
                report.checks.push_back({"metric-valid", false, "", e.what()});
            }
        }
    }

    std::vector<sfx::CheckResult> checks;
    if (suite == "geometry") checks = sfx::verify::geometry_suite(opt);
    else if (suite == "cones") checks = sfx::verify::cones_suite(opt);
    else if (suite == "sext") checks = sfx::verify::sext_suite(opt);
    else if (suite == "codec") checks = sfx::verify::codec_suite(opt);
    else if (suite == "all") checks = sfx::verify::all_suites(opt);
    else throw sfx::parse_error("unknown suite \"" + suite + "\"");
    for (auto& c : checks) report.checks.push_back(c);

    write_output(report.to_json(), out_path);
    return report.pass() ? 0 : 2;
}

int cmd_roundtrip(const std::string& path, const std::string& compare_path, std::size_t depth,
                  const std::string& widths_text, const std::string& q_rule_text,
                  const std::string& mode, std::uint64_t seed,
                  const std::string& tolerance_text, const std::string& out_path) {
    sfx::FiniteMetricSpace x = sfx::space_from_json(read_json_file(path));

    sfx::RoundtripParams params;
    params.widths = parse_widths(widths_text);
    params.depth = depth;
    params.q_rule = parse_q_rule(q_rule_text);
    params.seed = seed;
    if (mode == "strict") params.strict = true;
    else if (mode == "labeled") params.strict = false;
    else throw sfx::parse_error("unknown mode \"" + mode + "\" (strict|labeled)");
    if (!tolerance_text.empty()) params.neighborhood = sfx::parse_rational(tolerance_text);

    sfx::RoundtripReport report = sfx::roundtrip(x, params);
    Json j = sfx::to_json(report);
    j["command"] = "roundtrip";
    j["seed"] = seed;
    j["mode"] = mode;
    j["version"] = sfx::kVersion;

    if (!compare_path.empty()) {
        sfx::FiniteMetricSpace y = sfx::space_from_json(read_json_file(compare_path));
        sfx::PhiParams phi_params{params.widths, params.depth, params.q_rule};
        if (y.size() > sfx::kRoundtripGuard)
            throw sfx::guard_error("roundtrip: comparison space exceeds the point guard");
        sfx::PhiStage px = sfx::build_phi(x, phi_params);
        sfx::PhiStage py = sfx::build_phi(y, phi_params);
        auto match = sfx::phi_match_exhaustive(px, py);
        j["comparison"] = Json::object();
        j["comparison"]["path"] = compare_path;
        j["comparison"]["match"] = match.has_value();
        if (match) j["comparison"]["permutation"] = *match;
    }

    write_output(j, out_path);
    return report.pass() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simplexforge: exact-rational coding of finite metric spaces into simplex stages"};
    app.require_subcommand(1);

    std::string path, out_path, compare_path;
    std::string kind = "phi", suite = "all", q_rule = "quartiles", mode = "strict";
    std::string widths = "1/2,1/4,1/8", tolerance;
    std::size_t depth = 0, coords = 0, points = 0;
    std::uint64_t seed = 1;

    auto* validate = app.add_subcommand("validate", "validate a metric-space JSON file");
    validate->add_option("path", path)->required();
    validate->add_option("--out", out_path, "report file (stdout by default)");

    auto* build = app.add_subcommand("build", "build a stage, blow-up, or coded polytope");
    build->add_option("path", path)->required();
    build->add_option("--kind", kind, "sext|blowup|phi");
    build->add_option("--depth", depth, "scheme depth (0: one full cycle)");
    build->add_option("--coords", coords, "stage coordinate count (0: point count)");
    build->add_option("--points", points, "stage point count (0: all)");
    build->add_option("--widths", widths, "comma-separated dyadic window widths");
    build->add_option("--q-rule", q_rule, "quartiles|midpoint");
    build->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify", "run invariant suites");
    verify->add_option("path", path, "optional JSON input (metric space or polytope)");
    verify->add_option("--suite", suite, "geometry|cones|sext|codec|all");
    verify->add_option("--seed", seed);
    verify->add_option("--out", out_path);

    auto* roundtrip = app.add_subcommand("roundtrip", "code, decode, and compare");
    roundtrip->add_option("path", path)->required();
    roundtrip->add_option("--compare", compare_path, "second space for polytope comparison");
    roundtrip->add_option("--depth", depth, "final scheme depth (0: one full cycle)");
    roundtrip->add_option("--widths", widths);
    roundtrip->add_option("--q-rule", q_rule);
    roundtrip->add_option("--mode", mode, "strict|labeled");
    roundtrip->add_option("--seed", seed);
    roundtrip->add_option("--tolerance", tolerance, "apex matching radius override (p/q)");
    roundtrip->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        Timer timer;
        if (validate->parsed()) return cmd_validate(path, out_path);
        if (build->parsed())
            return cmd_build(path, kind, depth, coords, points, widths, q_rule, out_path);
        if (verify->parsed()) return cmd_verify(path, suite, seed, out_path);
        if (roundtrip->parsed())
            return cmd_roundtrip(path, compare_path, depth, widths, q_rule, mode, seed,
                                 tolerance, out_path);
    } catch (const sfx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
