#pragma once

#include <string>
#include <vector>

#include "simplexforge/json_io.hpp"

namespace simplexforge {

inline constexpr const char* kVersion = "0.1.0";

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;         // counts, measured values
    std::string counterexample;  // empty unless the check failed with one
};

// Machine-parseable run report. Identical configuration must serialize to
// identical bytes, so wall-clock timings are never part of it; the CLI prints
// those to stderr instead.
struct Report {
    std::string command;
    Json params = Json::object();
    std::vector<CheckResult> checks;
    std::string version = kVersion;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    Json to_json() const {
        Json j;
        j["command"] = command;
        j["params"] = params;
        Json arr = Json::array();
        for (const auto& c : checks) {
            Json cj;
            cj["name"] = c.name;
            cj["pass"] = c.pass;
            cj["details"] = c.details;
            if (!c.counterexample.empty()) cj["counterexample"] = c.counterexample;
            arr.push_back(std::move(cj));
        }
        j["checks"] = std::move(arr);
        j["pass"] = pass();
        j["version"] = version;
        return j;
    }
};

} // namespace simplexforge
