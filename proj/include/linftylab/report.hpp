#pragma once

// Deterministic reports: canonical JSON (sorted keys, fixed indentation) and
// a plain-text rendering. Reports never embed wall-clock data, so identical
// inputs and seed produce byte-identical output.

#include "linftylab/dgla.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace linftylab {

inline std::uint64_t fnv1a64(const std::string& bytes, std::uint64_t seed = 1469598103934665603ull) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string digest_string(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Report {
    std::string command;
    std::string inputs_digest;
    long long seed = 0;
    std::vector<CheckResult> results;
    nlohmann::json extra = nlohmann::json::object(); // command-specific payload

    int failed() const {
        int n = 0;
        for (const auto& r : results)
            if (!r.pass) ++n;
        return n;
    }
    bool all_pass() const { return failed() == 0; }

    void absorb(const ValidationReport& rep, const std::string& prefix) {
        for (const auto& c : rep.checks) results.push_back({prefix + c.name, c.pass, c.witness});
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["format"] = "linfty-lab/1";
        j["kind"] = "report";
        j["command"] = command;
        j["inputs_digest"] = inputs_digest;
        j["seed"] = seed;
        nlohmann::json rs = nlohmann::json::array();
        for (const auto& r : results) {
            nlohmann::json e;
            e["name"] = r.name;
            e["pass"] = r.pass;
            if (!r.witness.empty()) e["witness"] = r.witness;
            rs.push_back(std::move(e));
        }
        j["results"] = std::move(rs);
        j["summary"] = {{"checks", results.size()}, {"failed", failed()}};
        if (!extra.empty()) j["extra"] = extra;
        return j;
    }

    std::string to_json_text() const { return to_json().dump(2) + "\n"; }

    std::string to_text() const {
        std::string out;
        for (const auto& r : results) {
            out += r.pass ? "[PASS] " : "[FAIL] ";
            out += r.name;
            if (!r.witness.empty()) out += "  (witness: " + r.witness + ")";
            out += "\n";
        }
        out += "checks: " + std::to_string(results.size()) + ", failed: " + std::to_string(failed()) + "\n";
        return out;
    }
};

} // namespace linftylab
