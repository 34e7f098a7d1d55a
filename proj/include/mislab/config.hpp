#pragma once

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "mislab/mis.hpp"
#include "mislab/sft2d.hpp"
#include "mislab/surface.hpp"

namespace mislab {

using json = nlohmann::json;

// Validated run configuration; round-trips losslessly through JSON and
// rejects unknown keys everywhere.
struct RunConfig {
    enum class SystemKind { Mis, Sft2d };

    SystemKind kind = SystemKind::Mis;
    std::optional<MisSpec> mis;
    std::optional<Sft2dSpec> sft;
    std::string format = "csv"; // csv | json
    PrecPolicy precision = PrecPolicy::automatic();
    unsigned long seed = 0;

    // kept verbatim for lossless serialization
    json system_fragment;
};

namespace cfg_detail {

inline void check_keys(const json& j, std::initializer_list<const char*> allowed,
                       const std::string& context) {
    if (!j.is_object()) fail(errc::parse_error, context + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) fail(errc::parse_error, "unknown key '" + it.key() + "' in " + context);
    }
}

inline SubshiftSpec parse_omega(const json& j) {
    check_keys(j, {"kind", "alphabet_size", "transition"}, "omega");
    if (!j.contains("kind") || !j["kind"].is_string())
        fail(errc::parse_error, "omega.kind must be 'full' or 'sft'");
    std::string kind = j["kind"].get<std::string>();
    if (!j.contains("alphabet_size") || !j["alphabet_size"].is_number_integer())
        fail(errc::parse_error, "omega.alphabet_size must be an integer");
    int r = j["alphabet_size"].get<int>();
    if (r < 2) fail(errc::invalid_spec, "alphabet_size must be >= 2");
    if (kind == "full") {
        if (j.contains("transition"))
            fail(errc::parse_error, "full shifts carry no transition matrix");
        return SubshiftSpec::full(r);
    }
    if (kind != "sft") fail(errc::parse_error, "omega.kind must be 'full' or 'sft'");
    if (!j.contains("transition") || !j["transition"].is_array())
        fail(errc::parse_error, "omega.transition must be a 0/1 matrix");
    std::vector<std::vector<int>> m;
    for (const auto& row : j["transition"]) {
        if (!row.is_array()) fail(errc::parse_error, "transition rows must be arrays");
        std::vector<int> out;
        for (const auto& v : row) {
            if (!v.is_number_integer()) fail(errc::parse_error, "transition entries must be 0/1");
            out.push_back(v.get<int>());
        }
        m.push_back(std::move(out));
    }
    if (static_cast<int>(m.size()) != r)
        fail(errc::invalid_spec, "transition size must match alphabet_size");
    return SubshiftSpec::sft(std::move(m));
}

} // namespace cfg_detail

inline RunConfig parse_config_json(const json& j) {
    cfg_detail::check_keys(j, {"system", "output", "precision", "seed"}, "config");
    if (!j.contains("system")) fail(errc::parse_error, "config needs a 'system' object");
    const json& sys = j["system"];
    if (!sys.is_object() || !sys.contains("type") || !sys["type"].is_string())
        fail(errc::parse_error, "system.type must be 'mis' or 'sft2d'");

    RunConfig cfg;
    cfg.system_fragment = sys;
    std::string type = sys["type"].get<std::string>();
    if (type == "mis") {
        cfg_detail::check_keys(sys, {"type", "multipliers", "omega"}, "system");
        if (!sys.contains("multipliers") || !sys["multipliers"].is_array())
            fail(errc::parse_error, "system.multipliers must be an array");
        std::vector<long> ps;
        for (const auto& v : sys["multipliers"]) {
            if (!v.is_number_integer()) fail(errc::parse_error, "multipliers must be integers");
            ps.push_back(v.get<long>());
        }
        if (!sys.contains("omega")) fail(errc::parse_error, "system.omega is required");
        cfg.kind = RunConfig::SystemKind::Mis;
        cfg.mis = MisSpec::of(MultiplierVector::of(ps), cfg_detail::parse_omega(sys["omega"]));
    } else if (type == "sft2d") {
        cfg_detail::check_keys(sys, {"type", "alphabet_size", "allowed_2x2"}, "system");
        if (!sys.contains("alphabet_size") || !sys["alphabet_size"].is_number_integer())
            fail(errc::parse_error, "system.alphabet_size must be an integer");
        if (!sys.contains("allowed_2x2") || !sys["allowed_2x2"].is_array())
            fail(errc::parse_error, "system.allowed_2x2 must be an array of 4-symbol strings");
        std::vector<std::string> pats;
        for (const auto& v : sys["allowed_2x2"]) {
            if (!v.is_string()) fail(errc::parse_error, "allowed_2x2 entries must be strings");
            pats.push_back(v.get<std::string>());
        }
        cfg.kind = RunConfig::SystemKind::Sft2d;
        cfg.sft = Sft2dSpec::from_strings(sys["alphabet_size"].get<int>(), pats);
    } else {
        fail(errc::parse_error, "system.type must be 'mis' or 'sft2d'");
    }

    if (j.contains("output")) {
        cfg_detail::check_keys(j["output"], {"format"}, "output");
        if (j["output"].contains("format")) {
            std::string f = j["output"]["format"].get<std::string>();
            if (f != "csv" && f != "json") fail(errc::parse_error, "format must be csv or json");
            cfg.format = f;
        }
    }
    if (j.contains("precision")) {
        const json& p = j["precision"];
        cfg_detail::check_keys(p, {"policy", "bits"}, "precision");
        if (p.contains("policy")) {
            std::string pol = p["policy"].get<std::string>();
            if (pol != "auto") fail(errc::parse_error, "precision.policy must be 'auto'");
            cfg.precision = PrecPolicy::automatic();
        }
        if (p.contains("bits")) {
            long bits = p["bits"].get<long>();
            if (bits < 32 || bits > 8000000)
                fail(errc::invalid_spec, "precision.bits out of range");
            cfg.precision = PrecPolicy::fixed(static_cast<mpfr_prec_t>(bits));
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) fail(errc::parse_error, "seed must be unsigned");
        cfg.seed = j["seed"].get<unsigned long>();
    }
    return cfg;
}

inline RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config_json(j);
}

inline json serialize_config(const RunConfig& cfg) {
    json j;
    j["system"] = cfg.system_fragment;
    j["output"] = {{"format", cfg.format}};
    if (cfg.precision.auto_prec)
        j["precision"] = {{"policy", "auto"}};
    else
        j["precision"] = {{"bits", static_cast<long>(cfg.precision.bits)}};
    j["seed"] = cfg.seed;
    return j;
}

} // namespace mislab
