#pragma once

#include "phonolase/errors.hpp"
#include "phonolase/laser.hpp"
#include "phonolase/model.hpp"
#include "phonolase/regime.hpp"
#include "phonolase/validity.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <fstream>
#include <string>
#include <string_view>

namespace phonolase {

/// Tunables that are not physical parameters.
struct Options {
    RegimeThresholds regime;
    ValidityOptions validity;
    LaserOptions laser;
    double n_plus = 1.0;
    double n_minus = 0.0;
};

struct Config {
    PhysicalParams params;
    Options options;
};

namespace detail {

struct ParamField {
    std::string_view name;
    double PhysicalParams::*member;
    bool required;
};

inline constexpr std::array<ParamField, 11> param_fields{{
    {"delta1", &PhysicalParams::delta1, true},
    {"delta2", &PhysicalParams::delta2, true},
    {"lambda1", &PhysicalParams::lambda1, true},
    {"lambda2", &PhysicalParams::lambda2, true},
    {"phi_d1", &PhysicalParams::phi_d1, true},
    {"phi_d2", &PhysicalParams::phi_d2, true},
    {"j_hop", &PhysicalParams::j_hop, true},
    {"g0", &PhysicalParams::g0, true},
    {"omega_m", &PhysicalParams::omega_m, false},
    {"kappa", &PhysicalParams::kappa, true},
    {"gamma_m", &PhysicalParams::gamma_m, true},
}};

inline double number_at(const nlohmann::json& obj, const std::string& key) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw InvalidConfig("key '" + key + "' must be a number");
    return v.get<double>();
}

inline Options parse_options(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidConfig("'options' must be an object");
    Options o;
    for (const auto& [key, value] : j.items()) {
        const double x = number_at(j, key);
        if (key == "f1_hi") o.regime.f1_hi = x;
        else if (key == "f1_lo") o.regime.f1_lo = x;
        else if (key == "smallness") o.validity.smallness = x;
        else if (key == "resonance_floor") o.validity.resonance_floor = x;
        else if (key == "exponent_cap") o.laser.exponent_cap = x;
        else if (key == "kappa_gamma_warn") o.laser.kappa_gamma_warn = x;
        else if (key == "n_plus") o.n_plus = x;
        else if (key == "n_minus") o.n_minus = x;
        else throw InvalidConfig("unknown option '" + key + "'");
    }
    if (!(o.regime.f1_lo > 0.0 && o.regime.f1_lo < o.regime.f1_hi))
        throw InvalidConfig("options need 0 < f1_lo < f1_hi");
    if (o.n_plus < o.n_minus || o.n_minus < 0.0) throw InvalidConfig("options need n_plus >= n_minus >= 0");
    return o;
}

} // namespace detail

/// Reads a config object. Keys must match the parameter names exactly; unknown
/// keys are rejected so that typos in sweep scripts fail loudly.
inline Config parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidConfig("config must be a JSON object");
    Config cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "options") continue;
        bool known = false;
        for (const auto& f : detail::param_fields) known = known || f.name == key;
        if (!known) throw InvalidConfig("unknown key '" + key + "'");
    }
    for (const auto& f : detail::param_fields) {
        const std::string key(f.name);
        if (j.contains(key))
            cfg.params.*f.member = detail::number_at(j, key);
        else if (f.required)
            throw InvalidConfig("missing key '" + key + "'");
    }
    if (j.contains("options")) cfg.options = detail::parse_options(j.at("options"));
    return cfg;
}

inline Config parse_config(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidConfig(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

inline Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config '" + path + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(std::string_view(text));
}

inline nlohmann::json to_json(const PhysicalParams& p) {
    nlohmann::json j;
    for (const auto& f : detail::param_fields) j[std::string(f.name)] = p.*f.member;
    return j;
}

/// Whether `name` can be swept: any parameter field, the virtual `delta_phi`
/// axis, or the laser densities.
inline bool is_axis(std::string_view name) {
    if (name == "delta_phi" || name == "n_plus" || name == "n_minus") return true;
    for (const auto& f : detail::param_fields)
        if (f.name == name) return true;
    return false;
}

/// `delta_phi` moves Φ_d1 and keeps Φ_d2 fixed.
inline void set_axis(Config& cfg, std::string_view name, double value) {
    if (name == "delta_phi") {
        cfg.params.phi_d1 = cfg.params.phi_d2 + value;
        return;
    }
    if (name == "n_plus") {
        cfg.options.n_plus = value;
        return;
    }
    if (name == "n_minus") {
        cfg.options.n_minus = value;
        return;
    }
    for (const auto& f : detail::param_fields) {
        if (f.name == name) {
            cfg.params.*f.member = value;
            return;
        }
    }
    throw InvalidConfig("unknown axis '" + std::string(name) + "'");
}

} // namespace phonolase
