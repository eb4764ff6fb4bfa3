#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kohn/curve.hpp"
#include "kohn/error.hpp"
#include "kohn/spectrum.hpp"

namespace kohn {

/// Contents of a curve file. Exactly one of two encodings:
///   {"rho": {"cos": [c0, c1, ...], "sin": [d1, ...]}, "grid": n}
///   {"kappa_samples": [...], "length": l}
struct CurveSpec {
    std::optional<RadiusOfCurvatureProfile> profile;
    std::optional<std::size_t> grid;
    std::vector<double> kappa_samples;
    double length = 0.0;
};

namespace detail {

inline std::vector<double> number_array(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string("curve file: \"") + what + "\" must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw InputError(std::string("curve file: \"") + what + "\" must hold numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace detail

inline CurveSpec parse_curve_spec(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("curve file: top level must be a JSON object");
    const bool has_rho = j.contains("rho");
    const bool has_kappa = j.contains("kappa_samples");
    if (has_rho == has_kappa) throw InputError("curve file: give exactly one of \"rho\" or \"kappa_samples\"");

    CurveSpec spec;
    if (has_rho) {
        const auto& rho = j.at("rho");
        if (!rho.is_object() || !rho.contains("cos")) throw InputError("curve file: \"rho\" needs a \"cos\" array");
        RadiusOfCurvatureProfile prof;
        prof.cos_coeffs = detail::number_array(rho.at("cos"), "cos");
        if (rho.contains("sin")) prof.sin_coeffs = detail::number_array(rho.at("sin"), "sin");
        if (prof.cos_coeffs.empty()) throw InputError("curve file: \"cos\" needs at least c0");
        spec.profile = std::move(prof);
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            if (!g.is_number_integer() || g.get<long long>() <= 0)
                throw InputError("curve file: \"grid\" must be a positive integer");
            spec.grid = g.get<std::size_t>();
        }
    } else {
        spec.kappa_samples = detail::number_array(j.at("kappa_samples"), "kappa_samples");
        if (!j.contains("length") || !j.at("length").is_number())
            throw InputError("curve file: \"kappa_samples\" requires a numeric \"length\"");
        spec.length = j.at("length").get<double>();
    }
    return spec;
}

inline nlohmann::ordered_json to_json(const CurveSpec& spec) {
    nlohmann::ordered_json j;
    if (spec.profile) {
        j["rho"] = {{"cos", spec.profile->cos_coeffs}, {"sin", spec.profile->sin_coeffs}};
        if (spec.grid) j["grid"] = *spec.grid;
    } else {
        j["kappa_samples"] = spec.kappa_samples;
        j["length"] = spec.length;
    }
    return j;
}

inline CurveSpec load_curve_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open curve file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("curve file " + path + " is not valid JSON: " + e.what());
    }
    return parse_curve_spec(j);
}

/// Grid precedence for profiles: explicit override, then the file's "grid", then the default.
inline GeneratingCurve make_curve(const CurveSpec& spec, std::optional<std::size_t> grid_override = std::nullopt) {
    if (spec.profile) {
        const std::size_t n = grid_override ? *grid_override : spec.grid.value_or(kDefaultGrid);
        return build_curve(*spec.profile, n);
    }
    if (grid_override && *grid_override != spec.kappa_samples.size())
        throw InputError("--grid " + std::to_string(*grid_override) + " does not match the " +
                         std::to_string(spec.kappa_samples.size()) + " curvature samples in the file");
    return curve_from_curvature_samples(spec.kappa_samples, spec.length);
}

}  // namespace kohn
