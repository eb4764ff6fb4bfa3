#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kohn/curve.hpp"
#include "kohn/detail/format.hpp"
#include "kohn/detail/parallel.hpp"
#include "kohn/error.hpp"
#include "kohn/modes.hpp"

namespace kohn {

/// Modes with |m| <= m_max and |l| <= l_max.
struct ModeWindow {
    int m_max = 8;
    int l_max = 8;

    bool contains(ModeIndex mode) const noexcept { return std::abs(mode.m) <= m_max && std::abs(mode.l) <= l_max; }
    bool on_boundary(ModeIndex mode) const noexcept {
        return std::abs(mode.m) == m_max || std::abs(mode.l) == l_max;
    }
    friend bool operator==(const ModeWindow&, const ModeWindow&) = default;
};

inline constexpr int kDefaultGrid = 512;

struct SpectrumOptions {
    /// Grow the window by one while a boundary mode comes within 10% of the current minimum.
    bool adaptive = false;
    int max_window = 32;
    double adaptive_margin = 0.10;
    /// lhs <= rhs + bound_tolerance * max(1, rhs) counts as the bound holding.
    double bound_tolerance = 1e-8;
    double equality_slack = 1e-4;
    double equality_variance = 1e-10;
};

struct ModeEigenvalues {
    ModeIndex mode;
    double lambda0 = 0.0;
    double lambda1 = 0.0;
};

struct CurveSummary {
    double length = 0.0;
    double total_curvature = 0.0;
    double volume = 0.0;
    double mean_webster = 0.0;
    double kappa_relative_variance = 0.0;
};

struct SpectrumReport {
    CurveSummary curve;
    std::size_t grid = 0;
    ModeWindow window;
    std::vector<ModeEigenvalues> modes;
    double lambda1_estimate = std::numeric_limits<double>::infinity();
    double bound_rhs = 0.0;
    double ccy_lower = 0.0;
    double slack = 0.0;
    bool holds = false;
    bool equality = false;

    ModeIndex lambda1_mode;
    ModeWindow requested_window;
    bool adaptive = false;
    std::string caveat;
};

/// Chanillo-Chiu-Yang lower bound 1/2 min R on the first positive eigenvalue.
inline double ccy_lower_bound(const GeneratingCurve& curve) {
    const auto r = webster_scalar_curvature(curve);
    return 0.5 * *std::min_element(r.begin(), r.end());
}

namespace detail {

inline std::vector<ModeIndex> window_modes(ModeWindow w) {
    std::vector<ModeIndex> modes;
    for (int m = -w.m_max; m <= w.m_max; ++m)
        for (int l = -w.l_max; l <= w.l_max; ++l) modes.push_back({m, l});
    return modes;
}

inline std::string window_caveat(ModeWindow w) {
    return "lambda1 is minimized over the finite mode window |m| <= " + std::to_string(w.m_max) +
           ", |l| <= " + std::to_string(w.l_max) +
           "; modes outside it are not examined, so the estimate is an upper bound for lambda1(Box_b) "
           "up to discretization error";
}

}  // namespace detail

/// First positive eigenvalue of the Kohn Laplacian estimated as min over the window of
/// lambda_1(B_{ml}), together with the bound and its verdicts.
inline SpectrumReport lambda1_kohn(const GeneratingCurve& curve, ModeWindow window,
                                   const SpectrumOptions& options = {}) {
    if (window.m_max < 0 || window.l_max < 0) throw InvalidArgument("lambda1_kohn: window bounds must be >= 0");

    std::map<ModeIndex, ModeEigenvalues> table;
    auto evaluate = [&](ModeWindow w) {
        std::vector<ModeIndex> todo;
        for (const auto& mode : detail::window_modes(w))
            if (!table.contains(mode)) todo.push_back(mode);
        const auto rows = kohn::detail::parallel_map(todo, [&curve](ModeIndex mode) {
            const auto values = mode_spectrum(curve, mode, 2);
            return ModeEigenvalues{mode, values[0], values[1]};
        });
        for (const auto& row : rows) table[row.mode] = row;
    };

    ModeWindow current = window;
    evaluate(current);
    while (options.adaptive && std::max(current.m_max, current.l_max) < options.max_window) {
        double best = std::numeric_limits<double>::infinity(), boundary = best;
        for (const auto& [mode, row] : table) {
            if (!current.contains(mode)) continue;
            best = std::min(best, row.lambda1);
            if (current.on_boundary(mode)) boundary = std::min(boundary, row.lambda1);
        }
        if (boundary > (1.0 + options.adaptive_margin) * best) break;
        current = {current.m_max + 1, current.l_max + 1};
        evaluate(current);
    }

    SpectrumReport report;
    report.grid = curve.size();
    report.window = current;
    report.requested_window = window;
    report.adaptive = options.adaptive;
    report.caveat = detail::window_caveat(current);
    for (const auto& [mode, row] : table) {
        if (!current.contains(mode)) continue;
        report.modes.push_back(row);
        if (row.lambda1 < report.lambda1_estimate) {
            report.lambda1_estimate = row.lambda1;
            report.lambda1_mode = mode;
        }
    }

    const auto inv = geometric_invariants(curve);
    report.curve = {inv.length, inv.total_curvature, inv.volume, inv.mean_webster, kappa_relative_variance(curve)};
    report.bound_rhs = inv.bound_rhs;
    report.ccy_lower = ccy_lower_bound(curve);
    report.slack = report.bound_rhs - report.lambda1_estimate;
    report.holds = report.lambda1_estimate <= report.bound_rhs + options.bound_tolerance * std::max(1.0, report.bound_rhs);
    report.equality = std::abs(report.slack) < options.equality_slack &&
                      report.curve.kappa_relative_variance < options.equality_variance;
    return report;
}

struct UpperBoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = false;
    bool equality = false;
};

/// lambda_1(Box_b) <= (1/4 pi) \int kappa^2 ds, with equality reported only for circles.
inline UpperBoundCheck verify_upper_bound(const GeneratingCurve& curve, ModeWindow window,
                                          const SpectrumOptions& options = {}) {
    const auto r = lambda1_kohn(curve, window, options);
    return {r.lambda1_estimate, r.bound_rhs, r.slack, r.holds, r.equality};
}

struct TestFunctionQuotient {
    /// (Bp,p) + (Bq,q) = 1/2 \int kappa^2 (p^2 + q^2) ds
    double value_p_plus_q = 0.0;
    /// (p,p) + (q,q) = \int (p^2 + q^2) kappa ds
    double norm_p_plus_q = 0.0;
    double quotient = 0.0;
    /// \int p kappa ds and \int q kappa ds; both vanish for a closed curve.
    double p_moment = 0.0;
    double q_moment = 0.0;
    bool admissible = false;
    /// Same quotient evaluated with the discrete (0,0) form, after projecting out constants.
    double discrete_quotient = 0.0;
};

/// Rayleigh quotient of the tangent components p, q as test functions for B_00.
inline TestFunctionQuotient rayleigh_test_functions(const GeneratingCurve& curve) {
    const std::size_t n = curve.size();
    const auto kappa = curve.kappa();
    const auto p = curve.p();
    const auto q = curve.q();
    const double len = curve.length();

    std::vector<double> energy(n), norm(n), pk(n), qk(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k2 = kappa[i] * kappa[i];
        energy[i] = 0.5 * k2 * q[i] * q[i] + 0.5 * k2 * p[i] * p[i];
        norm[i] = (p[i] * p[i] + q[i] * q[i]) * kappa[i];
        pk[i] = p[i] * kappa[i];
        qk[i] = q[i] * kappa[i];
    }
    TestFunctionQuotient out;
    out.value_p_plus_q = periodic_quadrature(energy, len);
    out.norm_p_plus_q = periodic_quadrature(norm, len);
    out.quotient = out.value_p_plus_q / out.norm_p_plus_q;
    out.p_moment = periodic_quadrature(pk, len);
    out.q_moment = periodic_quadrature(qk, len);
    out.admissible = std::abs(out.p_moment) <= 1e-8 * len && std::abs(out.q_moment) <= 1e-8 * len;

    const ModeOperator op(curve, {0, 0});
    const double total = periodic_quadrature(kappa, len);
    std::vector<double> pp(p.begin(), p.end()), qq(q.begin(), q.end());
    for (std::size_t i = 0; i < n; ++i) {
        pp[i] -= out.p_moment / total;
        qq[i] -= out.q_moment / total;
    }
    out.discrete_quotient = (op.energy(pp) + op.energy(qq)) / (op.mass(pp) + op.mass(qq));
    return out;
}

enum class ReportFormat { json, csv };

inline nlohmann::ordered_json report_to_json(const SpectrumReport& r) {
    nlohmann::ordered_json j;
    j["curve"] = {{"length", r.curve.length},
                  {"total_curvature", r.curve.total_curvature},
                  {"volume", r.curve.volume},
                  {"mean_webster", r.curve.mean_webster},
                  {"kappa_relative_variance", r.curve.kappa_relative_variance}};
    j["grid"] = r.grid;
    j["window"] = {r.window.m_max, r.window.l_max};
    auto modes = nlohmann::ordered_json::array();
    for (const auto& row : r.modes)
        modes.push_back({{"m", row.mode.m}, {"l", row.mode.l}, {"lambda0", row.lambda0}, {"lambda1", row.lambda1}});
    j["modes"] = std::move(modes);
    j["lambda1_estimate"] = r.lambda1_estimate;
    j["bound_rhs"] = r.bound_rhs;
    j["ccy_lower"] = r.ccy_lower;
    j["slack"] = r.slack;
    j["holds"] = r.holds;
    j["equality"] = r.equality;
    j["lambda1_mode"] = {r.lambda1_mode.m, r.lambda1_mode.l};
    j["requested_window"] = {r.requested_window.m_max, r.requested_window.l_max};
    j["adaptive"] = r.adaptive;
    j["caveat"] = r.caveat;
    return j;
}

/// Deterministic serialization. CSV has one row per mode and, when the table is
/// nonempty, a trailing summary row.
inline std::string emit_report(const SpectrumReport& r, ReportFormat format) {
    if (format == ReportFormat::json) return report_to_json(r).dump(2) + "\n";

    using detail::format_double;
    std::string out = "kind,m,l,lambda0,lambda1,lambda1_estimate,bound_rhs,ccy_lower,slack,holds,equality\n";
    for (const auto& row : r.modes)
        out += "mode," + std::to_string(row.mode.m) + "," + std::to_string(row.mode.l) + "," +
               format_double(row.lambda0) + "," + format_double(row.lambda1) + ",,,,,,\n";
    if (!r.modes.empty())
        out += "summary," + std::to_string(r.lambda1_mode.m) + "," + std::to_string(r.lambda1_mode.l) + ",,," +
               format_double(r.lambda1_estimate) + "," + format_double(r.bound_rhs) + "," +
               format_double(r.ccy_lower) + "," + format_double(r.slack) + "," + (r.holds ? "true" : "false") +
               "," + (r.equality ? "true" : "false") + "\n";
    return out;
}

}  // namespace kohn
