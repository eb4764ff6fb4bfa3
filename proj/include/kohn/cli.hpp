#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "kohn/curve.hpp"
#include "kohn/error.hpp"
#include "kohn/io.hpp"
#include "kohn/spectrum.hpp"
#include "kohn/whittaker_hill.hpp"

namespace kohn::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kInvariantViolated = 2,
};

struct RunConfig {
    std::string command;
    /// analyze: curve file; make-curve: preset name (circle, ellipse, random).
    std::string input;
    std::optional<int> grid;
    ModeWindow window{8, 8};
    bool adaptive = false;
    std::string output;
    ReportFormat format = ReportFormat::json;

    double a_min = 0.0;
    double a_max = 10.0;
    int steps = 41;
    int ince_size = 60;

    std::uint64_t seed = 1;
    double radius = 1.0;
    double eps = 0.3;

    /// Throws InputError.
    void validate() const {
        if (grid && (*grid < 64 || *grid % 2 != 0)) throw InputError("--grid must be even and >= 64");
        if (window.m_max < 0 || window.l_max < 0) throw InputError("--window bounds must be >= 0");
        if (a_min > a_max) throw InputError("--a-min must not exceed --a-max");
        if (a_min < 0.0) throw InputError("--a-min must be >= 0");
        if (steps < 1) throw InputError("--steps must be >= 1");
        if (ince_size < 1) throw InputError("--N must be >= 1");
        if (!(radius > 0.0)) throw InputError("--radius must be positive");
        if (!(eps >= 0.0 && eps < 1.0)) throw InputError("--eps must lie in [0, 1)");
    }
};

namespace detail {

// Writes to --out when given, otherwise to `out`.
inline void deliver(const RunConfig& config, const std::string& text, std::ostream& out) {
    if (config.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(config.output, std::ios::binary);
    if (!file) throw InputError("cannot write output file: " + config.output);
    file << text;
}

}  // namespace detail

/// Spectrum report for a curve file. Exit 0 when the bound holds, 2 when it does not.
inline int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        const CurveSpec spec = load_curve_spec(config.input);
        std::optional<std::size_t> grid;
        if (config.grid) grid = static_cast<std::size_t>(*config.grid);
        const GeneratingCurve curve = make_curve(spec, grid);

        SpectrumOptions options;
        options.adaptive = config.adaptive;
        const SpectrumReport report = lambda1_kohn(curve, config.window, options);

        std::string text;
        if (config.format == ReportFormat::json) {
            auto j = report_to_json(report);
            j["curve"]["spec"] = to_json(spec);
            text = j.dump(2) + "\n";
        } else {
            text = emit_report(report, ReportFormat::csv);
        }
        detail::deliver(config, text, out);

        if (!report.holds) {
            err << "analyze: bound violated: lambda1 " << report.lambda1_estimate << " > " << report.bound_rhs << "\n";
            return kInvariantViolated;
        }
        return kOk;
    } catch (const GridTooCoarse& e) {
        err << "analyze: " << e.what() << "\n";
        return kInvariantViolated;
    } catch (const NoConvergence& e) {
        err << "analyze: " << e.what() << "\n";
        return kInvariantViolated;
    } catch (const Error& e) {
        err << "analyze: " << e.what() << "\n";
        return kInputError;
    }
}

/// Ince-matrix sweep over a; exit 0 iff every row passes.
inline int cmd_wh_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        const auto as = a_grid(config.a_min, config.a_max, static_cast<std::size_t>(config.steps));
        const WHSweep sweep = verify_E_geq_1(as, static_cast<std::size_t>(config.ince_size));
        detail::deliver(config, sweep_to_csv(sweep), out);
        for (const auto& row : sweep.rows)
            if (row.complex_pair)
                err << "wh-sweep: a = " << row.a << ", N = " << row.n << ": lowest eigenvalues form a complex pair "
                    << row.e1 << " +/- " << row.e1_imag << "i\n";
        if (!sweep.all_pass) {
            err << "wh-sweep: not every row passed\n";
            return kInvariantViolated;
        }
        return kOk;
    } catch (const CertificateFailed& e) {
        err << "wh-sweep: " << e.what() << "\n";
        return kInvariantViolated;
    } catch (const NoConvergence& e) {
        err << "wh-sweep: " << e.what() << "\n";
        return kInvariantViolated;
    } catch (const Error& e) {
        err << "wh-sweep: " << e.what() << "\n";
        return kInputError;
    }
}

/// Writes a curve file for one of the presets circle, ellipse, random.
inline int cmd_make_curve(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        CurveSpec spec;
        if (config.input == "circle")
            spec.profile = circle_profile(config.radius);
        else if (config.input == "ellipse")
            spec.profile = oval_profile(config.eps);
        else if (config.input == "random")
            spec.profile = random_profile(config.seed);
        else
            throw InputError("make-curve: unknown preset '" + config.input + "' (circle, ellipse, random)");
        spec.grid = static_cast<std::size_t>(config.grid.value_or(kDefaultGrid));
        detail::deliver(config, to_json(spec).dump(2) + "\n", out);
        return kOk;
    } catch (const Error& e) {
        err << "make-curve: " << e.what() << "\n";
        return kInputError;
    }
}

inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.command == "analyze") return cmd_analyze(config, out, err);
    if (config.command == "wh-sweep") return cmd_wh_sweep(config, out, err);
    if (config.command == "make-curve") return cmd_make_curve(config, out, err);
    err << "unknown command '" << config.command << "'\n";
    return kInputError;
}

}  // namespace kohn::cli
