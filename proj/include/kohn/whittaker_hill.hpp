#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "kohn/detail/format.hpp"
#include "kohn/detail/parallel.hpp"
#include "kohn/eigen.hpp"
#include "kohn/error.hpp"
#include "kohn/modes.hpp"

namespace kohn {

/// Whittaker-Hill operator -d^2/dtau^2 + a^2 sin^2 tau + a cos tau on the 2 pi-periodic circle.
/// On a circle of curvature kappa the mode operator B_{ml} maps to it with
/// a = sqrt(m^2 + l^2) / kappa and E = 2 lambda / kappa.
struct WHParameters {
    double a = 0.0;
    double kappa = 1.0;

    double energy_from_lambda(double lambda) const noexcept { return 2.0 * lambda / kappa; }
    double lambda_from_energy(double energy) const noexcept { return 0.5 * kappa * energy; }
};

inline WHParameters mode_to_wh(double kappa, ModeIndex mode) {
    if (!(kappa > 0.0)) throw InvalidArgument("mode_to_wh: kappa must be positive");
    return {std::hypot(static_cast<double>(mode.m), static_cast<double>(mode.l)) / kappa, kappa};
}

/// Periodic second-order discretization of WH_a on n points, in the gauge of its
/// kernel exp(-a cos tau) (same construction as ModeOperator, with unit weight).
inline eigen::PeriodicSymTridiagonal wh_matrix(double a, std::size_t n) {
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
    std::vector<double> phase(n), diag(n), off(n, -1.0 / (h * h));
    for (std::size_t i = 0; i < n; ++i) phase[i] = -a * std::cos(static_cast<double>(i) * h);
    for (std::size_t i = 0; i < n; ++i) {
        const double up = phase[(i + 1) % n] - phase[i];
        const double down = phase[i] - phase[(i + n - 1) % n];
        diag[i] = (std::exp(up) + std::exp(-down)) / (h * h);
    }
    return {std::move(diag), std::move(off)};
}

/// Discrete Rayleigh quotient of WH_a for samples u on the n-point grid.
inline double wh_rayleigh_quotient(double a, std::span<const double> u) {
    const std::size_t n = u.size();
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -a * std::cos(static_cast<double>(i + 1) * h) + a * std::cos(static_cast<double>(i) * h);
        const double d = std::exp(-0.5 * x) * u[(i + 1) % n] - std::exp(0.5 * x) * u[i];
        num += d * d / h;
        den += u[i] * u[i] * h;
    }
    return num / den;
}

/// The k smallest eigenvalues E of WH_a on an n-point grid. E_0 must vanish.
inline std::vector<double> wh_spectrum(const WHParameters& params, std::size_t n, std::size_t k) {
    if (n < 64 || n % 2 != 0) throw InvalidArgument("wh_spectrum: grid must be even and >= 64");
    if (params.a < 0.0) throw InvalidArgument("wh_spectrum: a must be >= 0");
    if (k == 0) throw InvalidArgument("wh_spectrum: k must be >= 1");
    auto values = eigen::smallest_by_bisection(wh_matrix(params.a, n), std::max<std::size_t>(k, 1));
    if (std::abs(values[0]) > kZeroModeTolerance)
        throw GridTooCoarse("wh_spectrum: E_0 = " + std::to_string(values[0]) + " is not zero");
    values.resize(k);
    return values;
}

/// Richardson extrapolation (4 E(2n) - E(n)) / 3 of the O(h^2) grid spectra.
inline std::vector<double> wh_spectrum_extrapolated(const WHParameters& params, std::size_t n, std::size_t k) {
    const auto coarse = wh_spectrum(params, n, k);
    auto fine = wh_spectrum(params, 2 * n, k);
    for (std::size_t j = 0; j < k; ++j) fine[j] = (4.0 * fine[j] - coarse[j]) / 3.0;
    return fine;
}

/// N-th principal minor of the Ince matrix: the conjugated operator
/// -w'' - 2a sin(tau) w' restricted to odd functions, in the basis sin(k tau), k = 1..N.
/// Diagonal k^2, entry (k, k+1) = (k+1) a, entry (k+1, k) = -k a.
inline eigen::Tridiagonal ince_matrix(double a, std::size_t n) {
    if (n == 0) throw InvalidArgument("ince_matrix: N must be >= 1");
    std::vector<double> diag(n), sup(n - 1), sub(n - 1);
    for (std::size_t k = 1; k <= n; ++k) diag[k - 1] = static_cast<double>(k * k);
    for (std::size_t k = 1; k < n; ++k) {
        sup[k - 1] = static_cast<double>(k + 1) * a;
        sub[k - 1] = -static_cast<double>(k) * a;
    }
    return {std::move(diag), std::move(sup), std::move(sub)};
}

inline std::vector<std::complex<double>> ince_eigenvalues(double a, std::size_t n) {
    return eigen::eig_general_tridiagonal(ince_matrix(a, n));
}

/// Smallest real eigenvalue of the Ince matrix (NaN if every eigenvalue is complex).
inline double ince_smallest_real(double a, std::size_t n) {
    for (const auto& z : ince_eigenvalues(a, n))
        if (z.imag() == 0.0) return z.real();
    return std::numeric_limits<double>::quiet_NaN();
}

struct TruncationRow {
    std::size_t n = 0;
    /// Real part of the eigenvalue with smallest real part.
    double e1 = 0.0;
    double e1_imag = 0.0;
    /// The bottom of the truncated spectrum is a complex pair.
    bool complex_flag = false;
    /// Size of eigenvalue differences that are indistinguishable from rounding error at this N.
    double roundoff_floor = 0.0;
};

inline double ince_roundoff_floor(const eigen::Tridiagonal& t) {
    const auto b = eigen::balance(t);
    double norm = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        double row = std::abs(b.diag()[i]);
        if (i > 0) row += std::abs(b.sub()[i - 1]);
        if (i + 1 < b.size()) row += std::abs(b.super()[i]);
        norm = std::max(norm, row);
    }
    return 64.0 * std::numeric_limits<double>::epsilon() * norm;
}

/// E_1(N) for each N in `sizes` (ascending).
inline std::vector<TruncationRow> truncation_convergence(double a, std::span<const std::size_t> sizes) {
    if (!std::is_sorted(sizes.begin(), sizes.end()))
        throw InvalidArgument("truncation_convergence: sizes must be ascending");
    std::vector<TruncationRow> rows;
    for (std::size_t n : sizes) {
        const auto t = ince_matrix(a, n);
        const auto values = eigen::eig_general_tridiagonal(t);
        TruncationRow row;
        row.n = n;
        row.e1 = values.front().real();
        row.e1_imag = std::abs(values.front().imag());
        row.complex_flag = values.front().imag() != 0.0;
        row.roundoff_floor = ince_roundoff_floor(t);
        rows.push_back(row);
    }
    return rows;
}

/// Successive differences |E_1(N_{j+1}) - E_1(N_j)| decrease, where a difference at or
/// below the rounding floor of the larger truncation counts as converged.
inline bool differences_decreasing(std::span<const TruncationRow> rows) {
    for (std::size_t j = 2; j < rows.size(); ++j) {
        const double before = std::abs(rows[j - 1].e1 - rows[j - 2].e1);
        const double after = std::abs(rows[j].e1 - rows[j - 1].e1);
        if (!(after < before || after <= rows[j].roundoff_floor)) return false;
    }
    return true;
}

/// Half-height of the excluded sector; (pi/2)/sum_k k^-2 exceeds it for every N.
inline constexpr double kSectorDelta = 3.0 / std::numbers::pi;
inline constexpr double kEnergyFloorTolerance = 1e-8;

struct WHSweepRow {
    double a = 0.0;
    std::size_t n = 0;
    double e1 = 0.0;
    double e1_imag = 0.0;
    bool complex_pair = false;
    bool hypotheses_ok = false;
    bool in_sector = false;
    /// Smallest eigenvalue with zero imaginary part (infinity when there is none).
    double min_real_eigenvalue = std::numeric_limits<double>::infinity();
    bool pass = false;
};

struct WHSweep {
    bool all_pass = false;
    std::vector<WHSweepRow> rows;
};

/// For each a: certify the Ince minor with delta = 3/pi, check no eigenvalue lies in the
/// sector (mu = 1) and every real eigenvalue is >= 1. Throws CertificateFailed when a
/// certified matrix has an eigenvalue inside the sector.
inline WHSweep verify_E_geq_1(std::span<const double> a_values, std::size_t n) {
    if (n == 0) throw InvalidArgument("verify_E_geq_1: N must be >= 1");
    std::vector<double> as(a_values.begin(), a_values.end());
    WHSweep sweep;
    sweep.rows = detail::parallel_map(as, [n](double a) {
        if (a < 0.0) throw InvalidArgument("verify_E_geq_1: a must be >= 0");
        const auto t = ince_matrix(a, n);
        const auto cert = eigen::sector_exclusion_certificate(t, kSectorDelta);
        const auto values = eigen::eig_general_tridiagonal(t);
        WHSweepRow row;
        row.a = a;
        row.n = n;
        row.e1 = values.front().real();
        row.e1_imag = std::abs(values.front().imag());
        row.complex_pair = values.front().imag() != 0.0;
        row.hypotheses_ok = cert.hypotheses_ok;
        for (const auto& z : values) {
            if (eigen::point_in_sector(z, cert.region)) {
                row.in_sector = true;
                if (cert.hypotheses_ok)
                    throw CertificateFailed(a, z.real(), z.imag(),
                                            "eigenvalue " + std::to_string(z.real()) + " + " +
                                                std::to_string(z.imag()) + "i of the Ince matrix at a = " +
                                                std::to_string(a) + " lies in the excluded sector");
            }
            if (z.imag() == 0.0) row.min_real_eigenvalue = std::min(row.min_real_eigenvalue, z.real());
        }
        row.pass = row.hypotheses_ok && !row.in_sector && row.min_real_eigenvalue >= 1.0 - kEnergyFloorTolerance;
        return row;
    });
    sweep.all_pass = std::all_of(sweep.rows.begin(), sweep.rows.end(), [](const auto& r) { return r.pass; });
    return sweep;
}

/// steps evenly spaced values from a_min to a_max inclusive (a_min alone when steps == 1).
inline std::vector<double> a_grid(double a_min, double a_max, std::size_t steps) {
    if (steps == 0) throw InvalidArgument("a_grid: steps must be >= 1");
    if (a_min > a_max) throw InvalidArgument("a_grid: a_min must not exceed a_max");
    std::vector<double> out(steps);
    for (std::size_t i = 0; i < steps; ++i)
        out[i] = steps == 1 ? a_min
                            : a_min + (a_max - a_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    return out;
}

/// Columns a, N, E1, in_sector, pass, complex_pair.
inline std::string sweep_to_csv(const WHSweep& sweep) {
    std::string out = "a,N,E1,in_sector,pass,complex_pair\n";
    for (const auto& r : sweep.rows) {
        out += detail::format_double(r.a) + "," + std::to_string(r.n) + "," + detail::format_double(r.e1) + "," +
               (r.in_sector ? "true" : "false") + "," + (r.pass ? "true" : "false") + "," + (r.complex_pair ? "true" : "false") + "\n";
    }
    return out;
}

}  // namespace kohn
