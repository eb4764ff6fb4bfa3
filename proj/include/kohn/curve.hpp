#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "kohn/detail/fourier.hpp"
#include "kohn/error.hpp"

namespace kohn {

/// Tangent angle at s = 0. With this choice the unit circle has tangent (-sin s, cos s).
inline constexpr double kInitialTangentAngle = std::numbers::pi / 2;
/// Closure tolerance, relative to the curve length.
inline constexpr double kDefaultClosureTolerance = 1e-8;
inline constexpr double kTotalCurvatureTolerance = 1e-8;
inline constexpr double kFirstHarmonicTolerance = 1e-12;

/// A closed strictly convex curve described by its radius of curvature rho = 1/kappa
/// as a function of the turning angle phi:
///   rho(phi) = c_0 + sum_j (c_j cos j phi + d_j sin j phi).
/// cos_coeffs holds c_0..c_J, sin_coeffs holds d_1..d_J.
struct RadiusOfCurvatureProfile {
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    std::size_t harmonics() const noexcept {
        return std::max(cos_coeffs.empty() ? 0 : cos_coeffs.size() - 1, sin_coeffs.size());
    }
    double c(std::size_t j) const noexcept { return j < cos_coeffs.size() ? cos_coeffs[j] : 0.0; }
    double d(std::size_t j) const noexcept {
        return j >= 1 && j - 1 < sin_coeffs.size() ? sin_coeffs[j - 1] : 0.0;
    }

    double rho(double phi) const noexcept {
        double r = c(0);
        for (std::size_t j = 1; j <= harmonics(); ++j) {
            const double t = static_cast<double>(j) * phi;
            r += c(j) * std::cos(t) + d(j) * std::sin(t);
        }
        return r;
    }

    /// d rho / d phi
    double rho_prime(double phi) const noexcept {
        double r = 0.0;
        for (std::size_t j = 1; j <= harmonics(); ++j) {
            const double jj = static_cast<double>(j);
            r += jj * (-c(j) * std::sin(jj * phi) + d(j) * std::cos(jj * phi));
        }
        return r;
    }

    /// Arc length from turning angle 0 to phi.
    double arc_length(double phi) const noexcept {
        double s = c(0) * phi;
        for (std::size_t j = 1; j <= harmonics(); ++j) {
            const double jj = static_cast<double>(j);
            s += (c(j) * std::sin(jj * phi) - d(j) * (std::cos(jj * phi) - 1.0)) / jj;
        }
        return s;
    }

    double length() const noexcept { return 2.0 * std::numbers::pi * c(0); }

    /// Integral of rho(psi) e^{i psi} over [0, phi], i.e. the chord in the frame
    /// where the initial tangent is horizontal.
    std::complex<double> chord(double phi) const {
        using namespace std::complex_literals;
        const auto J = static_cast<long>(harmonics());
        std::complex<double> z = 0.0;
        for (long j = -J; j <= J; ++j) {
            std::complex<double> r;
            const auto a = static_cast<std::size_t>(std::labs(j));
            if (j == 0)
                r = c(0);
            else if (j > 0)
                r = std::complex<double>(c(a), -d(a)) * 0.5;
            else
                r = std::complex<double>(c(a), d(a)) * 0.5;
            if (j == -1) {
                z += r * phi;
            } else {
                const double w = static_cast<double>(j + 1);
                z += r * (std::exp(1i * (w * phi)) - 1.0) / (1i * w);
            }
        }
        return z;
    }

    /// Throws ClosureViolated / NonPositiveCurvature / InvalidArgument.
    void validate(std::size_t dense_points) const {
        if (cos_coeffs.empty() || !(cos_coeffs[0] > 0.0))
            throw InvalidArgument("profile: c_0 must be positive");
        if (std::abs(c(1)) > kFirstHarmonicTolerance || std::abs(d(1)) > kFirstHarmonicTolerance)
            throw ClosureViolated("profile: first harmonic of rho must vanish for the curve to close");
        for (std::size_t i = 0; i < dense_points; ++i) {
            const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(dense_points);
            if (!(rho(phi) > 0.0))
                throw NonPositiveCurvature("profile: rho(phi) <= 0 at phi = " + std::to_string(phi));
        }
    }
};

/// Arc-length samples of a closed generating curve. Immutable once built.
class GeneratingCurve {
public:
    /// `turning` is the turning angle phi(s_i) measured from the initial tangent.
    /// Positions are recentred so that their sample mean is the origin.
    GeneratingCurve(double length, std::vector<double> kappa, std::vector<double> turning,
                    std::vector<double> xi, std::vector<double> eta,
                    double closure_tolerance = kDefaultClosureTolerance)
        : length_(length), kappa_(std::move(kappa)), turning_(std::move(turning)),
          xi_(std::move(xi)), eta_(std::move(eta)) {
        const std::size_t n = kappa_.size();
        if (!(length_ > 0.0)) throw InvalidArgument("curve: length must be positive");
        if (n < 3 || turning_.size() != n || xi_.size() != n || eta_.size() != n)
            throw InvalidArgument("curve: inconsistent sample counts");
        for (double k : kappa_)
            if (!(k > 0.0)) throw NonPositiveCurvature("curve: curvature samples must be positive");

        const double h = step();
        double total = 0.0;
        for (double k : kappa_) total += k * h;
        if (std::abs(total - 2.0 * std::numbers::pi) > kTotalCurvatureTolerance)
            throw NotClosed("curve: total curvature " + std::to_string(total) + " differs from 2*pi");

        q_.resize(n);
        p_.resize(n);
        double sq = 0.0, sp = 0.0, mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            q_[i] = std::cos(turning_[i] + kInitialTangentAngle);
            p_[i] = std::sin(turning_[i] + kInitialTangentAngle);
            sq += q_[i];
            sp += p_[i];
            mx += xi_[i];
            my += eta_[i];
        }
        closure_residual_ = h * (std::abs(sq) + std::abs(sp));
        if (closure_residual_ > closure_tolerance * length_)
            throw NotClosed("curve: position does not close (residual " + std::to_string(closure_residual_) + ")");
        mx /= static_cast<double>(n);
        my /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            xi_[i] -= mx;
            eta_[i] -= my;
        }
    }

    std::size_t size() const noexcept { return kappa_.size(); }
    double length() const noexcept { return length_; }
    /// Uniform arc-length spacing l/n.
    double step() const noexcept { return length_ / static_cast<double>(kappa_.size()); }
    double s(std::size_t i) const noexcept { return static_cast<double>(i) * step(); }

    std::span<const double> kappa() const noexcept { return kappa_; }
    std::span<const double> turning() const noexcept { return turning_; }
    /// Tangent components q = xi', p = eta'.
    std::span<const double> q() const noexcept { return q_; }
    std::span<const double> p() const noexcept { return p_; }
    std::span<const double> xi() const noexcept { return xi_; }
    std::span<const double> eta() const noexcept { return eta_; }

    /// |sum q| h + |sum p| h, i.e. |xi(l) - xi(0)| + |eta(l) - eta(0)| for the interpolant.
    double closure_residual() const noexcept { return closure_residual_; }

private:
    double length_;
    std::vector<double> kappa_;
    std::vector<double> turning_;
    std::vector<double> xi_;
    std::vector<double> eta_;
    std::vector<double> q_;
    std::vector<double> p_;
    double closure_residual_ = 0.0;
};

namespace detail {

// Solves arc_length(phi) = s for phi in [0, 2 pi]; arc_length is strictly increasing.
inline double invert_arc_length(const RadiusOfCurvatureProfile& profile, double s) {
    double lo = 0.0, hi = 2.0 * std::numbers::pi;
    double phi = s / profile.c(0);
    for (int it = 0; it < 200; ++it) {
        const double f = profile.arc_length(phi) - s;
        if (f > 0.0)
            hi = std::min(hi, phi);
        else
            lo = std::max(lo, phi);
        double next = phi - f / profile.rho(phi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - phi) <= 1e-16 * (1.0 + std::abs(phi))) return next;
        phi = next;
    }
    return phi;
}

}  // namespace detail

/// Samples the curve with radius-of-curvature profile `profile` at n uniform arc-length points.
inline GeneratingCurve build_curve(const RadiusOfCurvatureProfile& profile, std::size_t n) {
    if (n < 16 || n % 2 != 0) throw InvalidArgument("build_curve: grid size must be even and >= 16");
    profile.validate(std::max<std::size_t>(8 * n, 4096));

    const double length = profile.length();
    const double h = length / static_cast<double>(n);
    const std::complex<double> frame = std::polar(1.0, kInitialTangentAngle);
    std::vector<double> kappa(n), turning(n), xi(n), eta(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = detail::invert_arc_length(profile, static_cast<double>(i) * h);
        turning[i] = phi;
        kappa[i] = 1.0 / profile.rho(phi);
        const std::complex<double> z = frame * profile.chord(phi);
        xi[i] = z.real();
        eta[i] = z.imag();
    }
    return GeneratingCurve(length, std::move(kappa), std::move(turning), std::move(xi), std::move(eta));
}

/// Reconstructs a curve from uniformly spaced curvature samples by integrating
/// phi' = kappa and (xi', eta') = (q, p) through the trigonometric interpolant.
inline GeneratingCurve curve_from_curvature_samples(std::span<const double> kappa, double length,
                                                    double closure_tolerance = kDefaultClosureTolerance) {
    const std::size_t n = kappa.size();
    if (n < 3) throw InvalidArgument("curve_from_curvature_samples: need at least 3 samples");
    if (!(length > 0.0)) throw InvalidArgument("curve_from_curvature_samples: length must be positive");
    for (double k : kappa)
        if (!(k > 0.0)) throw NonPositiveCurvature("curve_from_curvature_samples: samples must be positive");

    const double h = length / static_cast<double>(n);
    double total = 0.0;
    for (double k : kappa) total += k * h;
    if (std::abs(total - 2.0 * std::numbers::pi) > kTotalCurvatureTolerance)
        throw NotClosed("curve_from_curvature_samples: total turning " + std::to_string(total) + " is not 2*pi");

    const auto turn = detail::periodic_antiderivative(kappa, length);
    std::vector<double> turning(n), q(n), p(n);
    for (std::size_t i = 0; i < n; ++i) {
        turning[i] = turn.mean * static_cast<double>(i) * h + turn.values[i];
        q[i] = std::cos(turning[i] + kInitialTangentAngle);
        p[i] = std::sin(turning[i] + kInitialTangentAngle);
    }
    const auto x = detail::periodic_antiderivative(q, length);
    const auto y = detail::periodic_antiderivative(p, length);
    // A nonzero mean tangent is the drift that keeps the curve from closing; the constructor rejects it.
    return GeneratingCurve(length, {kappa.begin(), kappa.end()}, std::move(turning), x.values, y.values,
                           closure_tolerance);
}

/// Periodic trapezoidal rule (l/n) sum f_i.
inline double periodic_quadrature(std::span<const double> samples, double length) {
    double sum = 0.0;
    for (double v : samples) sum += v;
    return length * sum / static_cast<double>(samples.size());
}

/// Webster scalar curvature R = kappa/2 - (log kappa)''/(2 kappa) of the normalized
/// pseudohermitian structure, with (log kappa)'' from periodic central differences.
inline std::vector<double> webster_scalar_curvature(const GeneratingCurve& curve) {
    const std::size_t n = curve.size();
    const double h = curve.step();
    const auto kappa = curve.kappa();
    std::vector<double> logk(n), r(n);
    for (std::size_t i = 0; i < n; ++i) logk[i] = std::log(kappa[i]);
    for (std::size_t i = 0; i < n; ++i) {
        const double second = (logk[(i + 1) % n] - 2.0 * logk[i] + logk[(i + n - 1) % n]) / (h * h);
        r[i] = 0.5 * kappa[i] - second / (2.0 * kappa[i]);
    }
    return r;
}

struct GeometricInvariants {
    double length = 0.0;
    double total_curvature = 0.0;
    /// Vol(M) = 4 pi^2 * integral of kappa ds.
    double volume = 0.0;
    /// (1/4 pi) * integral of kappa^2 ds.
    double bound_rhs = 0.0;
    /// Average of the Webster curvature over M with respect to kappa ds dx dy.
    double mean_webster = 0.0;
};

inline GeometricInvariants geometric_invariants(const GeneratingCurve& curve) {
    const auto kappa = curve.kappa();
    const std::size_t n = curve.size();
    const auto r = webster_scalar_curvature(curve);
    std::vector<double> k2(n), rk(n);
    for (std::size_t i = 0; i < n; ++i) {
        k2[i] = kappa[i] * kappa[i];
        rk[i] = r[i] * kappa[i];
    }
    GeometricInvariants g;
    g.length = curve.length();
    g.total_curvature = periodic_quadrature(kappa, curve.length());
    g.volume = 4.0 * std::numbers::pi * std::numbers::pi * g.total_curvature;
    g.bound_rhs = periodic_quadrature(k2, curve.length()) / (4.0 * std::numbers::pi);
    g.mean_webster = periodic_quadrature(rk, curve.length()) / g.total_curvature;
    return g;
}

/// Variance of kappa divided by its squared mean, both taken with respect to ds.
inline double kappa_relative_variance(const GeneratingCurve& curve) {
    const auto kappa = curve.kappa();
    const double n = static_cast<double>(kappa.size());
    double mean = 0.0;
    for (double k : kappa) mean += k;
    mean /= n;
    double var = 0.0;
    for (double k : kappa) var += (k - mean) * (k - mean);
    var /= n;
    return var / (mean * mean);
}

/// Circle of the given radius: rho identically equal to the radius.
inline RadiusOfCurvatureProfile circle_profile(double radius) { return {{radius}, {}}; }

/// rho(phi) = 1 + eps cos 2 phi, an ellipse-like oval for 0 <= eps < 1.
inline RadiusOfCurvatureProfile oval_profile(double eps) { return {{1.0, 0.0, eps}, {}}; }

/// Seeded random profile: c_0 = 1, harmonics 2..max_harmonic with amplitudes
/// decaying like 1/j^2, rescaled so that rho >= 1 - max_deviation. The first harmonic is zero.
inline RadiusOfCurvatureProfile random_profile(std::uint64_t seed, std::size_t max_harmonic = 6,
                                               double max_deviation = 0.6) {
    std::mt19937_64 rng(seed);
    // Portable uniform in [-1, 1); std distributions are implementation-defined.
    auto uniform = [&rng] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };

    RadiusOfCurvatureProfile prof;
    prof.cos_coeffs.assign(max_harmonic + 1, 0.0);
    prof.sin_coeffs.assign(max_harmonic, 0.0);
    prof.cos_coeffs[0] = 1.0;
    double total = 0.0;
    for (std::size_t j = 2; j <= max_harmonic; ++j) {
        const double amp = 1.0 / static_cast<double>(j * j);
        prof.cos_coeffs[j] = amp * uniform();
        prof.sin_coeffs[j - 1] = amp * uniform();
        total += std::abs(prof.cos_coeffs[j]) + std::abs(prof.sin_coeffs[j - 1]);
    }
    if (total > 0.0) {
        const double scale = max_deviation / total * (0.5 + 0.5 * std::abs(uniform()));
        for (std::size_t j = 2; j <= max_harmonic; ++j) {
            prof.cos_coeffs[j] *= scale;
            prof.sin_coeffs[j - 1] *= scale;
        }
    }
    return prof;
}

}  // namespace kohn
