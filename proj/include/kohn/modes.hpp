#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kohn/curve.hpp"
#include "kohn/eigen.hpp"
#include "kohn/error.hpp"

namespace kohn {

/// Fourier indices of the mode v(s) exp(i m x + i l y).
struct ModeIndex {
    int m = 0;
    int l = 0;

    friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

inline std::string to_string(ModeIndex mode) {
    return "(" + std::to_string(mode.m) + "," + std::to_string(mode.l) + ")";
}

/// The two summands of V_{m,l}: (l p + m q)^2 and kappa (l q - m p).
struct PotentialParts {
    std::vector<double> square;
    std::vector<double> curvature;
};

inline PotentialParts potential_parts(const GeneratingCurve& curve, ModeIndex mode) {
    const std::size_t n = curve.size();
    const auto q = curve.q();
    const auto p = curve.p();
    const auto kappa = curve.kappa();
    const double m = mode.m, l = mode.l;
    PotentialParts parts{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double w = l * p[i] + m * q[i];
        parts.square[i] = w * w;
        parts.curvature[i] = kappa[i] * (l * q[i] - m * p[i]);
    }
    return parts;
}

/// V_{m,l} = (l p + m q)^2 + kappa (l q - m p).
inline std::vector<double> potential(const GeneratingCurve& curve, ModeIndex mode) {
    auto parts = potential_parts(curve, mode);
    for (std::size_t i = 0; i < parts.square.size(); ++i) parts.square[i] += parts.curvature[i];
    return std::move(parts.square);
}

/// Log of the kernel function, l eta + m xi.
inline std::vector<double> kernel_phase(const GeneratingCurve& curve, ModeIndex mode) {
    const std::size_t n = curve.size();
    std::vector<double> phase(n);
    for (std::size_t i = 0; i < n; ++i) phase[i] = mode.l * curve.eta()[i] + mode.m * curve.xi()[i];
    return phase;
}

/// Threshold for accepting the lowest discrete eigenvalue as the zero mode: |lambda_0| < tol * max(1, lambda_1).
inline constexpr double kZeroModeTolerance = 1e-6;

/// B_{ml} = (1/2 kappa)(-d^2/ds^2 + V_{m,l}) on L^2(kappa ds), discretized in form domain.
///
/// The quadratic form is 1/2 \int |v' - Phi' v|^2 ds with Phi = l eta + m xi, which
/// integrates by parts to 1/2 \int (v'^2 + V_{m,l} v^2) ds because Phi' = l p + m q and
/// Phi'' = kappa (l q - m p). Differences are taken in the gauge of e^Phi:
///   (D v)_{i+1/2} = (e^{-x_i/2} v_{i+1} - e^{x_i/2} v_i) / h,   x_i = Phi_{i+1} - Phi_i,
/// so the samples of exp(Phi) span the discrete kernel exactly. The mass is
/// diagonal, M_ii = kappa_i h.
class ModeOperator {
public:
    ModeOperator(const GeneratingCurve& curve, ModeIndex mode)
        : curve_(&curve), mode_(mode), potential_(kohn::potential(curve, mode)) {
        const auto phase = kernel_phase(curve, mode);
        const std::size_t n = phase.size();
        steps_.resize(n);
        for (std::size_t i = 0; i < n; ++i) steps_[i] = phase[(i + 1) % n] - phase[i];
    }
    ModeOperator(GeneratingCurve&&, ModeIndex) = delete;

    ModeIndex mode() const noexcept { return mode_; }
    const GeneratingCurve& curve() const noexcept { return *curve_; }
    std::span<const double> potential() const noexcept { return potential_; }

    /// M^{-1/2} S M^{-1/2} with its periodic corner couplings.
    eigen::PeriodicSymTridiagonal periodic_matrix() const {
        const std::size_t n = curve_->size();
        const double h = curve_->step();
        const auto kappa = curve_->kappa();
        std::vector<double> diag(n), off(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t prev = (i + n - 1) % n, next = (i + 1) % n;
            const double s_ii = (std::exp(steps_[i]) + std::exp(-steps_[prev])) / (2.0 * h);
            diag[i] = s_ii / (kappa[i] * h);
            off[i] = -1.0 / (2.0 * h) / (h * std::sqrt(kappa[i] * kappa[next]));
        }
        return {std::move(diag), std::move(off)};
    }

    eigen::DenseSymmetric dense_matrix() const { return eigen::DenseSymmetric::from(periodic_matrix()); }

    /// Discrete (B v, v).
    double energy(std::span<const double> v) const {
        const std::size_t n = curve_->size();
        const double h = curve_->step();
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double half = 0.5 * steps_[i];
            const double dv = std::exp(-half) * v[(i + 1) % n] - std::exp(half) * v[i];
            e += dv * dv;
        }
        return e / (2.0 * h);
    }

    /// Discrete (v, v) in L^2(kappa ds).
    double mass(std::span<const double> v) const {
        const auto kappa = curve_->kappa();
        double m = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) m += kappa[i] * v[i] * v[i];
        return m * curve_->step();
    }

    double rayleigh_quotient(std::span<const double> v) const { return energy(v) / mass(v); }

private:
    const GeneratingCurve* curve_;
    ModeIndex mode_;
    std::vector<double> potential_;
    std::vector<double> steps_;
};

/// Symmetric matrix whose eigenvalues approximate the spectrum of the mode operator.
inline eigen::DenseSymmetric assemble(const GeneratingCurve& curve, ModeIndex mode) {
    return ModeOperator(curve, mode).dense_matrix();
}

enum class SpectrumBackend {
    /// Orthogonal band reduction of the periodic structure, O(n^2), then Sturm bisection.
    bisection,
    /// Householder + QL on the dense matrix, O(n^3).
    dense,
};

/// The k smallest eigenvalues of B_{ml}, ascending. lambda_0 must come out as 0,
/// otherwise GridTooCoarse is thrown.
inline std::vector<double> mode_spectrum(const GeneratingCurve& curve, ModeIndex mode, std::size_t k,
                                         SpectrumBackend backend = SpectrumBackend::bisection) {
    if (k == 0) throw InvalidArgument("mode_spectrum: k must be >= 1");
    const std::size_t want = std::max<std::size_t>(k, 2);
    const ModeOperator op(curve, mode);
    std::vector<double> values = backend == SpectrumBackend::bisection
                                     ? eigen::smallest_by_bisection(op.periodic_matrix(), want)
                                     : eigen::eig_dense_symmetric(op.dense_matrix(), want);
    if (std::abs(values[0]) > kZeroModeTolerance * std::max(1.0, values[1]))
        throw GridTooCoarse("mode " + to_string(mode) + ": lowest eigenvalue " + std::to_string(values[0]) +
                            " is not zero");
    values.resize(k);
    return values;
}

/// Samples of exp(l eta + m xi), normalized so that \int v^2 kappa ds = 1.
inline std::vector<double> kernel_function(const GeneratingCurve& curve, ModeIndex mode) {
    auto v = kernel_phase(curve, mode);
    const double top = *std::max_element(v.begin(), v.end());
    for (double& x : v) x = std::exp(x - top);
    const auto kappa = curve.kappa();
    double norm = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) norm += v[i] * v[i] * kappa[i];
    norm = std::sqrt(norm * curve.step());
    for (double& x : v) x /= norm;
    return v;
}

}  // namespace kohn
