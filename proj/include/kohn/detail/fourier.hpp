#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace kohn::detail {

struct PeriodicAntiderivative {
    double mean = 0.0;
    /// values[i] = integral from 0 to s_i of (f - mean), evaluated on the trigonometric interpolant.
    std::vector<double> values;
};

/// Integrates uniformly sampled periodic data through its trigonometric interpolant.
/// The Nyquist mode integrates to zero at the nodes and is dropped. O(n^2); n stays in the thousands.
inline PeriodicAntiderivative periodic_antiderivative(std::span<const double> f, double length) {
    const std::size_t n = f.size();
    PeriodicAntiderivative out;
    out.values.assign(n, 0.0);
    if (n == 0) return out;

    double sum = 0.0;
    for (double v : f) sum += v;
    out.mean = sum / static_cast<double>(n);

    std::vector<double> c(n), s(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        c[j] = std::cos(t);
        s[j] = std::sin(t);
    }
    const double omega = 2.0 * std::numbers::pi / length;
    const std::size_t kmax = (n - 1) / 2;
    for (std::size_t k = 1; k <= kmax; ++k) {
        // F_k = (1/n) sum_j f_j e^{-2 pi i jk/n}
        double re = 0.0, im = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t idx = (j * k) % n;
            re += f[j] * c[idx];
            im -= f[j] * s[idx];
        }
        re /= static_cast<double>(n);
        im /= static_cast<double>(n);
        // 2 Re( F_k (e^{i k w s} - 1) / (i k w) )
        const double kw = static_cast<double>(k) * omega;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t idx = (j * k) % n;
            // (e^{it} - 1)/i = sin t - i (cos t - 1)
            const double ar = s[idx];
            const double ai = -(c[idx] - 1.0);
            out.values[j] += 2.0 * (re * ar - im * ai) / kw;
        }
    }
    return out;
}

}  // namespace kohn::detail
