#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>

#include "kohn/eigen/matrices.hpp"

namespace kohn::eigen {

/// det(T - z I) by the three-term recurrence
///   P_0 = 1, P_1 = d_1 - z, P_{k+2} = (d_{k+2} - z) P_{k+1} - super_{k+1} sub_{k+1} P_k.
inline std::complex<double> char_poly_tridiagonal(const Tridiagonal& t, std::complex<double> z) {
    const std::size_t n = t.size();
    std::complex<double> prev(1.0, 0.0);
    if (n == 0) return prev;
    std::complex<double> cur = t.diag()[0] - z;
    for (std::size_t k = 1; k < n; ++k) {
        const std::complex<double> next = (t.diag()[k] - z) * cur - t.super()[k - 1] * t.sub()[k - 1] * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Scale used to judge whether a characteristic-polynomial value is "zero": prod max(1, |d_k|).
inline double char_poly_scale(const Tridiagonal& t) {
    double s = 1.0;
    for (double d : t.diag()) s *= std::max(1.0, std::abs(d));
    return s;
}

struct SectorCertificate {
    bool hypotheses_ok = false;
    bool positive_diagonal = false;
    bool nonpositive_couplings = false;
    bool delta_admissible = false;
    /// (pi/2) / sum_k 1/d_k, the largest admissible half-height (0 when undefined).
    double delta_limit = 0.0;
    SectorRegion region;
};

/// Checks the hypotheses under which a real tridiagonal matrix has no eigenvalues
/// in the open sector {Re z < mu, |Im z| < delta (1 - Re z / mu)}, mu = min_k d_k:
///   every diagonal entry is positive, every product super_k * sub_k is <= 0,
///   and 0 < delta <= (pi/2) (sum_k 1/d_k)^-1.
inline SectorCertificate sector_exclusion_certificate(const Tridiagonal& t, double delta) {
    SectorCertificate cert;
    cert.region.delta = delta;
    if (t.size() == 0) return cert;

    cert.positive_diagonal = std::all_of(t.diag().begin(), t.diag().end(), [](double d) { return d > 0.0; });
    cert.nonpositive_couplings = true;
    for (std::size_t k = 0; k + 1 < t.size(); ++k)
        if (t.super()[k] * t.sub()[k] > 0.0) cert.nonpositive_couplings = false;

    cert.region.mu = *std::min_element(t.diag().begin(), t.diag().end());
    if (cert.positive_diagonal) {
        double inv_sum = 0.0;
        for (double d : t.diag()) inv_sum += 1.0 / d;
        cert.delta_limit = 0.5 * std::numbers::pi / inv_sum;
    }
    cert.delta_admissible = cert.positive_diagonal && delta > 0.0 && delta <= cert.delta_limit;
    cert.hypotheses_ok = cert.positive_diagonal && cert.nonpositive_couplings && cert.delta_admissible;
    return cert;
}

/// Strict membership in the open sector; the boundary is excluded.
inline bool point_in_sector(std::complex<double> z, const SectorRegion& region) {
    if (!(z.real() < region.mu)) return false;
    return std::abs(z.imag()) < region.delta * (1.0 - z.real() / region.mu);
}

}  // namespace kohn::eigen
