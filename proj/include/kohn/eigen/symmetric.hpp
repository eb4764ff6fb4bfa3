#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "kohn/eigen/matrices.hpp"
#include "kohn/error.hpp"

namespace kohn::eigen {

/// QL sweeps allowed per eigenvalue before giving up.
inline constexpr int kMaxSweepsPerEigenvalue = 30;

/// Householder reduction of a dense symmetric matrix to tridiagonal form (eigenvalues only).
inline SymTridiagonal householder_tridiagonalize(const DenseSymmetric& matrix) {
    const std::size_t n = matrix.size();
    if (n == 0) return {};
    std::vector<double> a(matrix.data().begin(), matrix.data().end());
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

    std::vector<double> diag(n), off(n > 0 ? n - 1 : 0);
    std::vector<double> v(n), p(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double norm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) norm2 += at(i, k) * at(i, k);
        diag[k] = at(k, k);
        const double x0 = at(k + 1, k);
        if (norm2 == 0.0) {
            off[k] = 0.0;
            continue;
        }
        const double alpha = x0 >= 0.0 ? -std::sqrt(norm2) : std::sqrt(norm2);
        off[k] = alpha;
        for (std::size_t i = k + 1; i < n; ++i) v[i] = at(i, k);
        v[k + 1] -= alpha;
        const double vtv = norm2 - x0 * x0 + v[k + 1] * v[k + 1];
        if (vtv == 0.0) continue;
        const double beta = 2.0 / vtv;

        // B <- H B H with H = I - beta v v^T on the trailing block.
        double vtp = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += at(i, j) * v[j];
            p[i] = beta * s;
            vtp += v[i] * p[i];
        }
        const double half = 0.5 * beta * vtp;
        for (std::size_t i = k + 1; i < n; ++i) p[i] -= half * v[i];
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= v[i] * p[j] + p[i] * v[j];
    }
    if (n >= 2) {
        diag[n - 2] = at(n - 2, n - 2);
        off[n - 2] = at(n - 1, n - 2);
    }
    diag[n - 1] = at(n - 1, n - 1);
    return SymTridiagonal(std::move(diag), std::move(off));
}

/// All eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL, ascending.
inline std::vector<double> eig_sym_tridiagonal(const SymTridiagonal& t) {
    const auto n = static_cast<std::ptrdiff_t>(t.size());
    std::vector<double> d(t.diag().begin(), t.diag().end());
    std::vector<double> e(t.offdiag().begin(), t.offdiag().end());
    e.push_back(0.0);
    if (n == 0) return d;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (std::ptrdiff_t l = 0; l < n; ++l) {
        int sweeps = 0;
        std::ptrdiff_t m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (sweeps++ == kMaxSweepsPerEigenvalue)
                throw NoConvergence("eig_sym_tridiagonal: QL iteration cap reached");

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            std::ptrdiff_t i = m - 1;
            bool underflow = false;
            for (; i >= l; --i) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

/// Ascending eigenvalues of a dense symmetric matrix (Householder, then implicit QL).
/// With `count` set, only the smallest `count` are returned.
inline std::vector<double> eig_dense_symmetric(const DenseSymmetric& a,
                                               std::optional<std::size_t> count = std::nullopt) {
    auto values = eig_sym_tridiagonal(householder_tridiagonalize(a));
    if (count && *count < values.size()) values.resize(*count);
    return values;
}

template <class M>
concept InertiaCountable = requires(const M& m, double x) {
    { m.count_below(x) } -> std::convertible_to<std::size_t>;
    { m.gershgorin() };
    { m.size() } -> std::convertible_to<std::size_t>;
};

/// The `count` smallest eigenvalues by bisection on the inertia count, ascending.
/// Absolute accuracy is about machine epsilon times the Gershgorin radius.
template <InertiaCountable M>
std::vector<double> smallest_by_bisection(const M& matrix, std::size_t count) {
    count = std::min(count, static_cast<std::size_t>(matrix.size()));
    auto [lo0, hi0] = matrix.gershgorin();
    const double scale = std::max({std::abs(lo0), std::abs(hi0), std::numeric_limits<double>::min()});
    const double abs_tol = 4.0 * std::numeric_limits<double>::epsilon() * scale;
    lo0 -= abs_tol;
    hi0 += abs_tol;

    std::vector<double> out;
    out.reserve(count);
    double floor = lo0;
    for (std::size_t j = 0; j < count; ++j) {
        // Eigenvalue j lies where the count first exceeds j.
        double lo = floor, hi = hi0;
        while (hi - lo > abs_tol + 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (matrix.count_below(mid) > j)
                hi = mid;
            else
                lo = mid;
        }
        out.push_back(0.5 * (lo + hi));
        floor = lo;
    }
    return out;
}

}  // namespace kohn::eigen
