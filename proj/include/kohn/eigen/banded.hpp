#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "kohn/eigen/matrices.hpp"
#include "kohn/eigen/symmetric.hpp"

namespace kohn::eigen {

/// Symmetric band matrix stored as its lower band: entry (i, i - d) for d <= width.
class SymBanded {
public:
    SymBanded(std::size_t n, std::size_t width) : n_(n), w_(width), band_(n * (width + 1), 0.0) {}

    std::size_t size() const noexcept { return n_; }
    std::size_t width() const noexcept { return w_; }

    /// Entry (i, j); zero outside the stored band.
    double get(std::size_t i, std::size_t j) const noexcept {
        if (i < j) std::swap(i, j);
        return i - j <= w_ ? band_[i * (w_ + 1) + (i - j)] : 0.0;
    }
    void set(std::size_t i, std::size_t j, double v) noexcept {
        if (i < j) std::swap(i, j);
        if (i - j <= w_) band_[i * (w_ + 1) + (i - j)] = v;
    }

    /// A <- G^T A G for the rotation acting on coordinates p and q = p + 1,
    /// (x_p, x_q) -> (c x_p - s x_q, s x_p + c x_q).
    void rotate(std::size_t p, double c, double s) noexcept {
        const std::size_t q = p + 1;
        const std::size_t lo = p >= w_ ? p - w_ : 0;
        const std::size_t hi = std::min(n_ - 1, q + w_);
        for (std::size_t j = lo; j <= hi; ++j) {
            if (j == p || j == q) continue;
            const double x = get(p, j), y = get(q, j);
            set(p, j, c * x - s * y);
            set(q, j, s * x + c * y);
        }
        const double app = get(p, p), aqq = get(q, q), apq = get(p, q);
        set(p, p, c * c * app - 2.0 * c * s * apq + s * s * aqq);
        set(q, q, s * s * app + 2.0 * c * s * apq + c * c * aqq);
        set(p, q, c * s * (app - aqq) + (c * c - s * s) * apq);
    }

private:
    std::size_t n_;
    std::size_t w_;
    std::vector<double> band_;
};

/// Reorders a periodic tridiagonal matrix as 0, n-1, 1, n-2, 2, ... which puts every
/// coupling, corners included, within distance 2 of the diagonal. One extra stored
/// diagonal leaves room for the bulge of the reduction below.
inline SymBanded interleave(const PeriodicSymTridiagonal& t) {
    const std::size_t n = t.size();
    std::vector<std::size_t> pos(n);
    for (std::size_t k = 0; k < n; ++k) pos[k % 2 == 0 ? k / 2 : n - 1 - k / 2] = k;
    SymBanded b(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
        b.set(pos[i], pos[i], t.diag()[i]);
        const std::size_t j = (i + 1) % n;
        b.set(pos[i], pos[j], b.get(pos[i], pos[j]) + t.offdiag()[i]);
    }
    return b;
}

/// Orthogonal reduction of a symmetric pentadiagonal matrix (stored with width >= 3)
/// to tridiagonal form by Givens rotations, chasing each bulge off the end. O(n^2).
inline SymTridiagonal band_to_tridiagonal(SymBanded a) {
    const std::size_t n = a.size();
    auto annihilate = [&a](std::size_t row, std::size_t col) {
        // Rotation in (row - 1, row) that zeroes (row, col) into (row - 1, col).
        const double x = a.get(row - 1, col), y = a.get(row, col);
        if (y == 0.0) return;
        const double r = std::hypot(x, y);
        a.rotate(row - 1, x / r, -y / r);
        a.set(row, col, 0.0);
    };
    for (std::size_t k = 0; k + 2 < n; ++k) {
        annihilate(k + 2, k);
        for (std::size_t r = k + 2; r + 2 < n; r += 2) {
            if (a.get(r + 2, r - 1) == 0.0) break;
            annihilate(r + 2, r - 1);
        }
    }
    std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) d[i] = a.get(i, i);
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = a.get(i + 1, i);
    return {std::move(d), std::move(e)};
}

/// The `count` smallest eigenvalues of a periodic tridiagonal matrix: band reduction,
/// then Sturm bisection on the resulting tridiagonal matrix.
inline std::vector<double> smallest_by_bisection(const PeriodicSymTridiagonal& t, std::size_t count) {
    return smallest_by_bisection(band_to_tridiagonal(interleave(t)), count);
}

}  // namespace kohn::eigen
