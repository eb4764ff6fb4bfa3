#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kohn/error.hpp"

namespace kohn::eigen {

/// Real symmetric tridiagonal matrix: diag(0..N-1), offdiag(i) couples i and i+1.
class SymTridiagonal {
public:
    SymTridiagonal() = default;
    SymTridiagonal(std::vector<double> diag, std::vector<double> offdiag)
        : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
        if (diag_.empty() ? !offdiag_.empty() : offdiag_.size() + 1 != diag_.size())
            throw InvalidArgument("SymTridiagonal: offdiag must have N-1 entries");
    }

    std::size_t size() const noexcept { return diag_.size(); }
    std::span<const double> diag() const noexcept { return diag_; }
    std::span<const double> offdiag() const noexcept { return offdiag_; }

    /// Number of eigenvalues strictly below x (Sturm sequence / LDL^T inertia).
    std::size_t count_below(double x) const {
        const double pivmin = pivot_floor();
        std::size_t count = 0;
        double d = 1.0;
        for (std::size_t i = 0; i < diag_.size(); ++i) {
            const double e2 = i == 0 ? 0.0 : offdiag_[i - 1] * offdiag_[i - 1];
            d = diag_[i] - x - (i == 0 ? 0.0 : e2 / d);
            if (std::abs(d) < pivmin) d = -pivmin;
            if (d < 0.0) ++count;
        }
        return count;
    }

    std::pair<double, double> gershgorin() const {
        double lo = 0.0, hi = 0.0;
        for (std::size_t i = 0; i < diag_.size(); ++i) {
            double r = 0.0;
            if (i > 0) r += std::abs(offdiag_[i - 1]);
            if (i + 1 < diag_.size()) r += std::abs(offdiag_[i]);
            lo = i == 0 ? diag_[i] - r : std::min(lo, diag_[i] - r);
            hi = i == 0 ? diag_[i] + r : std::max(hi, diag_[i] + r);
        }
        return {lo, hi};
    }

private:
    double pivot_floor() const {
        double m = 0.0;
        for (double e : offdiag_) m = std::max(m, e * e);
        return std::max(m, 1.0) * 1e-300;
    }

    std::vector<double> diag_;
    std::vector<double> offdiag_;
};

/// Symmetric tridiagonal matrix with periodic corners: offdiag(i) couples i and (i+1) mod N.
/// This is the structure of every second-order periodic discretization in the library.
class PeriodicSymTridiagonal {
public:
    PeriodicSymTridiagonal(std::vector<double> diag, std::vector<double> offdiag)
        : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
        if (diag_.size() < 3) throw InvalidArgument("PeriodicSymTridiagonal: need N >= 3");
        if (offdiag_.size() != diag_.size())
            throw InvalidArgument("PeriodicSymTridiagonal: offdiag must have N entries");
    }

    std::size_t size() const noexcept { return diag_.size(); }
    std::span<const double> diag() const noexcept { return diag_; }
    std::span<const double> offdiag() const noexcept { return offdiag_; }

private:
    std::vector<double> diag_;
    std::vector<double> offdiag_;
};

/// Dense real symmetric matrix, row-major.
class DenseSymmetric {
public:
    DenseSymmetric() = default;

    /// Throws InvalidArgument if the entries are not symmetric within 1e-12 relative.
    DenseSymmetric(std::size_t n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
        if (a_.size() != n_ * n_) throw InvalidArgument("DenseSymmetric: expected N*N entries");
        double scale = 0.0;
        for (double v : a_) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (std::abs(a_[i * n_ + j] - a_[j * n_ + i]) > 1e-12 * scale)
                    throw InvalidArgument("DenseSymmetric: matrix is not symmetric");
    }

    static DenseSymmetric from(const PeriodicSymTridiagonal& t) {
        const std::size_t n = t.size();
        std::vector<double> a(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = (i + 1) % n;
            a[i * n + i] = t.diag()[i];
            a[i * n + j] += t.offdiag()[i];
            a[j * n + i] += t.offdiag()[i];
        }
        return DenseSymmetric(n, std::move(a));
    }

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
    std::span<const double> data() const noexcept { return a_; }

    double trace() const noexcept {
        double t = 0.0;
        for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
        return t;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// General real tridiagonal matrix. super(k) is entry (k, k+1), sub(k) is entry (k+1, k).
class Tridiagonal {
public:
    Tridiagonal() = default;
    Tridiagonal(std::vector<double> diag, std::vector<double> super, std::vector<double> sub)
        : diag_(std::move(diag)), super_(std::move(super)), sub_(std::move(sub)) {
        const std::size_t off = diag_.empty() ? 0 : diag_.size() - 1;
        if (super_.size() != off || sub_.size() != off)
            throw InvalidArgument("Tridiagonal: super/sub must have N-1 entries");
    }

    std::size_t size() const noexcept { return diag_.size(); }
    std::span<const double> diag() const noexcept { return diag_; }
    std::span<const double> super() const noexcept { return super_; }
    std::span<const double> sub() const noexcept { return sub_; }

    double operator()(std::size_t i, std::size_t j) const noexcept {
        if (i == j) return diag_[i];
        if (j == i + 1) return super_[i];
        if (i == j + 1) return sub_[j];
        return 0.0;
    }

private:
    std::vector<double> diag_;
    std::vector<double> super_;
    std::vector<double> sub_;
};

/// The open sector {Re z < mu, |Im z| < delta (1 - Re z / mu)}.
struct SectorRegion {
    double mu = 0.0;
    double delta = 0.0;

    bool valid() const noexcept { return mu > 0.0 && delta > 0.0; }
};

}  // namespace kohn::eigen
