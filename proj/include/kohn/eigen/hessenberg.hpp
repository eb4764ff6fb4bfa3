#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "kohn/eigen/matrices.hpp"
#include "kohn/eigen/symmetric.hpp"
#include "kohn/error.hpp"

namespace kohn::eigen {

/// Diagonal similarity D T D^-1 that gives each off-diagonal pair equal magnitude
/// sqrt(|super * sub|). Pairs with a zero entry are left alone (the matrix splits there).
inline Tridiagonal balance(const Tridiagonal& t) {
    std::vector<double> sup(t.super().begin(), t.super().end());
    std::vector<double> sub(t.sub().begin(), t.sub().end());
    for (std::size_t k = 0; k < sup.size(); ++k) {
        const double prod = sup[k] * sub[k];
        if (prod == 0.0) continue;
        const double mag = std::sqrt(std::abs(prod));
        sup[k] = std::copysign(mag, sup[k]);
        sub[k] = std::copysign(mag, sub[k]);
    }
    return Tridiagonal({t.diag().begin(), t.diag().end()}, std::move(sup), std::move(sub));
}

namespace detail {

// Francis double-shift QR on an upper Hessenberg matrix (1-based storage, EISPACK hqr layout).
// Iteration cap applies per deflated eigenvalue.
inline std::vector<std::complex<double>> hessenberg_qr(std::vector<std::vector<double>>& a, int n) {
    std::vector<double> wr(n + 1, 0.0), wi(n + 1, 0.0);
    double anorm = 0.0;
    for (int i = 1; i <= n; ++i)
        for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(a[i][j]);

    int nn = n;
    double t = 0.0;
    double p = 0.0, q = 0.0, r = 0.0, s = 0.0, w = 0.0, x = 0.0, y = 0.0, z = 0.0;
    while (nn >= 1) {
        int its = 0;
        int l;
        do {
            for (l = nn; l >= 2; --l) {
                s = std::abs(a[l - 1][l - 1]) + std::abs(a[l][l]);
                if (s == 0.0) s = anorm;
                if (std::abs(a[l][l - 1]) + s == s) {
                    a[l][l - 1] = 0.0;
                    break;
                }
            }
            x = a[nn][nn];
            if (l == nn) {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                --nn;
            } else {
                y = a[nn - 1][nn - 1];
                w = a[nn][nn - 1] * a[nn - 1][nn];
                if (l == nn - 1) {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + std::copysign(z, p);
                        wr[nn - 1] = wr[nn] = x + z;
                        if (z != 0.0) wr[nn] = x - w / z;
                        wi[nn - 1] = wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = wr[nn] = x + p;
                        wi[nn] = z;
                        wi[nn - 1] = -z;
                    }
                    nn -= 2;
                } else {
                    if (its == kMaxSweepsPerEigenvalue)
                        throw NoConvergence("eig_general_tridiagonal: QR iteration cap reached");
                    if (its == 10 || its == 20) {
                        // exceptional shift
                        t += x;
                        for (int i = 1; i <= nn; ++i) a[i][i] -= x;
                        s = std::abs(a[nn][nn - 1]) + std::abs(a[nn - 1][nn - 2]);
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m;
                    for (m = nn - 2; m >= l; --m) {
                        z = a[m][m];
                        r = x - z;
                        s = y - z;
                        p = (r * s - w) / a[m + 1][m] + a[m][m + 1];
                        q = a[m + 1][m + 1] - z - r - s;
                        r = a[m + 2][m + 1];
                        s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::abs(a[m][m - 1]) * (std::abs(q) + std::abs(r));
                        const double v = std::abs(p) * (std::abs(a[m - 1][m - 1]) + std::abs(z) +
                                                        std::abs(a[m + 1][m + 1]));
                        if (u + v == v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a[i][i - 2] = 0.0;
                        if (i != m + 2) a[i][i - 3] = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a[k][k - 1];
                            q = a[k + 1][k - 1];
                            r = 0.0;
                            if (k != nn - 1) r = a[k + 2][k - 1];
                            x = std::abs(p) + std::abs(q) + std::abs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
                        if (s != 0.0) {
                            if (k == m) {
                                if (l != m) a[k][k - 1] = -a[k][k - 1];
                            } else {
                                a[k][k - 1] = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for (int j = k; j <= nn; ++j) {
                                p = a[k][j] + q * a[k + 1][j];
                                if (k != nn - 1) {
                                    p += r * a[k + 2][j];
                                    a[k + 2][j] -= p * z;
                                }
                                a[k + 1][j] -= p * y;
                                a[k][j] -= p * x;
                            }
                            const int mmin = nn < k + 3 ? nn : k + 3;
                            for (int i = l; i <= mmin; ++i) {
                                p = x * a[i][k] + y * a[i][k + 1];
                                if (k != nn - 1) {
                                    p += z * a[i][k + 2];
                                    a[i][k + 2] -= p * r;
                                }
                                a[i][k + 1] -= p * q;
                                a[i][k] -= p;
                            }
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }

    std::vector<std::complex<double>> out;
    out.reserve(n);
    for (int i = 1; i <= n; ++i) out.emplace_back(wr[i], wi[i]);
    return out;
}

}  // namespace detail

/// Orders eigenvalues by real part, then imaginary part. Conjugate pairs end up adjacent.
inline void sort_by_real_part(std::vector<std::complex<double>>& values) {
    std::sort(values.begin(), values.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
}

/// All eigenvalues of a real tridiagonal matrix.
///
/// The matrix is balanced first, then run through Francis double-shift QR
/// (a tridiagonal matrix is already upper Hessenberg). Output is sorted by real
/// part; complex eigenvalues appear as adjacent conjugate pairs.
inline std::vector<std::complex<double>> eig_general_tridiagonal(const Tridiagonal& t) {
    const int n = static_cast<int>(t.size());
    if (n == 0) return {};
    const Tridiagonal b = balance(t);
    std::vector<std::vector<double>> a(n + 1, std::vector<double>(n + 1, 0.0));
    for (int i = 1; i <= n; ++i) {
        a[i][i] = b.diag()[i - 1];
        if (i < n) {
            a[i][i + 1] = b.super()[i - 1];
            a[i + 1][i] = b.sub()[i - 1];
        }
    }
    auto values = detail::hessenberg_qr(a, n);
    sort_by_real_part(values);
    return values;
}

}  // namespace kohn::eigen
