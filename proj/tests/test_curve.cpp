#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "kohn/curve.hpp"
#include "oracles.hpp"

using namespace kohn;

namespace {

constexpr double kPi = std::numbers::pi;

oracle::Profile as_oracle(const RadiusOfCurvatureProfile& p) { return {p.cos_coeffs, p.sin_coeffs}; }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST(BuildCurve, UnitCircle) {
    const auto c = build_curve(circle_profile(1.0), 256);
    EXPECT_NEAR(c.length(), 2 * kPi, 1e-14);
    ASSERT_EQ(c.size(), 256u);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double s = c.s(i);
        EXPECT_NEAR(c.kappa()[i], 1.0, 1e-14);
        EXPECT_NEAR(c.q()[i], -std::sin(s), 1e-12);
        EXPECT_NEAR(c.p()[i], std::cos(s), 1e-12);
        EXPECT_NEAR(c.xi()[i], std::cos(s), 1e-12);
        EXPECT_NEAR(c.eta()[i], std::sin(s), 1e-12);
    }
}

TEST(BuildCurve, OvalLengthAndTotalCurvature) {
    const auto c = build_curve(oval_profile(0.3), 512);
    EXPECT_NEAR(c.length(), 2 * kPi, 1e-14);
    EXPECT_NEAR(periodic_quadrature(c.kappa(), c.length()), 2 * kPi, 1e-8);
}

TEST(BuildCurve, ArcLengthInversionIsConsistent) {
    const auto prof = random_profile(3);
    const auto c = build_curve(prof, 128);
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_NEAR(prof.arc_length(c.turning()[i]), c.s(i), 1e-12);
        EXPECT_NEAR(c.kappa()[i] * prof.rho(c.turning()[i]), 1.0, 1e-14);
    }
}

TEST(BuildCurve, RejectsNonPositiveRadius) {
    EXPECT_THROW(build_curve({{1.0, 0.0, -1.1}, {}}, 64), NonPositiveCurvature);
    EXPECT_THROW(build_curve({{1.0, 0.0, 0.0, -1.2}, {}}, 64), NonPositiveCurvature);
    EXPECT_THROW(build_curve(circle_profile(-1.0), 64), InvalidArgument);
}

TEST(BuildCurve, RejectsFirstHarmonic) {
    EXPECT_THROW(build_curve({{1.0, 0.1}, {}}, 64), ClosureViolated);
    EXPECT_THROW(build_curve({{1.0}, {0.05}}, 64), ClosureViolated);
}

TEST(BuildCurve, RejectsBadGrid) {
    EXPECT_THROW(build_curve(circle_profile(1.0), 15), InvalidArgument);
    EXPECT_THROW(build_curve(circle_profile(1.0), 65), InvalidArgument);
    EXPECT_THROW(build_curve(circle_profile(1.0), 8), InvalidArgument);
}

TEST(GeneratingCurveProperties, TangentIsUnitAndFrenetHolds) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto c = build_curve(random_profile(seed), 1024);
        const std::size_t n = c.size();
        const double h = c.step();
        double frenet = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_NEAR(c.q()[i] * c.q()[i] + c.p()[i] * c.p()[i], 1.0, 1e-14);
            const std::size_t nx = (i + 1) % n, pv = (i + n - 1) % n;
            const double dp = (c.p()[nx] - c.p()[pv]) / (2 * h);
            const double dq = (c.q()[nx] - c.q()[pv]) / (2 * h);
            frenet = std::max({frenet, std::abs(dp - c.kappa()[i] * c.q()[i]),
                               std::abs(dq + c.kappa()[i] * c.p()[i])});
            const double dxi = (c.xi()[nx] - c.xi()[pv]) / (2 * h);
            const double deta = (c.eta()[nx] - c.eta()[pv]) / (2 * h);
            EXPECT_NEAR(dxi, c.q()[i], 1e-3);
            EXPECT_NEAR(deta, c.p()[i], 1e-3);
        }
        EXPECT_LT(frenet, 1e-3) << "seed " << seed;
        EXPECT_LE(c.closure_residual(), 1e-8 * c.length());
    }
}

TEST(CurveFromSamples, UnitCircle) {
    const std::size_t n = 128;
    const auto c = curve_from_curvature_samples(std::vector<double>(n, 1.0), 2 * kPi);
    EXPECT_LT(c.closure_residual(), 1e-10);
    for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(c.xi()[i], std::cos(c.s(i)), 1e-12);
        EXPECT_NEAR(c.eta()[i], std::sin(c.s(i)), 1e-12);
    }
}

TEST(CurveFromSamples, HalfRadiusCircle) {
    const std::size_t n = 64;
    const auto c = curve_from_curvature_samples(std::vector<double>(n, 2.0), kPi);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(std::hypot(c.xi()[i], c.eta()[i]), 0.5, 1e-12);
}

TEST(CurveFromSamples, WrongTotalTurningIsNotClosed) {
    EXPECT_THROW(curve_from_curvature_samples(std::vector<double>(64, 1.0), 3 * kPi), NotClosed);
}

TEST(CurveFromSamples, DriftingTangentIsNotClosed) {
    // Total turning 2 pi but the tangent lingers in one direction: positions do not close.
    const std::size_t n = 256;
    const double len = 2 * kPi;
    std::vector<double> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = 1.0 + 0.5 * std::cos(len * i / n);
    EXPECT_THROW(curve_from_curvature_samples(k, len), NotClosed);
}

TEST(CurveFromSamples, RejectsNonPositiveSamples) {
    std::vector<double> k(64, 1.0);
    k[3] = 0.0;
    EXPECT_THROW(curve_from_curvature_samples(k, 2 * kPi), NonPositiveCurvature);
}

TEST(CurveFromSamples, ReproducesProfileCurve) {
    const auto a = build_curve(oval_profile(0.3), 256);
    const std::vector<double> k(a.kappa().begin(), a.kappa().end());
    const auto b = curve_from_curvature_samples(k, a.length());
    EXPECT_LT(max_abs_diff(a.xi(), b.xi()), 1e-9);
    EXPECT_LT(max_abs_diff(a.eta(), b.eta()), 1e-9);
    EXPECT_LT(max_abs_diff(a.q(), b.q()), 1e-9);
}

TEST(PeriodicQuadrature, Examples) {
    const std::size_t n = 64;
    std::vector<double> f(n), one(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(std::sin(2 * kPi * i / n), 2);
    EXPECT_NEAR(periodic_quadrature(f, 2 * kPi), kPi, 1e-12);
    EXPECT_NEAR(periodic_quadrature(one, 2 * kPi), 2 * kPi, 1e-14);
}

TEST(PeriodicQuadrature, SquaredCurvatureOfOvalMatchesClosedForm) {
    for (double eps : {0.1, 0.3, 0.6}) {
        const auto c = build_curve(oval_profile(eps), 512);
        std::vector<double> k2(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) k2[i] = c.kappa()[i] * c.kappa()[i];
        EXPECT_NEAR(periodic_quadrature(k2, c.length()), 2 * kPi / std::sqrt(1 - eps * eps), 1e-10);
    }
}

TEST(Webster, ConstantCurvature) {
    for (auto [radius, expect] : {std::pair{1.0, 0.5}, std::pair{0.5, 1.0}}) {
        const auto c = build_curve(circle_profile(radius), 128);
        for (double r : webster_scalar_curvature(c)) EXPECT_NEAR(r, expect, 1e-9);
    }
}

TEST(Webster, OvalMatchesAnalyticFormulaAtSecondOrder) {
    const auto prof = oval_profile(0.3);
    const auto exact = as_oracle(prof);
    double err[2];
    for (int k = 0; k < 2; ++k) {
        const auto c = build_curve(prof, 512u << k);
        const auto r = webster_scalar_curvature(c);
        err[k] = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i)
            err[k] = std::max(err[k], std::abs(r[i] - exact.webster(c.turning()[i])));
    }
    EXPECT_LT(err[1], 2e-4);
    EXPECT_GT(err[0] / err[1], 3.5);
    EXPECT_LT(err[0] / err[1], 4.5);
}

TEST(Webster, RefinementAgreesAtSharedPoints) {
    const auto coarse = build_curve(oval_profile(0.3), 1024);
    const auto fine = build_curve(oval_profile(0.3), 2048);
    const auto rc = webster_scalar_curvature(coarse);
    const auto rf = webster_scalar_curvature(fine);
    double m = 0.0;
    for (std::size_t i = 0; i < rc.size(); ++i) m = std::max(m, std::abs(rc[i] - rf[2 * i]));
    // Difference is three quarters of the coarse O(h^2) error.
    EXPECT_LT(m, 1.2e-4);
}

TEST(GeometricInvariants, UnitCircle) {
    const auto g = geometric_invariants(build_curve(circle_profile(1.0), 256));
    EXPECT_NEAR(g.volume, 8 * std::pow(kPi, 3), 1e-10);
    EXPECT_NEAR(g.bound_rhs, 0.5, 1e-14);
    EXPECT_NEAR(g.mean_webster, 0.5, 1e-12);
}

TEST(GeometricInvariants, HalfRadiusCircle) {
    const auto g = geometric_invariants(build_curve(circle_profile(0.5), 256));
    EXPECT_NEAR(g.bound_rhs, 1.0, 1e-14);
    EXPECT_NEAR(g.length, kPi, 1e-14);
}

TEST(GeometricInvariants, OvalClosedForm) {
    const auto g = geometric_invariants(build_curve(oval_profile(0.3), 512));
    EXPECT_NEAR(g.bound_rhs, 1 / (2 * std::sqrt(0.91)), 1e-10);
    EXPECT_NEAR(g.mean_webster, g.bound_rhs, 1e-6 * g.bound_rhs);
}

TEST(GeometricInvariants, PropertiesOnRandomCurves) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto prof = random_profile(seed);
        const auto c = build_curve(prof, 512);
        const auto g = geometric_invariants(c);
        EXPECT_NEAR(g.total_curvature, 2 * kPi, 1e-8);
        EXPECT_NEAR(g.volume / (8 * std::pow(kPi, 3)), 1.0, 1e-6);
        EXPECT_NEAR(g.mean_webster / g.bound_rhs, 1.0, 1e-6) << "seed " << seed;
        EXPECT_GE(g.bound_rhs, kPi / g.length);

        // Against phi-space quadrature: \int kappa^2 ds = \int dphi / rho.
        const auto ref = as_oracle(prof);
        const double exact = oracle::Profile::integrate([&](double phi) { return 1.0 / ref.rho(phi); });
        EXPECT_NEAR(g.bound_rhs, exact / (4 * kPi), 1e-9);

        const auto g2 = geometric_invariants(build_curve(prof, 1024));
        EXPECT_LT(std::abs(g2.mean_webster - g.mean_webster), 50.0 / (512.0 * 512.0));
        EXPECT_LT(std::abs(g2.bound_rhs - g.bound_rhs), 1e-10);
    }
}

TEST(GeometricInvariants, CauchySchwarzEqualityOnlyForCircles) {
    const auto c = build_curve(circle_profile(2.0), 128);
    EXPECT_NEAR(geometric_invariants(c).bound_rhs, kPi / c.length(), 1e-14);
    const auto o = build_curve(oval_profile(0.2), 128);
    EXPECT_GT(geometric_invariants(o).bound_rhs, kPi / o.length() + 1e-6);
}

TEST(RandomProfile, ValidAndDeterministic) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto a = random_profile(seed);
        const auto b = random_profile(seed);
        EXPECT_EQ(a.cos_coeffs, b.cos_coeffs);
        EXPECT_EQ(a.sin_coeffs, b.sin_coeffs);
        EXPECT_EQ(a.c(1), 0.0);
        EXPECT_EQ(a.d(1), 0.0);
        EXPECT_NO_THROW(a.validate(4096));
        double lo = 1e9;
        for (int i = 0; i < 4096; ++i) lo = std::min(lo, a.rho(2 * kPi * i / 4096));
        EXPECT_GE(lo, 0.4 - 1e-12);
    }
    EXPECT_NE(random_profile(1).cos_coeffs, random_profile(2).cos_coeffs);
}
