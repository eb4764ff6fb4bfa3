#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "kohn/spectrum.hpp"

using namespace kohn;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(Lambda1, UnitCircle) {
    const auto r = lambda1_kohn(build_curve(circle_profile(1.0), 512), {3, 3});
    EXPECT_NEAR(r.lambda1_estimate, 0.5, 1e-4);
    EXPECT_EQ(r.lambda1_mode, (ModeIndex{0, 0}));
    EXPECT_EQ(r.modes.size(), 49u);
    EXPECT_TRUE(r.holds);
    EXPECT_TRUE(r.equality);
}

TEST(Lambda1, HalfRadiusCircle) {
    const auto r = lambda1_kohn(build_curve(circle_profile(0.5), 512), {3, 3});
    EXPECT_NEAR(r.lambda1_estimate, 1.0, 2e-4);
    EXPECT_NEAR(r.bound_rhs, 1.0, 1e-12);
}

TEST(Lambda1, CircleRadiusTimesLambdaIsHalf) {
    for (double radius : {0.25, 0.7, 2.0, 5.0}) {
        const auto r = lambda1_kohn(build_curve(circle_profile(radius), 512), {2, 2});
        EXPECT_NEAR(r.lambda1_estimate * radius, 0.5, 1e-4);
    }
}

TEST(Lambda1, OvalHasStrictSlack) {
    const auto r = lambda1_kohn(build_curve(oval_profile(0.3), 512), {4, 4});
    EXPECT_LT(r.lambda1_estimate, 0.524142);
    EXPECT_GT(r.slack, 1e-3);
    EXPECT_TRUE(r.holds);
    EXPECT_FALSE(r.equality);
}

TEST(Lambda1, EstimateIsTableMinimumAndZeroModeIncluded) {
    const auto r = lambda1_kohn(build_curve(random_profile(2), 256), {2, 3});
    double best = 1e300;
    bool has_zero = false;
    for (const auto& row : r.modes) {
        best = std::min(best, row.lambda1);
        has_zero |= row.mode == ModeIndex{0, 0};
        EXPECT_LT(std::abs(row.lambda0), 1e-6);
    }
    EXPECT_TRUE(has_zero);
    EXPECT_EQ(r.lambda1_estimate, best);
    EXPECT_EQ(r.modes.size(), 5u * 7u);
    EXPECT_DOUBLE_EQ(r.slack, r.bound_rhs - r.lambda1_estimate);
}

TEST(Lambda1, WindowZeroIsJustTheZeroMode) {
    const auto c = build_curve(oval_profile(0.2), 256);
    const auto r = lambda1_kohn(c, {0, 0});
    ASSERT_EQ(r.modes.size(), 1u);
    EXPECT_EQ(r.lambda1_estimate, mode_spectrum(c, {0, 0}, 2)[1]);
}

TEST(Lambda1, EnlargingWindowNeverIncreasesEstimate) {
    const auto c = build_curve(random_profile(6), 256);
    double prev = 1e300;
    for (int w = 0; w <= 4; ++w) {
        const double est = lambda1_kohn(c, {w, w}).lambda1_estimate;
        EXPECT_LE(est, prev);
        prev = est;
    }
}

TEST(Lambda1, RejectsNegativeWindow) {
    EXPECT_THROW(lambda1_kohn(build_curve(circle_profile(1.0), 64), {-1, 0}), InvalidArgument);
}

TEST(Lambda1, AdaptiveStopsWhenEdgeIsFarAboveMinimum) {
    const auto r = lambda1_kohn(build_curve(circle_profile(1.0), 256), {2, 2}, {.adaptive = true});
    EXPECT_EQ(r.window, (ModeWindow{2, 2}));
    EXPECT_TRUE(r.adaptive);
    EXPECT_NE(r.caveat.find("|m| <= 2"), std::string::npos);
}

TEST(Lambda1, AdaptiveGrowsWhenEdgeIsNearMinimum) {
    // On a small circle the low modes have tiny coupling a = |(m, l)| / kappa and sit close to kappa/2.
    const auto r = lambda1_kohn(build_curve(circle_profile(0.05), 256), {0, 0},
                                {.adaptive = true, .max_window = 3});
    EXPECT_EQ(r.window, (ModeWindow{3, 3}));
    EXPECT_EQ(r.modes.size(), 49u);
    EXPECT_EQ(r.requested_window, (ModeWindow{0, 0}));
}

TEST(Bracketing, RandomCurves) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const auto r = lambda1_kohn(build_curve(random_profile(seed), 256), {3, 3});
        EXPECT_LE(r.ccy_lower - 1e-6, r.lambda1_estimate) << "seed " << seed;
        EXPECT_LE(r.lambda1_estimate, r.bound_rhs + 1e-6) << "seed " << seed;
        EXPECT_TRUE(r.holds);
        EXPECT_FALSE(r.equality);
    }
}

TEST(CcyLowerBound, Circles) {
    EXPECT_NEAR(ccy_lower_bound(build_curve(circle_profile(1.0), 128)), 0.25, 1e-10);
    EXPECT_NEAR(ccy_lower_bound(build_curve(circle_profile(0.5), 128)), 0.5, 1e-10);
}

TEST(UpperBound, Examples) {
    const auto u = verify_upper_bound(build_curve(circle_profile(1.0), 512), {2, 2});
    EXPECT_TRUE(u.holds);
    EXPECT_TRUE(u.equality);
    EXPECT_NEAR(u.lhs, 0.5, 1e-4);
    EXPECT_NEAR(u.rhs, 0.5, 1e-12);

    const auto o = verify_upper_bound(build_curve(oval_profile(0.3), 512), {2, 2});
    EXPECT_TRUE(o.holds);
    EXPECT_FALSE(o.equality);

    const auto h = verify_upper_bound(build_curve(circle_profile(0.5), 512), {2, 2});
    EXPECT_NEAR(h.lhs, 1.0, 2e-4);
    EXPECT_NEAR(h.rhs, 1.0, 1e-12);
}

TEST(TestFunctions, UnitCircle) {
    const auto t = rayleigh_test_functions(build_curve(circle_profile(1.0), 256));
    EXPECT_NEAR(t.value_p_plus_q, kPi, 1e-12);
    EXPECT_NEAR(t.norm_p_plus_q, 2 * kPi, 1e-12);
    EXPECT_NEAR(t.quotient, 0.5, 1e-12);
    EXPECT_TRUE(t.admissible);
}

TEST(TestFunctions, HalfRadiusCircle) {
    EXPECT_NEAR(rayleigh_test_functions(build_curve(circle_profile(0.5), 256)).quotient, 1.0, 1e-12);
}

TEST(TestFunctions, QuotientIsBoundAndDominatesZeroMode) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto c = build_curve(random_profile(seed), 256);
        const auto t = rayleigh_test_functions(c);
        EXPECT_TRUE(t.admissible);
        EXPECT_NEAR(t.quotient, geometric_invariants(c).bound_rhs, 1e-8);
        EXPECT_NEAR(t.norm_p_plus_q, 2 * kPi, 1e-8);
        const double l00 = mode_spectrum(c, {0, 0}, 2)[1];
        EXPECT_LE(l00, t.discrete_quotient + 1e-12);
        EXPECT_LE(l00, t.quotient + 1e-6);
    }
}

TEST(Variational, RandomAdmissibleVectorsStayAboveEstimate) {
    const auto c = build_curve(random_profile(13), 128);
    const double est = lambda1_kohn(c, {2, 2}).lambda1_estimate;
    const ModeOperator op(c, {0, 0});
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    const double total = periodic_quadrature(c.kappa(), c.length());
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(c.size()), w(c.size());
        for (auto& x : v) x = g(rng);
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] * c.kappa()[i];
        const double mean = periodic_quadrature(w, c.length()) / total;
        for (auto& x : v) x -= mean;
        EXPECT_GE(op.rayleigh_quotient(v), est - 1e-12);
    }
}

TEST(EmitReport, JsonHasFieldsInOrder) {
    const auto r = lambda1_kohn(build_curve(circle_profile(1.0), 256), {1, 1});
    const std::string text = emit_report(r, ReportFormat::json);
    const auto j = nlohmann::ordered_json::parse(text);
    const std::vector<std::string> expect = {"curve", "grid", "window", "modes", "lambda1_estimate",
                                             "bound_rhs", "ccy_lower", "slack", "holds", "equality"};
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    ASSERT_GE(keys.size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_EQ(keys[i], expect[i]);
    EXPECT_EQ(j["grid"], 256);
    EXPECT_EQ(j["window"], nlohmann::ordered_json::array({1, 1}));
    EXPECT_EQ(j["modes"].size(), 9u);
    EXPECT_TRUE(j["modes"][0].contains("lambda0"));
    EXPECT_NEAR(j["lambda1_estimate"].get<double>(), 0.5, 1e-4);
    EXPECT_TRUE(j["holds"].get<bool>());
}

TEST(EmitReport, CsvRowsAndFooter) {
    const auto r = lambda1_kohn(build_curve(circle_profile(1.0), 512), {1, 0});
    const std::string text = emit_report(r, ReportFormat::csv);
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    ASSERT_EQ(lines.size(), 1u + 3u + 1u);
    EXPECT_EQ(lines[0], "kind,m,l,lambda0,lambda1,lambda1_estimate,bound_rhs,ccy_lower,slack,holds,equality");
    EXPECT_EQ(lines[1].rfind("mode,-1,0,", 0), 0u);
    EXPECT_EQ(lines[4].rfind("summary,0,0,", 0), 0u);
    EXPECT_NE(lines[4].find(",true,true"), std::string::npos);
}

TEST(EmitReport, EmptyTableGivesHeaderOnly) {
    SpectrumReport empty;
    EXPECT_EQ(emit_report(empty, ReportFormat::csv),
              "kind,m,l,lambda0,lambda1,lambda1_estimate,bound_rhs,ccy_lower,slack,holds,equality\n");
}

TEST(EmitReport, Deterministic) {
    const auto c = build_curve(random_profile(1), 128);
    const auto a = lambda1_kohn(c, {2, 2});
    const auto b = lambda1_kohn(c, {2, 2});
    EXPECT_EQ(emit_report(a, ReportFormat::json), emit_report(a, ReportFormat::json));
    EXPECT_EQ(emit_report(a, ReportFormat::json), emit_report(b, ReportFormat::json));
    EXPECT_EQ(emit_report(a, ReportFormat::csv), emit_report(b, ReportFormat::csv));
}
