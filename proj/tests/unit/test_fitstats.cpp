#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "loccmc/error.hpp"
#include "loccmc/fitstats.hpp"
#include "loccmc/persistence.hpp"
#include "loccmc/random.hpp"

using namespace loccmc;

namespace {

std::vector<DecayPoint> power_law(double b, double theta, std::vector<double> ns, double rel = 0.02) {
    std::vector<DecayPoint> pts;
    for (double n : ns) {
        const double p = b * std::pow(n, -theta);
        pts.push_back({n, p, rel * p});
    }
    return pts;
}

}  // namespace

TEST(FitPowerLaw, RecoversExactPowerLaw) {
    const auto pts = power_law(0.5, 0.4, {64, 128, 256, 512});
    const auto fit = fit_power_law(pts);
    EXPECT_NEAR(fit.theta, 0.4, 1e-12);
    EXPECT_NEAR(fit.b, 0.5, 1e-12);
    EXPECT_NEAR(fit.residual_norm, 0.0, 1e-10);
    EXPECT_EQ(fit.fit_window, (std::vector<double>{64, 128, 256, 512}));
    EXPECT_GT(fit.theta_err, 0.0);
    EXPECT_GT(fit.b_err, 0.0);
}

TEST(FitPowerLaw, BridgePersistenceIsInverseN) {
    std::vector<DecayPoint> pts;
    for (int n : {16, 32, 64, 128}) {
        const double p = sparre_andersen_pmf(n, ReferenceProcess::bridge)[n];
        pts.push_back({static_cast<double>(n), p, 0.01 * p});
    }
    const auto fit = fit_power_law(pts);
    EXPECT_NEAR(fit.theta, 1.0, 1e-12);
    EXPECT_NEAR(fit.b, 1.0, 1e-10);
}

TEST(FitPowerLaw, WalkPersistenceIsInverseSqrt) {
    std::vector<DecayPoint> pts;
    for (int n : {256, 512, 1024, 2048}) {
        const double p = sparre_andersen_pmf(n, ReferenceProcess::walk)[n];
        pts.push_back({static_cast<double>(n), p, 0.01 * p});
    }
    const auto fit = fit_power_law(pts);
    EXPECT_NEAR(fit.theta, 0.5, 0.02);
    EXPECT_NEAR(fit.b, 1.0 / std::sqrt(std::numbers::pi), 0.02);
}

TEST(FitPowerLaw, UsesOnlyTheLastWindowPoints) {
    auto pts = power_law(0.5, 0.4, {64, 128, 256, 512});
    pts.insert(pts.begin(), DecayPoint{8, 0.9, 0.01});  // off-curve, outside the window
    std::reverse(pts.begin(), pts.end());                // input order is irrelevant
    const auto fit = fit_power_law(pts, 4);
    EXPECT_NEAR(fit.theta, 0.4, 1e-12);
    EXPECT_EQ(fit.fit_window.front(), 64.0);
}

TEST(FitPowerLaw, ScaleEquivariance) {
    RandomStream rng(1);
    std::vector<DecayPoint> pts;
    for (double n : {32.0, 64.0, 128.0, 256.0}) {
        const double p = 0.3 * std::pow(n, -0.6) * (1.0 + 0.05 * rng.normal());
        pts.push_back({n, p, 0.03 * p});
    }
    const auto base = fit_power_law(pts);
    for (double s : {0.1, 3.0}) {
        auto scaled = pts;
        for (auto& p : scaled) {
            p.p_hat *= s;
            p.std_error *= s;
        }
        const auto fit = fit_power_law(scaled);
        EXPECT_NEAR(fit.theta, base.theta, 1e-12);
        EXPECT_NEAR(fit.b, s * base.b, 1e-12 * s * base.b);
    }
}

TEST(FitPowerLaw, ShiftingWindowOnExactDataChangesNothing) {
    const auto pts = power_law(0.7, 0.8, {8, 16, 32, 64, 128, 256, 512, 1024});
    for (std::size_t w : {2u, 3u, 4u, 8u}) {
        const auto fit = fit_power_law(pts, w);
        EXPECT_NEAR(fit.theta, 0.8, 1e-12);
        EXPECT_NEAR(fit.b, 0.7, 1e-12);
    }
    const std::vector<DecayPoint> head(pts.begin(), pts.begin() + 5);
    EXPECT_NEAR(fit_power_law(head, 3).theta, 0.8, 1e-12);
}

TEST(FitPowerLaw, BootstrapErrorsAgreeWithNormalEquations) {
    const auto pts = power_law(0.35, 0.42, {32, 64, 128, 256}, 0.03);
    const auto fit = fit_power_law(pts, 4, BootstrapOptions{4000, 9});
    ASSERT_TRUE(fit.theta_err_bootstrap.has_value());
    ASSERT_TRUE(fit.b_err_bootstrap.has_value());
    EXPECT_NEAR(*fit.theta_err_bootstrap / fit.theta_err, 1.0, 0.1);
    EXPECT_NEAR(*fit.b_err_bootstrap / fit.b_err, 1.0, 0.15);
}

TEST(FitPowerLaw, Errors) {
    EXPECT_THROW(fit_power_law(power_law(0.5, 0.4, {64})), InvalidArgument);
    auto pts = power_law(0.5, 0.4, {64, 128, 256});
    pts.back().p_hat = 0.0;
    EXPECT_THROW(fit_power_law(pts), InvalidArgument);
    auto same_n = power_law(0.5, 0.4, {64, 64});
    EXPECT_THROW(fit_power_law(same_n), InvalidArgument);
}

TEST(KsStatistic, CalibratedUnderNull) {
    RandomStream rng(2);
    int rejections = 0;
    const int runs = 20;
    for (int r = 0; r < runs; ++r) {
        std::vector<double> v(100000);
        for (double& x : v) x = rng.uniform();
        std::sort(v.begin(), v.end());
        const double d = ks_statistic(v, [](double t) { return t; });
        rejections += d >= 1.95 / std::sqrt(v.size());
    }
    EXPECT_LE(rejections, 1);
}

TEST(KsStatistic, IdenticalSamplesGiveZero) {
    const std::vector<double> v{0.1, 0.2, 0.2, 0.7};
    EXPECT_EQ(ks_statistic(v, v), 0.0);
    EXPECT_THROW(ks_statistic(std::vector<double>{}, v), InvalidArgument);
}

TEST(KsStatistic, DetectsArcsineVsUniform) {
    RandomStream rng(3);
    std::vector<double> v(10000);
    for (double& x : v) x = rng.uniform();
    std::sort(v.begin(), v.end());
    EXPECT_GT(ks_statistic(v, arcsine_cdf), 0.05);
}

TEST(KsStatistic, TwoSampleHandComputed) {
    const std::vector<double> a{0.1, 0.4, 0.5}, b{0.2, 0.3, 0.6, 0.9};
    // ECDF gap is largest just after 0.1 (1/3) and after 0.5 (1 - 1/2).
    EXPECT_NEAR(ks_statistic(a, b), 0.5, 1e-15);
}

TEST(KsPvalue, KnownQuantiles) {
    EXPECT_NEAR(ks_pvalue(1.358 / std::sqrt(1e6), 1e6), 0.05, 0.002);
    EXPECT_NEAR(ks_pvalue(1.628 / std::sqrt(1e6), 1e6), 0.01, 0.001);
    EXPECT_EQ(ks_pvalue(0.0, 100), 1.0);
}

TEST(ChiSquare, PerfectFitAndRejection) {
    const std::vector<std::uint64_t> obs{250, 250, 250, 250};
    const std::vector<double> p{0.25, 0.25, 0.25, 0.25};
    const auto r = chi_square_test(obs, p);
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_EQ(r.dof, 3);
    EXPECT_NEAR(r.p_value, 1.0, 1e-12);
    const std::vector<std::uint64_t> bad{400, 200, 200, 200};
    EXPECT_LT(chi_square_test(bad, p).p_value, 1e-10);
    // Statistic 7.815 at 3 dof is the 0.05 quantile.
    const std::vector<std::uint64_t> obs2{10, 20, 30, 40};
    const auto r2 = chi_square_test(obs2, p);
    EXPECT_NEAR(r2.statistic, 20.0, 1e-12);
    EXPECT_THROW(chi_square_test(obs, std::vector<double>{0.5, 0.5}), InvalidArgument);
}

TEST(TotalVariation, Basic) {
    EXPECT_NEAR(total_variation(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.0}), 0.5, 1e-15);
    EXPECT_EQ(total_variation(std::vector<double>{0.2, 0.8}, std::vector<double>{0.2, 0.8}), 0.0);
}
