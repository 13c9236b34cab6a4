#include <gtest/gtest.h>

#include <cmath>

#include "lsii/auxiliary.hpp"
#include "lsii/errors.hpp"
#include "lsii/noise.hpp"
#include "lsii/processes.hpp"
#include "oracles.hpp"

using namespace lsii;

namespace {
const KernelSpec kGauss(KernelFamily::gaussian, 0.1);

double direct_local_ratio(const Series& y, double u, double h) {
    const double T = static_cast<double>(y.size());
    double num = 0, den = 0;
    for (std::size_t t = 2; t <= y.size(); ++t) {
        const double k = oracle::normal_pdf((u - t / T) / h);
        num += y[t - 2] * y[t - 1] * k;
        den += y[t - 2] * y[t - 2] * k;
    }
    return num / den;
}
}  // namespace

TEST(LocalAr1, MatchesTheKernelRatio) {
    const auto y = simulate_stationary_ma1(0.3, 3000, {1, 0, 0});
    for (double u : {0.1, 0.5, 0.9}) {
        const auto r = local_ar1_estimate(y, u, kGauss);
        EXPECT_NEAR(r.rho, direct_local_ratio(y, u, 0.1), 1e-12);
        EXPECT_FALSE(r.clamped);
    }
}

TEST(LocalAr1, ConstantSeriesClampsAtTheBox) {
    const Series y(std::vector<double>(100, 2.5));
    const auto r = local_ar1_estimate(y, 0.5, kGauss);
    EXPECT_DOUBLE_EQ(r.rho, 1.0 - kTrim);
    EXPECT_TRUE(r.clamped);
}

TEST(LocalAr1, LongSampleMatchesBindingFunction) {
    const std::size_t T = 200000;
    const KernelSpec spec(KernelFamily::gaussian, rule_of_thumb_bandwidth(T));
    EXPECT_NEAR(local_ar1_estimate(simulate_stationary_ma1(0.5, T, {2, 0, 0}), 0.5, spec).rho, 0.4, 0.01);
    EXPECT_NEAR(local_ar1_estimate(simulate_stationary_ma1(0.0, T, {3, 0, 0}), 0.5, spec).rho, 0.0, 0.02);
}

TEST(LocalAr1, ZeroSeriesIsDegenerate) {
    EXPECT_THROW(local_ar1_estimate(Series(std::vector<double>(50, 0.0)), 0.5, kGauss), DegenerateInput);
    EXPECT_THROW(local_ar1_estimate(Series({1.0, 2.0, 3.0}), 1.0, kGauss), InvalidArgument);
}

TEST(LocalAr1, ScaleInvariant) {
    const auto y = simulate_stationary_ma1(-0.4, 2000, {4, 0, 0});
    for (double c : {2.0, -0.5, 8.0}) {
        std::vector<double> z(y.vector());
        for (double& v : z) v *= c;
        EXPECT_EQ(local_ar1_estimate(Series(z), 0.4, kGauss).rho, local_ar1_estimate(y, 0.4, kGauss).rho);
    }
    std::vector<double> z(y.vector());
    for (double& v : z) v *= -3.7;
    EXPECT_NEAR(local_ar1_estimate(Series(z), 0.4, kGauss).rho, local_ar1_estimate(y, 0.4, kGauss).rho, 1e-14);
}

TEST(GlobalAr1, BindingFunctionOracle) {
    EXPECT_NEAR(global_ar1_estimate(simulate_stationary_ma1(0.5, 20000, {5, 0, 0})).rho, 0.4, 0.015);
    EXPECT_NEAR(global_ar1_estimate(simulate_stationary_ma1(0.0, 20000, {6, 0, 0})).rho, 0.0, 0.02);
    for (double theta : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
        const auto y = simulate_stationary_ma1(theta, 200000, {7, 0, 0});
        EXPECT_NEAR(global_ar1_estimate(y).rho, theta / (1.0 + theta * theta), 0.01) << theta;
    }
}

TEST(GlobalAr1, AlternatingSeriesClampsAtLowerBound) {
    std::vector<double> z(101);
    for (std::size_t t = 0; t < z.size(); ++t) z[t] = t % 2 ? -1.5 : 1.5;
    const auto r = global_ar1_estimate(Series(z));
    EXPECT_DOUBLE_EQ(r.rho, -1.0 + kTrim);
    EXPECT_TRUE(r.clamped);
    EXPECT_THROW(global_ar1_estimate(Series(std::vector<double>(10, 0.0))), DegenerateInput);
}

TEST(PseudoTrue, ValuesAndMonotonicity) {
    EXPECT_EQ(pseudo_true_rho_ma1(0.0), 0.0);
    EXPECT_DOUBLE_EQ(pseudo_true_rho_ma1(0.5), 0.4);
    EXPECT_DOUBLE_EQ(pseudo_true_rho_ma1(-0.5), -0.4);
    double prev = -1.0;
    for (int i = 0; i <= 1900; ++i) {
        const double theta = -0.95 + i * 0.001;
        const double r = pseudo_true_rho_ma1(theta);
        EXPECT_GT(r, prev);
        prev = r;
    }
}

TEST(LocalLeastSquares, InterceptWithFlatWeightsIsTheMean) {
    const auto y = simulate_stationary_ma1(0.2, 500, {8, 0, 0});
    const Eigen::MatrixXd X = Eigen::MatrixXd::Ones(500, 1);
    const auto b = local_least_squares(y, X, 0.5, KernelSpec(KernelFamily::gaussian, 1e6));
    EXPECT_NEAR(b(0), sample_mean(y.values()), 1e-10);
}

TEST(LocalLeastSquares, ExactLinearData) {
    const std::size_t T = 400;
    const auto x = NoiseStream({9, 0, 0}).draw(T);
    Eigen::MatrixXd X(T, 2);
    std::vector<double> y(T);
    for (std::size_t t = 0; t < T; ++t) {
        X(t, 0) = 1.0;
        X(t, 1) = x[t];
        y[t] = 2.0 + 3.0 * x[t];
    }
    for (double u : {0.1, 0.6}) {
        const auto b = local_least_squares(Series(y), X, u, kGauss);
        EXPECT_NEAR(b(0), 2.0, 1e-10);
        EXPECT_NEAR(b(1), 3.0, 1e-10);
    }
}

TEST(LocalLeastSquares, TracksTimeVaryingSlope) {
    const std::size_t T = 50000;
    const auto x = NoiseStream({10, 0, 0}).draw(T);
    const auto e = NoiseStream({10, 0, 1}).draw(T);
    Eigen::MatrixXd X(T, 1);
    std::vector<double> y(T);
    for (std::size_t t = 0; t < T; ++t) {
        X(t, 0) = x[t];
        y[t] = (t + 1.0) / T * x[t] + e[t];
    }
    const auto b = local_least_squares(Series(y), X, 0.5, KernelSpec(KernelFamily::gaussian, rule_of_thumb_bandwidth(T)));
    EXPECT_NEAR(b(0), 0.5, 0.02);
}

TEST(LocalLeastSquares, SingularGramIsDegenerate) {
    Eigen::MatrixXd X(100, 2);
    X.col(0).setOnes();
    X.col(1).setOnes();
    EXPECT_THROW(local_least_squares(Series(std::vector<double>(100, 1.0)), X, 0.5, kGauss), DegenerateInput);
}

TEST(LogLevel, ConstantSeries) {
    EXPECT_NEAR(local_loglevel_estimate(Series(std::vector<double>(300, 1.7)), 0.4, kGauss), std::log(1.7 * 1.7), 1e-12);
}

TEST(LogLevel, GaussianNoiseGivesExpectedLogChiSquare) {
    const std::size_t T = 200000;
    const Series y(NoiseStream({11, 0, 0}).draw(T));
    const KernelSpec spec(KernelFamily::gaussian, rule_of_thumb_bandwidth(T));
    // E log chi2_1 = digamma(1/2) + log 2 = -gamma_E - log 2
    const double expected = -0.5772156649015329 - std::log(2.0);
    EXPECT_NEAR(local_loglevel_estimate(y, 0.5, spec), expected, 0.02);
    EXPECT_NEAR(expected, -1.2704, 1e-4);
}

TEST(LogLevel, ScalingShiftsByLogFour) {
    const auto y = NoiseStream({12, 0, 0}).draw(1000);
    std::vector<double> z(y);
    for (double& v : z) v *= 2.0;
    EXPECT_NEAR(local_loglevel_estimate(Series(z), 0.3, kGauss),
                local_loglevel_estimate(Series(y), 0.3, kGauss) + std::log(4.0), 1e-12);
}

TEST(LogLevel, ZerosAreFlooredNotFatal) {
    auto y = NoiseStream({13, 0, 0}).draw(500);
    for (std::size_t t = 200; t < 260; ++t) y[t] = 0.0;
    const double v = local_loglevel_estimate(Series(y), 0.46, kGauss);
    EXPECT_TRUE(std::isfinite(v));
}

TEST(TauGridTest, NormalizationCases) {
    std::vector<double> u;
    for (int i = 0; i <= 100; ++i) u.push_back(0.01 + 0.0098 * i);
    TauGrid constant{u, std::vector<double>(u.size(), 5.0)};
    for (double t : normalize_tau(constant).tau) EXPECT_NEAR(t, 1.0, 1e-12);

    TauGrid linear{u, u};
    const auto n = normalize_tau(linear);
    EXPECT_NEAR(n.integral(), 1.0, 1e-10);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(n.tau[i], 2.0 * u[i], 1e-3);

    const auto twice = normalize_tau(n);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(twice.tau[i], n.tau[i], 1e-12);

    TauGrid bad{u, u};
    bad.tau[3] = 0.0;
    EXPECT_THROW(normalize_tau(bad), InvalidArgument);
}

TEST(TauGridTest, InterpolationIsConstantOutside) {
    TauGrid g{{0.2, 0.4, 0.6}, {1.0, 2.0, 4.0}};
    EXPECT_DOUBLE_EQ(g.at(0.1), 1.0);
    EXPECT_DOUBLE_EQ(g.at(0.3), 1.5);
    EXPECT_DOUBLE_EQ(g.at(0.9), 4.0);
    // 0.2 * 1 + trapezoid 0.3 + 0.6 + 0.4 * 4
    EXPECT_NEAR(g.integral(), 0.2 + 0.3 + 0.6 + 1.6, 1e-15);
}
