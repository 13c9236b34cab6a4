#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lsii/errors.hpp"
#include "lsii/montecarlo.hpp"
#include "oracles.hpp"

using namespace lsii;

TEST(QuantileBands, ColumnwiseType7) {
    std::vector<std::vector<double>> est;
    for (int r = 1; r <= 100; ++r) est.push_back({double(r), -double(r)});
    const auto q = quantile_bands(est, {0.05, 0.5, 0.95});
    EXPECT_DOUBLE_EQ(q[1][0], 50.5);
    EXPECT_DOUBLE_EQ(q[1][1], -50.5);
    EXPECT_DOUBLE_EQ(q[0][0], -q[2][1]);
    std::vector<double> col;
    for (const auto& r : est) col.push_back(r[0]);
    EXPECT_DOUBLE_EQ(q[0][0], oracle::type7(col, 0.05));
    EXPECT_THROW(quantile_bands({}, {0.5}), InvalidArgument);
    EXPECT_THROW(quantile_bands({{1.0, 2.0}, {1.0}}, {0.5}), InvalidArgument);
}

TEST(Designs, GridNamesAndTruths) {
    const std::vector<double> g{0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95};
    EXPECT_EQ(default_grid(), g);
    for (auto k : {DesignKind::ls_ma1_a, DesignKind::ls_ma1_b, DesignKind::ls_ma1_c, DesignKind::ls_sv}) {
        EXPECT_EQ(parse_design_kind(to_string(k)), k);
    }
    EXPECT_EQ(parse_design_kind("b"), DesignKind::ls_ma1_b);
    EXPECT_THROW(parse_design_kind("zz"), InvalidArgument);

    const auto a = design_truth(McDesign::named(DesignKind::ls_ma1_a, 1, 0));
    const auto b = design_truth(McDesign::named(DesignKind::ls_ma1_b, 1, 0));
    const auto c = design_truth(McDesign::named(DesignKind::ls_ma1_c, 1, 0));
    const auto sv = design_truth(McDesign::named(DesignKind::ls_sv, 1, 0));
    for (double u : g) {
        EXPECT_NEAR(a(u), 0.5 * u * u, 1e-12);
        EXPECT_NEAR(b(u), 0.25 + u - u * u, 1e-12);
        EXPECT_EQ(c(u), 0.5);
        EXPECT_NEAR(sv(u), 0.2 * std::sin(0.5 * std::numbers::pi * u) + 0.8 * std::cos(0.5 * std::numbers::pi * u), 1e-12);
    }
    EXPECT_EQ(McDesign::named(DesignKind::ls_sv, 1, 0).T, 200u);
    EXPECT_EQ(McDesign::named(DesignKind::ls_ma1_c, 1, 0).T, 1000u);
    EXPECT_EQ(design_model(DesignKind::ls_sv), ModelKind::ls_sv);
}

TEST(Designs, SampleUsesReplicationKey) {
    const auto d = McDesign::named(DesignKind::ls_ma1_b, 3, 42);
    const auto s0 = design_sample(d, 0), s0b = design_sample(d, 0), s1 = design_sample(d, 1);
    EXPECT_EQ(s0.size(), 1000u);
    EXPECT_EQ(s0[10], s0b[10]);
    EXPECT_NE(s0[10], s1[10]);
}

TEST(RunStudy, SingleReplication) {
    auto d = McDesign::named(DesignKind::ls_ma1_c, 1, 3);
    const auto s = run_study(d);
    ASSERT_EQ(s.rows.size(), 11u);
    for (const auto& row : s.rows) {
        EXPECT_EQ(row.q05, row.q50);
        EXPECT_EQ(row.q50, row.q95);
        EXPECT_NEAR(row.rmse, std::abs(row.bias), 1e-15);
    }
    EXPECT_THROW(run_study(McDesign::named(DesignKind::ls_ma1_c, 0, 3)), InvalidArgument);
}

TEST(RunStudy, RowsAgreeWithStoredEstimates) {
    auto d = McDesign::named(DesignKind::ls_ma1_a, 30, 4);
    const auto s = run_study(d);
    ASSERT_EQ(s.estimates.size(), 30u);
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        std::vector<double> col;
        double bias = 0, mse = 0;
        for (const auto& r : s.estimates) {
            const double v = r[i].values[0];
            col.push_back(v);
            bias += v - s.rows[i].truth;
            mse += (v - s.rows[i].truth) * (v - s.rows[i].truth);
        }
        EXPECT_EQ(s.rows[i].q50, oracle::type7(col, 0.5));
        EXPECT_NEAR(s.rows[i].bias, bias / 30, 1e-14);
        EXPECT_NEAR(s.rows[i].rmse, std::sqrt(mse / 30), 1e-14);
        EXPECT_LE(s.rows[i].q05, s.rows[i].q50);
        EXPECT_LE(s.rows[i].q50, s.rows[i].q95);
    }
}

TEST(RunStudy, ThreadCountDoesNotChangeTheSummary) {
    auto d = McDesign::named(DesignKind::ls_ma1_b, 24, 5);
    const auto serial = run_study(d);
    d.threads = 4;
    const auto parallel = run_study(d);
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        EXPECT_EQ(serial.rows[i].q05, parallel.rows[i].q05);
        EXPECT_EQ(serial.rows[i].q50, parallel.rows[i].q50);
        EXPECT_EQ(serial.rows[i].q95, parallel.rows[i].q95);
        EXPECT_EQ(serial.rows[i].rmse, parallel.rows[i].rmse);
    }
}

TEST(RunStudy, ConstantDesignIsCentred) {
    const auto s = run_study(McDesign::named(DesignKind::ls_ma1_c, 100, 6));
    for (const auto& row : s.rows) {
        if (row.u < 0.2 || row.u > 0.8) continue;
        EXPECT_NEAR(row.q50, 0.5, 0.05);
        EXPECT_LE(row.q05, 0.5);
        EXPECT_GE(row.q95, 0.5);
    }
}

TEST(RunStudy, ErrorShrinksWithSampleSize) {
    auto small = McDesign::named(DesignKind::ls_ma1_b, 40, 7);
    small.T = 500;
    auto large = small;
    large.T = 4000;
    const auto a = run_study(small), b = run_study(large);
    double ra = 0, rb = 0;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        ra += a.rows[i].rmse;
        rb += b.rows[i].rmse;
    }
    EXPECT_LT(rb, ra);
}

TEST(RunStudy, FailuresAboveTenPercentRaise) {
    auto d = McDesign::named(DesignKind::ls_ma1_c, 5, 8);
    d.lii.tolerance = 1e-300;
    d.lii.max_iterations = 2;
    try {
        run_study(d);
        FAIL() << "expected StudyFailure";
    } catch (const StudyFailure& e) {
        EXPECT_EQ(e.partial().failures, 5u);
        EXPECT_EQ(e.partial().rows.size(), 11u);
        EXPECT_TRUE(std::isnan(e.partial().rows[0].q50));
    }
}
