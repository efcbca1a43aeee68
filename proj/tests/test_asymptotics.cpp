#include <gtest/gtest.h>

#include <cmath>

#include "greedy_energy/asymptotics.hpp"
#include "greedy_energy/exact.hpp"
#include "oracle_values.hpp"

namespace ge = greedy_energy;

namespace {

ge::GreedyTrace circle_trace(double s, std::size_t n, std::size_t m) {
  return ge::greedy_energy_sequence(ge::Domain::circle(), ge::KernelSpec::riesz(s), n, std::nullopt,
                                    ge::GridPolicy{2.0 * M_PI / static_cast<double>(m), 0, 16});
}

}  // namespace

TEST(Constants, SphereEnergyMatchesQuadratureOracle) {
  const double s[3] = {0.0, 0.25, 0.5};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(ge::sphere_constant(1, s[i]), oracle::kSphere1[i], 1e-14) << s[i];
    EXPECT_NEAR(ge::sphere_constant(2, s[i]), oracle::kSphere2[i], 1e-14) << s[i];
  }
  // S^2: I_s = 2^{1-s} / (2 - s)
  EXPECT_NEAR(ge::sphere_constant(2, 1.0), 1.0, 1e-14);
  EXPECT_THROW(ge::sphere_constant(2, 2.0), ge::InvalidArgument);
  EXPECT_TRUE(std::isfinite(ge::sphere_constant(400, 1.5)));
}

TEST(Constants, IntervalAndCircleConstants) {
  EXPECT_NEAR(ge::interval_constant(0.0), oracle::kIntervalConst0, 1e-16);
  EXPECT_NEAR(ge::interval_constant(0.5), oracle::kIntervalConst05, 1e-14);
  EXPECT_THROW(ge::interval_constant(1.0), ge::InvalidArgument);
  EXPECT_NEAR(ge::f_factor(0.5), oracle::kF05, 1e-15);
  EXPECT_EQ(ge::f_factor(2.0), 11.0 / 9.0);
  EXPECT_NEAR(ge::circle_second_order_constant(0.5), oracle::kCircleSecond05, 1e-14);
  EXPECT_NEAR(ge::circle_second_order_constant(1.0), oracle::kCircleSecond1, 1e-15);
  EXPECT_NEAR(ge::greedy_s1_second_order_constant(), oracle::kGreedySecond1, 1e-15);
  EXPECT_NEAR(ge::f_factor(2.0) * ge::circle_second_order_constant(2.0), oracle::kNonMinimizing2, 1e-15);
}

TEST(FirstOrderScaling, SelectionTable) {
  const auto circle_log = ge::first_order_scaling(ge::Domain::circle(), ge::KernelSpec::log());
  EXPECT_FALSE(circle_log.log_term);
  EXPECT_NEAR(circle_log.constant, 0.0, 1e-15);
  const auto circle1 = ge::first_order_scaling(ge::Domain::circle(), ge::KernelSpec::riesz(1.0));
  EXPECT_TRUE(circle1.log_term);
  EXPECT_NEAR(circle1.constant, 1.0 / M_PI, 1e-16);
  const auto iv = ge::first_order_scaling(ge::Domain::interval(0, 1), ge::KernelSpec::log());
  EXPECT_NEAR(iv.constant, std::log(4.0), 1e-15);
  const auto iv3 = ge::first_order_scaling(ge::Domain::interval(0, 2), ge::KernelSpec::riesz(3.0));
  EXPECT_DOUBLE_EQ(iv3.beta, 4.0);
  EXPECT_NEAR(iv3.constant, 2.0 * oracle::kZeta3 / 8.0, 1e-15);
  const auto sph = ge::first_order_scaling(ge::Domain::sphere(2), ge::KernelSpec::riesz(2.0));
  EXPECT_TRUE(sph.log_term);
  EXPECT_NEAR(sph.constant, 0.25, 1e-15);
  const auto sq = ge::first_order_scaling(ge::Domain::unit_box(2), ge::KernelSpec::riesz(3.0));
  EXPECT_DOUBLE_EQ(sq.beta, 2.5);
  EXPECT_TRUE(std::isnan(sq.constant));
  const auto weighted = ge::first_order_scaling(ge::Domain::interval(0, 2),
                                                ge::KernelSpec::weighted(1.0, ge::make_constant_weight(1.0)));
  EXPECT_TRUE(weighted.log_term);
  EXPECT_NEAR(weighted.constant, 1.0, 1e-12);
}

TEST(FirstOrderReport, CircleSquaredChordIsExact) {
  const auto trace = circle_trace(2.0, 64, 64);
  const auto rep = ge::first_order_report(trace);
  EXPECT_EQ(rep.rows.size(), 63u);
  for (std::size_t n : {2, 4, 8, 16, 32, 64}) {
    const double nd = static_cast<double>(n);
    const auto* row = rep.row_at(n);
    ASSERT_NE(row, nullptr);
    EXPECT_NEAR(row->statistic, (nd * nd - 1.0) / (12.0 * nd * nd), 1e-14);
    EXPECT_NEAR(row->reference, 1.0 / 12.0, 1e-16);
  }
  EXPECT_EQ(rep.meta.domain, "circle");
}

TEST(SecondOrderReport, PowersOfTwoApproachConstant) {
  const auto trace = circle_trace(0.5, 768, 1024);
  const auto rep = ge::second_order_report(trace);
  const auto* r512 = rep.row_at(512);
  ASSERT_NE(r512, nullptr);
  EXPECT_EQ(r512->subsequence, "2^n");
  EXPECT_NEAR(r512->ratio, 1.0, 1e-3);
  const auto* r768 = rep.row_at(768);
  ASSERT_NE(r768, nullptr);
  EXPECT_EQ(r768->subsequence, "3*2^n");
  EXPECT_NEAR(r768->reference, oracle::kF05 * oracle::kCircleSecond05, 1e-13);
  EXPECT_NEAR(r768->ratio, 1.0, 1e-3);
  EXPECT_THROW(ge::second_order_report(circle_trace(2.0, 8, 8)), ge::InvalidArgument);
}

TEST(GapSumReport, VanishesOnPowersOfTwo) {
  const auto trace = circle_trace(1.0, 100, 128);
  const auto rep = ge::gap_sum_report(trace);
  for (const auto& r : rep.rows) {
    if (r.subsequence == "2^n") {
      EXPECT_EQ(r.statistic, 0.0) << r.n;
    }
  }
  ASSERT_NE(rep.row_at(6), nullptr);
  EXPECT_GT(rep.row_at(6)->statistic, 0.0);
  EXPECT_NE(rep.row_at(100), nullptr);
}

TEST(GapSumReport, ThreeTimesPowerIsConstant) {
  const auto trace = circle_trace(1.0, 96, 128);
  const auto rep = ge::gap_sum_report(trace, {6, 12, 24, 48, 96});
  // unit gaps 1, 1, 2 repeated K times around a mean of 4/3: the sum is 2 pi / 3
  for (const auto& r : rep.rows) EXPECT_NEAR(r.statistic, 2.0 * M_PI / 3.0, 1e-12) << r.n;
}

TEST(PackingReport, CounterexampleSummary) {
  const auto trace = ge::counterexample_interval_sequence(10);
  const auto rep = ge::packing_report(trace);
  EXPECT_EQ(rep.rows.front().n, 1u);
  EXPECT_DOUBLE_EQ(rep.rows.front().statistic, 1.0);
  EXPECT_DOUBLE_EQ(*rep.summary_value("window_hi"), 1024.0);
  EXPECT_NEAR(*rep.summary_value("liminf_estimate"), 0.5, 1e-3);
  EXPECT_DOUBLE_EQ(*rep.summary_value("limsup_estimate"), 1.0);
  EXPECT_NEAR(*rep.summary_value("liminf_bound"), (4.0 + 3.0 * std::sqrt(2.0)) / (4.0 + 4.0 * std::sqrt(2.0)), 1e-15);
  EXPECT_DOUBLE_EQ(*rep.summary_value("liminf_bound_given_limsup"), 0.5);
  EXPECT_FALSE(rep.summary_value("missing").has_value());
}

TEST(GrowthReport, BoundedRatiosAndDensity) {
  const auto trace = ge::greedy_energy_sequence(ge::Domain::interval(0, 1), ge::KernelSpec::riesz(2.0), 256);
  const auto rep = ge::growth_and_density_report(trace);
  EXPECT_EQ(rep.kind, ge::StatisticKind::growth_ratio);
  double lo = 1e300;
  double hi = 0.0;
  for (const auto& r : rep.rows)
    if (r.n >= 16) {
      lo = std::min(lo, r.statistic);
      hi = std::max(hi, r.statistic);
    }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi / lo, 2.0);

  const auto dens = ge::growth_and_density_report(trace, std::make_pair(0.25, 0.5));
  EXPECT_EQ(dens.kind, ge::StatisticKind::density_stat);
  EXPECT_EQ(dens.rows.size(), 256u);
  EXPECT_GT(dens.rows.back().statistic, 0.0);
  EXPECT_THROW(ge::growth_and_density_report(trace, std::make_pair(0.5, 0.25)), ge::InvalidArgument);
}

TEST(Reports, StatisticNames) {
  EXPECT_EQ(ge::to_string(ge::StatisticKind::packing_ndelta), "packing_ndelta");
  EXPECT_EQ(ge::to_string(ge::StatisticKind::gap_sum), "gap_sum");
}
