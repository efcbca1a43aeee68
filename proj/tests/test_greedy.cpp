#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "greedy_energy/exact.hpp"
#include "greedy_energy/greedy.hpp"
#include "greedy_energy/oracle.hpp"

namespace ge = greedy_energy;

namespace {

ge::GridPolicy dyadic(std::size_t m) { return ge::GridPolicy{2.0 * M_PI / static_cast<double>(m), 0, 16}; }

}  // namespace

TEST(GreedyEnergy, TraceArraysAreAligned) {
  const auto t = ge::greedy_energy_sequence(ge::Domain::interval(-1, 1), ge::KernelSpec::riesz(0.5), 50);
  EXPECT_EQ(t.size(), 50u);
  EXPECT_EQ(t.params.size(), 50u);
  EXPECT_EQ(t.potentials.size(), 50u);
  EXPECT_EQ(t.energies.size(), 50u);
  EXPECT_EQ(t.min_dists.size(), 50u);
  EXPECT_TRUE(std::isnan(t.potentials[0]));
  EXPECT_EQ(t.energies[0], 0.0);
  EXPECT_TRUE(std::isinf(t.min_dists[0]));
  EXPECT_EQ(t.first_index, 1u);
}

TEST(GreedyEnergy, LedgerIsTwiceSumOfPotentials) {
  for (double s : {0.0, 0.5, 1.0, 2.0}) {
    const auto t = ge::greedy_energy_sequence(ge::Domain::interval(0, 1), ge::KernelSpec::riesz(s), 200);
    double sum = 0.0;
    for (std::size_t j = 1; j < t.size(); ++j) sum += t.potentials[j];
    EXPECT_NEAR(t.energies.back(), 2.0 * sum, 1e-12 * std::abs(2.0 * sum)) << s;
  }
}

TEST(GreedyEnergy, LedgerMatchesDirectEnergy) {
  const std::vector<ge::Domain> domains{ge::Domain::circle(), ge::Domain::interval(-1, 1), ge::Domain::sphere(2),
                                        ge::Domain::unit_box(2)};
  for (const auto& d : domains)
    for (double s : {0.0, 1.0, 2.0}) {
      const auto t = ge::greedy_energy_sequence(d, ge::KernelSpec::riesz(s), 64);
      for (std::size_t n : {2, 10, 64}) {
        const auto direct = ge::direct_energy(t.prefix(n), ge::KernelSpec::riesz(s));
        EXPECT_NEAR(t.energy_at(n), direct.value, 1e-9 * std::abs(direct.value) + 1e-12) << d.name() << " s=" << s;
      }
    }
}

TEST(GreedyEnergy, PotentialIsMinimalOverGrid) {
  const auto d = ge::Domain::interval(0, 1);
  const auto spec = ge::KernelSpec::riesz(1.0);
  const auto t = ge::greedy_energy_sequence(d, spec, 20, std::nullopt, ge::GridPolicy{1.0 / 512, 0, 16});
  const auto grid = d.build_grid(1.0 / 512, d.default_anchor());
  for (std::size_t n = 1; n < t.size(); ++n) {
    double best = ge::detail::kInf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double u = 0.0;
      for (std::size_t j = 0; j < n; ++j) u += ge::pair_energy(grid.point(i), t.points[j], spec);
      best = std::min(best, u);
    }
    EXPECT_NEAR(t.potentials[n], best, 1e-12 * std::abs(best)) << n;
  }
}

TEST(GreedyEnergy, CircleStartsWithAntipodeThenQuarters) {
  const auto t = ge::greedy_energy_sequence(ge::Domain::circle(), ge::KernelSpec::riesz(1.0), 8, std::nullopt, dyadic(64));
  EXPECT_EQ(t.grid_indices[0], 0);
  EXPECT_EQ(t.grid_indices[1], 32);
  // ties between the two quarter turns go to the smaller index
  EXPECT_EQ(t.grid_indices[2], 16);
  EXPECT_EQ(t.grid_indices[3], 48);
  std::set<std::ptrdiff_t> first8(t.grid_indices.begin(), t.grid_indices.end());
  EXPECT_EQ(first8, (std::set<std::ptrdiff_t>{0, 8, 16, 24, 32, 40, 48, 56}));
}

TEST(GreedyEnergy, CircleThreeTimesPowerStructure) {
  const std::size_t m = 256;
  for (double s : {0.5, 1.0, 3.0}) {
    const auto t = ge::greedy_energy_sequence(ge::Domain::circle(), ge::KernelSpec::riesz(s), 48, std::nullopt, dyadic(m));
    for (std::size_t n : {3, 6, 12, 24, 48}) {
      auto idx = ge::chosen_indices(t, n);
      EXPECT_TRUE(ge::is_dyadic_complement_structure(idx, m)) << n;
      std::sort(idx.begin(), idx.end());
      EXPECT_EQ(idx, ge::predict_greedy_circle(n, m)) << n;
    }
  }
}

TEST(GreedyEnergy, CircleIndependentOfGridSize) {
  const auto a = ge::greedy_energy_sequence(ge::Domain::circle(), ge::KernelSpec::riesz(0.5), 96, std::nullopt, dyadic(128));
  const auto b = ge::greedy_energy_sequence(ge::Domain::circle(), ge::KernelSpec::riesz(0.5), 96, std::nullopt, dyadic(1024));
  for (std::size_t i = 0; i < 96; ++i) EXPECT_EQ(a.grid_indices[i] * 8, b.grid_indices[i]);
  EXPECT_DOUBLE_EQ(a.energies.back(), b.energies.back());
}

TEST(GreedyEnergy, SphereSecondPointIsAntipode) {
  const ge::PointVec north{0.0, 0.0, 1.0};
  for (double s : {0.0, 1.0, 3.0}) {
    const auto t = ge::greedy_energy_sequence(ge::Domain::sphere(2), ge::KernelSpec::riesz(s), 2, north);
    EXPECT_EQ(t.points[1], (ge::PointVec{-0.0, -0.0, -1.0}));
  }
}

TEST(GreedyEnergy, IntervalStartsAtEndpoints) {
  const auto t = ge::greedy_energy_sequence(ge::Domain::interval(-1, 1), ge::KernelSpec::log(), 3);
  EXPECT_DOUBLE_EQ(t.points[0][0], -1.0);
  EXPECT_DOUBLE_EQ(t.points[1][0], 1.0);
  EXPECT_NEAR(t.points[2][0], 0.0, 1e-12);
}

TEST(GreedyEnergy, RefinementImprovesOffGridOptimum) {
  // optimum a_3 for s = 2 on [0, 1] with a_1 = 0, a_2 = 1 is 1/2; use a grid missing it
  const auto d = ge::Domain::interval(0, 1);
  const auto coarse = ge::greedy_energy_sequence(d, ge::KernelSpec::riesz(2.0), 4, std::nullopt, ge::GridPolicy{1.0 / 7, 0, 16});
  const auto fine = ge::greedy_energy_sequence(d, ge::KernelSpec::riesz(2.0), 4, std::nullopt, ge::GridPolicy{1.0 / 7, 3, 16});
  EXPECT_LE(fine.potentials[2], coarse.potentials[2]);
  EXPECT_NEAR(fine.points[2][0], 0.5, 1e-3);
  EXPECT_EQ(fine.grid_indices[2], -1);
}

TEST(GreedyEnergy, WeightedUnitWeightMatchesUnweighted) {
  const auto d = ge::Domain::interval(0, 1);
  const auto a = ge::greedy_energy_sequence(d, ge::KernelSpec::riesz(1.0), 40);
  const auto b = ge::greedy_energy_sequence(d, ge::KernelSpec::weighted(1.0, ge::make_constant_weight(1.0)), 40);
  for (std::size_t i = 0; i < 40; ++i) EXPECT_EQ(a.points[i], b.points[i]);
  EXPECT_DOUBLE_EQ(a.energies.back(), b.energies.back());
}

TEST(GreedyEnergy, DeterministicAcrossThreadCaps) {
  const auto d = ge::Domain::interval(-1, 1);
  setenv("GREEDY_ENERGY_THREADS", "1", 1);
  const auto one = ge::greedy_energy_sequence(d, ge::KernelSpec::riesz(0.5), 100, std::nullopt, ge::GridPolicy{2.0 / 70000, 1, 16});
  setenv("GREEDY_ENERGY_THREADS", "4", 1);
  const auto four = ge::greedy_energy_sequence(d, ge::KernelSpec::riesz(0.5), 100, std::nullopt, ge::GridPolicy{2.0 / 70000, 1, 16});
  unsetenv("GREEDY_ENERGY_THREADS");
  for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(one.points[i], four.points[i]);
  EXPECT_EQ(one.energies, four.energies);
}

TEST(GreedyEnergy, RejectsBadRequests) {
  const auto c = ge::Domain::circle();
  EXPECT_THROW(ge::greedy_energy_sequence(c, ge::KernelSpec::riesz(1.0), 0), ge::InvalidArgument);
  EXPECT_THROW(ge::greedy_energy_sequence(c, ge::KernelSpec::riesz(1.0), 4, ge::PointVec{2.0, 0.0}), ge::InvalidArgument);
  EXPECT_THROW(ge::greedy_energy_sequence(c, ge::KernelSpec::riesz(1.0), 20, std::nullopt, dyadic(16)), ge::GridExhausted);
}

TEST(GreedyPacking, IntervalFromOneFollowsDyadicLevels) {
  const auto t = ge::greedy_packing_sequence(ge::Domain::interval(0, 1), 33, ge::PointVec{1.0}, ge::GridPolicy{1.0 / 64, 0, 16});
  const auto ref = ge::counterexample_interval_sequence(5);
  ASSERT_EQ(ref.size(), 33u);
  for (std::size_t i = 0; i < 33; ++i) EXPECT_EQ(t.points[i][0], ref.points[i][0]) << i;
  EXPECT_EQ(t.first_index, 0u);
  EXPECT_TRUE(t.energies.empty());
}

TEST(GreedyPacking, MinDistanceIsMonotone) {
  const auto t = ge::greedy_packing_sequence(ge::Domain::sphere(2), 40);
  for (std::size_t i = 2; i < t.size(); ++i) EXPECT_LE(t.min_dists[i], t.min_dists[i - 1]);
  EXPECT_NEAR(t.min_dists[1], 2.0, 1e-12);
}

TEST(GreedyPacking, CircleIsEquallySpacedAtPowersOfTwo) {
  const auto t = ge::greedy_packing_sequence(ge::Domain::circle(), 64, std::nullopt, dyadic(256));
  for (std::size_t n : {2, 4, 8, 16, 32, 64}) EXPECT_TRUE(ge::is_equally_spaced(ge::chosen_indices(t, n), 256)) << n;
}

TEST(Counterexample, IntervalSequenceValues) {
  const auto t = ge::counterexample_interval_sequence(3);
  const std::vector<double> expect{1.0, 0.0, 0.5, 0.25, 0.75, 0.125, 0.375, 0.625, 0.875};
  ASSERT_EQ(t.size(), expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_DOUBLE_EQ(t.points[i][0], expect[i]);
  EXPECT_DOUBLE_EQ(t.delta_at(9), 0.125);
}

TEST(Counterexample, IntervalSequenceIsGreedyPacking) {
  const auto t = ge::counterexample_interval_sequence(6);
  const auto grid = ge::Domain::interval(0, 1).build_grid(1.0 / 256);
  EXPECT_FALSE(ge::audit_packing_property(t.points, grid).has_value());
}

TEST(Counterexample, SquareSequenceCountsAndPackingProperty) {
  const auto t = ge::counterexample_square_sequence(3);
  EXPECT_EQ(t.size(), 81u);  // (2^3 + 1)^2
  std::set<std::pair<double, double>> unique;
  for (const auto& p : t.points) unique.insert({p[0], p[1]});
  EXPECT_EQ(unique.size(), 81u);
  const auto grid = ge::Domain::unit_box(2).build_grid(1.0 / 32);
  EXPECT_FALSE(ge::audit_packing_property(t.points, grid).has_value());
  for (int n = 2; n <= 3; ++n) {
    const std::size_t big = 3 * (std::size_t{1} << (2 * (n - 1))) + 7 * (std::size_t{1} << (n - 2)) + 1;
    std::size_t count = 0;
    for (std::size_t i = 0; i < big; ++i) count += t.points[i][0] <= 0.5 ? 1 : 0;
    EXPECT_EQ(count, ((std::size_t{1} << (n - 1)) + 1) * ((std::size_t{1} << n) + 1));
  }
}

TEST(Counterexample, AuditDetectsNonGreedyOrder) {
  const std::vector<ge::PointVec> bad{{1.0}, {0.0}, {0.25}, {0.5}};
  const auto grid = ge::Domain::interval(0, 1).build_grid(1.0 / 16);
  const auto where = ge::audit_packing_property(bad, grid);
  ASSERT_TRUE(where.has_value());
  EXPECT_EQ(*where, 2u);
}
