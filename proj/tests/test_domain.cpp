#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "greedy_energy/domain.hpp"

namespace ge = greedy_energy;

namespace {

ge::Domain semicircle(std::size_t segments = 4096) {
  return ge::Domain::curve_from([](double t) { return ge::PointVec{std::cos(t), std::sin(t)}; }, 0.0, M_PI, segments,
                                false);
}

}  // namespace

TEST(Domain, BasicShapes) {
  const auto c = ge::Domain::circle();
  EXPECT_EQ(c.ambient_dim(), 2u);
  EXPECT_EQ(c.intrinsic_dim(), 1u);
  EXPECT_TRUE(c.closed());
  EXPECT_NEAR(c.measure(), 2.0 * M_PI, 1e-15);

  const auto s2 = ge::Domain::sphere(2);
  EXPECT_EQ(s2.kind(), ge::DomainKind::sphere);
  EXPECT_EQ(s2.ambient_dim(), 3u);
  EXPECT_EQ(ge::Domain::sphere(1).kind(), ge::DomainKind::circle);

  const auto iv = ge::Domain::interval(-1.0, 3.0);
  EXPECT_DOUBLE_EQ(iv.measure(), 4.0);
  EXPECT_FALSE(iv.closed());

  EXPECT_DOUBLE_EQ(ge::Domain::unit_box(3).measure(), 1.0);
}

TEST(Domain, RejectsMalformedInput) {
  EXPECT_THROW(ge::Domain::interval(1.0, 1.0), ge::InvalidArgument);
  EXPECT_THROW(ge::Domain::sphere(0), ge::InvalidArgument);
  EXPECT_THROW(ge::Domain::box({0.0, 0.0}, {1.0}), ge::InvalidArgument);
  EXPECT_THROW(ge::Domain::curve({{0.0, 0.0}}, false), ge::InvalidArgument);
  EXPECT_THROW(ge::Domain::curve({{0.0, 0.0}, {0.0, 0.0}}, false), ge::InvalidArgument);
}

TEST(Domain, CircleGridIsDyadicAndAnchored) {
  const auto c = ge::Domain::circle();
  const auto g = c.build_grid(2.0 * M_PI / 1000.0);
  EXPECT_EQ(g.size(), 1024u);
  EXPECT_EQ(g.cyclic_size, 1024u);
  EXPECT_TRUE(std::has_single_bit(g.size()));
  EXPECT_DOUBLE_EQ(g.point(0)[0], 1.0);
  EXPECT_DOUBLE_EQ(g.point(0)[1], 0.0);
  // quarter turns are exact
  EXPECT_DOUBLE_EQ(g.point(256)[0], 0.0);
  EXPECT_DOUBLE_EQ(g.point(256)[1], 1.0);
  EXPECT_DOUBLE_EQ(g.point(512)[0], -1.0);
  EXPECT_DOUBLE_EQ(g.point(512)[1], 0.0);
  // an exact power-of-two resolution does not round up to the next size
  EXPECT_EQ(c.build_grid(2.0 * M_PI / 4096.0).size(), 4096u);
}

TEST(Domain, CircleGridRotatesWithAnchor) {
  const auto c = ge::Domain::circle();
  const ge::PointVec a{0.0, 1.0};
  const auto g = c.build_grid(2.0 * M_PI / 8.0, a);
  ASSERT_EQ(g.size(), 8u);
  EXPECT_NEAR(g.point(0)[0], 0.0, 1e-15);
  EXPECT_NEAR(g.point(0)[1], 1.0, 1e-15);
  EXPECT_NEAR(g.point(2)[0], -1.0, 1e-15);
}

TEST(Domain, IntervalGridContainsEndpointsAndAnchor) {
  const auto iv = ge::Domain::interval(0.0, 1.0);
  const auto g = iv.build_grid(0.1, ge::PointVec{0.123});
  EXPECT_DOUBLE_EQ(g.point(0)[0], 0.0);
  EXPECT_DOUBLE_EQ(g.point(g.size() - 1)[0], 1.0);
  bool has_anchor = false;
  for (std::size_t i = 0; i < g.size(); ++i) has_anchor = has_anchor || g.point(i)[0] == 0.123;
  EXPECT_TRUE(has_anchor);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(g.point(i - 1)[0], g.point(i)[0]);
  EXPECT_EQ(iv.build_grid(1.0 / 4096.0).size(), 4097u);
}

TEST(Domain, SphereGridContainsAnchorAndAntipode) {
  const auto s2 = ge::Domain::sphere(2);
  const ge::PointVec a{0.0, 0.6, 0.8};
  const auto g = s2.build_grid(0.2, a);
  bool anchor = false;
  bool anti = false;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto p = g.point(i);
    EXPECT_NEAR(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]), 1.0, 1e-12);
    anchor = anchor || (p[0] == 0.0 && p[1] == 0.6 && p[2] == 0.8);
    anti = anti || (p[0] == -0.0 && p[1] == -0.6 && p[2] == -0.8);
  }
  EXPECT_TRUE(anchor);
  EXPECT_TRUE(anti);
  EXPECT_GT(g.size(), 400u);
}

TEST(Domain, HigherSphereGridIsOnTheSphere) {
  const auto s3 = ge::Domain::sphere(3);
  const auto g = s3.build_grid(0.5);
  ASSERT_GT(g.size(), 8u);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_TRUE(s3.contains(g.point(i), 1e-12));
}

TEST(Domain, BoxGridIsTensor) {
  const auto b = ge::Domain::unit_box(2);
  const auto g = b.build_grid(0.25);
  EXPECT_EQ(g.size(), 25u);
  EXPECT_THROW(b.build_grid(0.0), ge::InvalidArgument);
}

TEST(Domain, ContainsAndParam) {
  const auto c = ge::Domain::circle();
  EXPECT_TRUE(c.contains(ge::PointVec{0.0, -1.0}));
  EXPECT_FALSE(c.contains(ge::PointVec{0.0, -1.1}));
  EXPECT_NEAR(c.param_of(ge::PointVec{0.0, -1.0}), 1.5 * M_PI, 1e-15);
  EXPECT_THROW((void)c.param_of(ge::PointVec{0.5, 0.0}), ge::InvalidArgument);

  const auto arc = semicircle();
  EXPECT_NEAR(arc.measure(), M_PI, 1e-6);
  const auto mid = arc.point_at(arc.measure() / 2.0);
  EXPECT_NEAR(mid[0], 0.0, 1e-9);
  EXPECT_NEAR(mid[1], 1.0, 1e-6);
  EXPECT_NEAR(arc.param_of(mid), arc.measure() / 2.0, 1e-9);
}

TEST(Domain, CurveParameterIsClippedAtEnds) {
  const auto arc = semicircle(64);
  const double len = arc.measure();
  const auto g = arc.refine_near(arc.point_at(0.0), 0.1, 4);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_GE(g.params[i], 0.0);
    EXPECT_LE(g.params[i], len);
  }
  EXPECT_DOUBLE_EQ(g.params.front(), 0.0);
  EXPECT_THROW(arc.point_at(len * 1.1), ge::InvalidArgument);
}

TEST(Domain, ClosedCurveWrapsRefinement) {
  const auto square = ge::Domain::curve({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true);
  EXPECT_DOUBLE_EQ(square.measure(), 4.0);
  const auto g = square.refine_near(ge::PointVec{0.0, 0.0}, 0.2, 4);
  EXPECT_EQ(g.size(), 9u);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_TRUE(square.contains(g.point(i)));
}

TEST(Domain, IntervalRefinementAddsBoundaryOnce) {
  const auto iv = ge::Domain::interval(0.0, 1.0);
  const auto g = iv.refine_near(ge::PointVec{0.02}, 0.1, 4);
  EXPECT_DOUBLE_EQ(g.point(0)[0], 0.0);
  EXPECT_NE(g.point(1)[0], 0.0);
}

TEST(Domain, GapsOnCircleIncludeWrap) {
  const auto c = ge::Domain::circle();
  const auto gv = c.gaps_from_params({0.0, M_PI / 2.0, M_PI});
  ASSERT_EQ(gv.gaps.size(), 3u);
  EXPECT_NEAR(gv.gaps[2], M_PI, 1e-15);
  EXPECT_NEAR(gv.total, 2.0 * M_PI, 1e-15);
}

TEST(Domain, GapsOnArcHaveOneFewer) {
  const auto iv = ge::Domain::interval(0.0, 1.0);
  const auto gv = iv.order_and_gaps({{1.0}, {0.0}, {0.5}});
  ASSERT_EQ(gv.gaps.size(), 2u);
  EXPECT_DOUBLE_EQ(gv.gaps[0], 0.5);
  EXPECT_THROW(iv.order_and_gaps({{0.5}, {0.5}}), ge::InvalidArgument);
}

TEST(Domain, IntegrateRecoversMeasure) {
  auto one = [](ge::PointView) { return 1.0; };
  EXPECT_NEAR(ge::Domain::sphere(2).integrate(one), 4.0 * M_PI, 1e-9);
  EXPECT_NEAR(ge::Domain::circle().integrate(one), 2.0 * M_PI, 1e-12);
  EXPECT_NEAR(ge::Domain::unit_box(2).integrate(one), 1.0, 1e-12);
  EXPECT_NEAR(ge::Domain::sphere(3).integrate(one), 2.0 * M_PI * M_PI, 1e-8);
}

TEST(Domain, NamesAreStable) {
  EXPECT_EQ(ge::Domain::circle().name(), "circle");
  EXPECT_EQ(ge::Domain::interval(0, 1).name(), "interval[0,1]");
  EXPECT_EQ(ge::Domain::sphere(2).name(), "sphere2");
}
