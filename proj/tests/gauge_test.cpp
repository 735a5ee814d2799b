#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "advcalc/errors.hpp"
#include "advcalc/gauge.hpp"

namespace advcalc::gauge {
namespace {

Vec vec(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

const ConvexBody kDisc = ConvexBody::ball(vec(0, 0), 1.0);
const ConvexBody kSquare = ConvexBody::polytope(HalfspacePolytope::box(vec(-1, -1), vec(1, 1)));

// Random polytope: tangent lines to the unit circle at sorted random angles.
ConvexBody random_polytope(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.4, 0.4), radius(0.5, 2.0);
  std::vector<Halfspace> hs;
  const int k = 5 + static_cast<int>(seed % 4);
  for (int j = 0; j < k; ++j) {
    const double th = 2 * std::numbers::pi * (j + jitter(rng)) / k;
    hs.push_back({vec(std::cos(th), std::sin(th)), radius(rng)});
  }
  return ConvexBody::polytope(HalfspacePolytope::make(std::move(hs)));
}

TEST(LambdaTest, Examples) {
  EXPECT_NEAR(lambda(kDisc, vec(0, 0), vec(1, 0)), 1.0, 1e-12);
  EXPECT_NEAR(lambda(kDisc, vec(0.6, 0), vec(1, 0)), 0.4, 1e-12);
  EXPECT_NEAR(lambda(kSquare, vec(0, 0), vec(1, 1)), 1.0, 1e-12);
  EXPECT_NEAR(lambda(kDisc, vec(0, 0), vec(2, 0)), 0.5, 1e-12);
  auto [lo, hi] = line_range(kSquare, vec(0.5, 0), vec(1, 0));
  EXPECT_NEAR(lo, -1.5, 1e-12);
  EXPECT_NEAR(hi, 0.5, 1e-12);
}

TEST(LambdaTest, Errors) {
  EXPECT_THROW(lambda(kDisc, vec(0, 0), vec(0, 0)), Error);
  try {
    lambda(kDisc, vec(0, 2), vec(1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "line disjoint from body");
  }
  EXPECT_THROW(lambda(kSquare, vec(0, 3), vec(1, 0)), Error);
  EXPECT_THROW(lambda(kDisc, Vec::Zero(3), Vec::Ones(3)), DimensionMismatch);
}

TEST(PolytopeTest, Validation) {
  EXPECT_THROW(HalfspacePolytope::make({{vec(1, 0), 1}, {vec(0, 1), 1}}), Error);
  EXPECT_THROW(HalfspacePolytope::make({{vec(1, 0), 0}, {vec(-1, 0), 0}, {vec(0, 1), 1}, {vec(0, -1), 1}}), Error);
  auto p = HalfspacePolytope::make({{vec(2, 0), 2}, {vec(-1, 0), 1}, {vec(0, 1), 1}, {vec(0, -1), 1}});
  EXPECT_NEAR(p.constraints()[0].b, 1.0, 1e-15);
  EXPECT_TRUE(p.contains(p.interior_point()));
  EXPECT_EQ(p.vertices().size(), 4u);
  auto diamond = ConvexBody::ball(vec(0, 0), 1.0, NormKind::kL1);
  EXPECT_NEAR(lambda(diamond, vec(0, 0), vec(1, 1)), 0.5, 1e-12);
  auto cube = ConvexBody::ball(Vec::Zero(3), 2.0, NormKind::kLInf);
  EXPECT_NEAR(lambda(cube, Vec::Zero(3), Vec::Ones(3)), 2.0, 1e-12);
  auto octa = ConvexBody::ball(Vec::Zero(3), 1.0, NormKind::kL1);
  EXPECT_EQ(octa.as_polytope().vertices().size(), 6u * 4u);
}

TEST(ConcavityTest, Disc) {
  auto rep = concavity_probe(kDisc, 10000, 3);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.max_violation, 1e-9);
  EXPECT_GE(rep.min_lambda, -1e-12);
  EXPECT_EQ(rep.rows.size(), 10000u);
}

TEST(ConcavityTest, PolytopesAndBalls) {
  for (std::uint64_t s = 1; s <= 3; ++s) {
    auto rep = concavity_probe(random_polytope(s), 2000, s);
    EXPECT_TRUE(rep.passed) << rep.max_violation;
  }
  EXPECT_TRUE(concavity_probe(ConvexBody::ball(Vec::Zero(3), 2.0), 500, 9).passed);
  EXPECT_TRUE(concavity_probe(ConvexBody::ball(Vec::Zero(3), 1.0, NormKind::kL1), 500, 9).passed);
}

TEST(ConcavityTest, EqualEndpointsAndTangentSegment) {
  const Vec v = vec(0, 1);
  const Vec x = vec(0.3, -0.2);
  EXPECT_NEAR(lambda(kDisc, x, v), 0.5 * lambda(kDisc, x, v) + 0.5 * lambda(kDisc, x, v), 1e-12);
  // segment between two boundary points of the square's right edge, v along the edge
  const Vec a = vec(1, -1), b = vec(1, 0.5);
  for (double t : {0.0, 0.25, 0.5, 1.0}) {
    const double lhs = lambda(kSquare, t * a + (1 - t) * b, v);
    const double rhs = t * lambda(kSquare, a, v) + (1 - t) * lambda(kSquare, b, v);
    EXPECT_GE(lhs, rhs - 1e-12);
  }
}

TEST(CovarianceTest, TranslationAndScaling) {
  std::vector<ConvexBody> bodies{kDisc, kSquare, random_polytope(4), ConvexBody::ball(vec(0.5, -1), 2.0)};
  for (std::size_t i = 0; i < 200; ++i) {
    for (const auto& c : bodies) {
      const Vec x = sample_point(c, 11, i), v = sample_unit(2, 12, i), w = sample_unit(2, 13, i) * 3.0;
      const double base = lambda(c, x, v);
      EXPECT_NEAR(lambda(c.translated(w), x + w, v), base, 1e-12 * std::max(1.0, std::abs(base)));
      const double s = 0.5 + static_cast<double>(i % 7);
      EXPECT_NEAR(lambda(c.scaled(s), s * x, v), s * base, 1e-12 * std::max(1.0, std::abs(s * base)));
    }
  }
}

TEST(ApproximationTest, SecantDeltaNeedsMoreThanEightSides) {
  const L2Ball disc{vec(0, 0), 1.0};
  const double delta = 2 * (1 / std::cos(std::numbers::pi / 8) - 1);
  auto a = approximate_by_polytope(disc, delta, vec(1, 0));
  EXPECT_EQ(a.k, 32u);
  EXPECT_LT(a.sampled_gap, delta / 2);
  EXPECT_GE(a.min_gap, -1e-12);
  EXPECT_EQ(approximate_by_polytope(disc, 10.0, vec(1, 0)).k, 8u);
  EXPECT_THROW(approximate_by_polytope(disc, 0.0, vec(1, 0)), Error);
}

TEST(ApproximationTest, GapBoundsAtFreshSamples) {
  const L2Ball disc{vec(0, 0), 1.0};
  const double delta = 1e-3;
  auto a = approximate_by_polytope(disc, delta, vec(1, 0));
  const ConvexBody p = ConvexBody::polytope(a.polytope);
  for (std::size_t i = 0; i < 10000; ++i) {
    const Vec x = sample_point(kDisc, 77, i), v = sample_unit(2, 78, i);
    const double gap = lambda(p, x, v) - lambda(kDisc, x, v);
    ASSERT_GE(gap, -1e-12);
    ASSERT_LT(gap, delta);
  }
  // P contains C: every boundary point of the disc is in P
  for (int j = 0; j < 360; ++j) {
    const double th = j * std::numbers::pi / 180;
    EXPECT_TRUE(a.polytope.contains(vec(std::cos(th), std::sin(th))));
  }
}

TEST(ApproximationTest, TangentRaysStayBelowDelta) {
  const L2Ball disc{vec(0, 0), 1.0};
  const double delta = 1e-3;
  auto a = approximate_by_polytope(disc, delta, vec(1, 0));
  // r tan(pi / k) < delta first holds at k = 4096 on the doubling ladder
  EXPECT_EQ(a.k, 4096u);
  ASSERT_EQ(a.history.size(), 10u);
  EXPECT_EQ(a.history.front().first, 8u);
  const ConvexBody p = ConvexBody::polytope(a.polytope);
  double worst = 0;
  for (int j = 0; j < 3600; ++j) {
    const double th = j * std::numbers::pi / 1800;
    const Vec x = vec(std::cos(th), std::sin(th)) * (1 - 1e-12);
    const Vec v = vec(-std::sin(th), std::cos(th));
    worst = std::max(worst, lambda(p, x, v) - lambda(kDisc, x, v));
  }
  EXPECT_LT(worst, delta);
  EXPECT_GT(worst, delta / 4);
}

TEST(SemicontinuityTest, Examples) {
  std::vector<Vec> constant(20, vec(0.2, 0.1));
  auto c = semicontinuity_probe(kDisc, constant, vec(0.2, 0.1), vec(1, 0));
  EXPECT_TRUE(c.passed);
  EXPECT_EQ(c.final_gap, 0.0);

  // along the bottom edge of the square towards the vertex (1, -1), v pointing inward
  std::vector<Vec> edge;
  for (int n = 0; n <= 60; ++n) edge.push_back(vec(1 - std::ldexp(1.0, -n), -1));
  auto e = semicontinuity_probe(kSquare, edge, vec(1, -1), vec(-1, 1));
  EXPECT_TRUE(e.passed);
  EXPECT_TRUE(e.continuous);
  EXPECT_NEAR(e.lambda_limit, 2.0, 1e-12);
  // closed form: lambda((1 - h, -1), (-1, 1)) = 2 - h
  for (const auto& row : e.rows) EXPECT_NEAR(row.lhs, 2.0 - (1 - edge[row.sample][0]), 1e-12);

  std::vector<Vec> radial;
  for (int n = 0; n <= 60; ++n) radial.push_back(vec(1 - std::ldexp(1.0, -n), 0));
  auto r = semicontinuity_probe(kDisc, radial, vec(1, 0), vec(0, 1));
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.lambda_limit, 0.0, 1e-12);
  EXPECT_LT(r.rows.back().lhs, 1e-6);
}

TEST(MidpointLemmaTest, RandomConfigurations) {
  auto rep = midpoint_lemma_harness(100, 64, 50, 5);
  EXPECT_TRUE(rep.passed());
  EXPECT_LT(rep.max_index, rep.sequence_length);
  EXPECT_EQ(rep.configs, 100u);
}

}  // namespace
}  // namespace advcalc::gauge
