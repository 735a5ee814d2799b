#include <gtest/gtest.h>

#include <random>

#include "advcalc/errors.hpp"
#include "advcalc/geometry.hpp"
#include "oracles.hpp"

namespace advcalc {
namespace {

Rational q(const char* s) { return parse_rational(s); }

IntervalSet iset(std::initializer_list<std::pair<const char*, const char*>> raw) {
  std::vector<std::pair<Rational, Rational>> v;
  for (const auto& [lo, hi] : raw) v.emplace_back(q(lo), q(hi));
  return IntervalSet::closed(v);
}

TEST(RationalTest, ParsesFractionsAndDecimals) {
  EXPECT_EQ(q("3/2"), Rational(3, 2));
  EXPECT_EQ(q("-6/4"), Rational(-3, 2));
  EXPECT_EQ(q("0.25"), Rational(1, 4));
  EXPECT_EQ(q("-1.5e-1"), Rational(-3, 20));
  EXPECT_EQ(q("7"), Rational(7));
  EXPECT_EQ(q("010/08"), Rational(5, 4));
  EXPECT_EQ(q("0.0625"), Rational(1, 16));
  EXPECT_EQ(to_string(Rational(3, 2)), "3/2");
  EXPECT_THROW(q("1/0"), ParseError);
  EXPECT_THROW(q("abc"), ParseError);
  EXPECT_THROW(q(""), ParseError);
}

TEST(RationalTest, ExactSqrt) {
  Rational r;
  EXPECT_TRUE(exact_sqrt(Rational(9, 4), &r));
  EXPECT_EQ(r, Rational(3, 2));
  EXPECT_FALSE(exact_sqrt(Rational(2), &r));
}

TEST(NormTest, BallMembershipExamples) {
  EXPECT_TRUE(ball_membership(Point{0, 0}, 1, Norm::l2(2), Point{1, 0}));
  EXPECT_FALSE(ball_membership(Point{0, 0}, 2, Norm::l1(2), Point{1, 2}));
  EXPECT_TRUE(ball_membership(Point{1, 1}, q("1/2"), Norm::linf(2), Point{q("3/2"), q("5/4")}));
  EXPECT_THROW(ball_membership(Point{0}, 1, Norm::l2(2), Point{1, 0}), DimensionMismatch);
}

TEST(NormTest, BallIsSymmetricAndMonotone) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coord(-20, 20);
  std::vector<Norm> norms{Norm::l1(2), Norm::l2(2), Norm::linf(2), Norm::weighted_linf({q("1"), q("3/2")}),
                          Norm::polytope_gauge({{q("1"), q("0")}, {q("0"), q("1")}, {q("1"), q("1")}})};
  for (int i = 0; i < 500; ++i) {
    std::vector<Rational> v{Rational(coord(rng), 4), Rational(coord(rng), 4)};
    std::vector<Rational> neg{-v[0], -v[1]};
    Rational e1(std::abs(coord(rng)), 3), e2 = e1 + Rational(std::abs(coord(rng)), 5);
    for (const auto& n : norms) {
      EXPECT_EQ(n.within(v, e1), n.within(neg, e1));
      if (n.within(v, e1)) EXPECT_TRUE(n.within(v, e2));
    }
  }
  for (const auto& n : norms) {
    std::vector<Rational> zero{0, 0}, unit{1, 0};
    EXPECT_TRUE(n.within(zero, 0));
    EXPECT_FALSE(n.within(unit, 0));
  }
}

TEST(NormTest, PolytopeGaugeExtentAndValidation) {
  // |x| <= 1, |x + y| <= 1  ->  |y| <= 2 at the vertex (-1, 2)
  auto n = Norm::polytope_gauge({{q("1"), q("0")}, {q("1"), q("1")}});
  EXPECT_EQ(n.axis_extent(0, 1), Rational(1));
  EXPECT_EQ(n.axis_extent(1, 1), Rational(2));
  EXPECT_THROW(Norm::polytope_gauge({{q("1"), q("1")}, {q("2"), q("2")}}), Error);
  EXPECT_EQ(parse_norm(n.tag(), 2), n);
  EXPECT_EQ(parse_norm("wlinf:1,2", 2), Norm::weighted_linf({1, 2}));
  EXPECT_THROW(parse_norm("l7", 2), ParseError);
}

TEST(IntervalSetTest, CanonicalizeExamples) {
  EXPECT_EQ(iset({{"0", "1"}, {"1", "2"}}), iset({{"0", "2"}}));
  EXPECT_EQ(iset({{"3", "4"}, {"0", "1"}}).intervals(), iset({{"0", "1"}, {"3", "4"}}).intervals());
  EXPECT_EQ(iset({{"0", "2"}, {"1", "3"}}), iset({{"0", "3"}}));
  EXPECT_THROW(iset({{"2", "1"}}), Error);
  EXPECT_THROW(canonicalize({Interval::closed(2, 1)}), Error);
}

TEST(IntervalSetTest, OpenEndpointsMergeOnlyThroughContainedPoints) {
  auto a = IntervalSet::from_intervals({{0, 1, true, false}, {1, 2, false, true}});
  EXPECT_EQ(a.size(), 2u);
  EXPECT_FALSE(a.contains(1));
  auto b = IntervalSet::from_intervals({{0, 1, true, false}, {1, 2, true, true}});
  EXPECT_EQ(b, iset({{"0", "2"}}));
  EXPECT_TRUE(IntervalSet::from_intervals({{1, 1, true, false}}).empty());
}

TEST(IntervalSetTest, CanonicalFormIsIdempotent) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto a = oracle::random_interval_set(rng, 8);
    EXPECT_EQ(canonicalize(a.intervals()), a);
    auto shuffled = a.intervals();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(canonicalize(shuffled), a);
  }
}

TEST(IntervalSetTest, SetAlgebraExamples) {
  EXPECT_EQ(set_union(iset({{"0", "1"}}), iset({{"2", "3"}})), iset({{"0", "1"}, {"2", "3"}}));
  auto c = complement(iset({{"0", "1"}}), Interval::closed(-2, 2));
  EXPECT_EQ(c, IntervalSet::from_intervals({{-2, 0, true, false}, {1, 2, false, true}}));
  EXPECT_TRUE(closure_equal(c, iset({{"-2", "0"}, {"1", "2"}})));
  auto a = iset({{"0", "1"}, {"5/2", "3"}});
  EXPECT_TRUE(symmetric_difference(a, a).empty());
  EXPECT_EQ(difference(iset({{"0", "3"}}), iset({{"1", "2"}})),
            IntervalSet::from_intervals({{0, 1, true, false}, {2, 3, false, true}}));
}

TEST(IntervalSetTest, AlgebraMatchesPointwiseOracle) {
  std::mt19937_64 rng(5);
  const Interval domain = Interval::closed(-10, 10);
  for (int i = 0; i < 300; ++i) {
    auto a = oracle::random_interval_set(rng, 6);
    auto b = oracle::random_interval_set(rng, 6);
    auto u = set_union(a, b), n = intersection(a, b), d = difference(a, b), s = symmetric_difference(a, b);
    auto ca = complement(a, domain);
    for (const auto& x : oracle::probes({a, b}, {Rational(1, 12)})) {
      bool ia = oracle::in_set(a, x), ib = oracle::in_set(b, x);
      ASSERT_EQ(u.contains(x), ia || ib);
      ASSERT_EQ(n.contains(x), ia && ib);
      ASSERT_EQ(d.contains(x), ia && !ib);
      ASSERT_EQ(s.contains(x), ia != ib);
      ASSERT_EQ(ca.contains(x), domain.contains(x) && !ia);
    }
    // De Morgan inside the domain
    EXPECT_EQ(complement(u, domain), intersection(complement(a, domain), complement(b, domain)));
    EXPECT_EQ(is_subset(n, a), true);
  }
}

TEST(GridSetTest, SetOpsAndEquality) {
  Lattice lat = Lattice::unit(2);
  auto a = GridSet::from_cells(lat, {{0, 0}, {1, 0}});
  auto b = GridSet::from_cells(lat, {{1, 0}, {5, 5}});
  EXPECT_EQ(set_union(a, b).count(), 3u);
  EXPECT_EQ(intersection(a, b), GridSet::from_cells(lat, {{1, 0}}));
  EXPECT_EQ(difference(a, b), GridSet::from_cells(lat, {{0, 0}}));
  EXPECT_TRUE(symmetric_difference(a, a).empty());
  EXPECT_EQ(a.reboxed(GridBox{{-3, -3}, {10, 10}}), a);
  auto c = complement(a, GridBox{{0, 0}, {2, 2}});
  EXPECT_EQ(c, GridSet::from_cells(lat, {{0, 1}, {1, 1}}));
  Lattice other{{q("1/2"), q("0")}, 1};
  EXPECT_THROW(set_union(a, GridSet::from_cells(other, {{0, 0}})), Error);
}

TEST(GridSetTest, LatticeMembership) {
  Lattice lat{{q("1/2"), q("0")}, q("1/4")};
  auto g = GridSet::from_cells(lat, {{2, 0}});
  EXPECT_TRUE(g.contains(Point{1, 0}));
  EXPECT_FALSE(g.contains(Point{q("9/8"), 0}));
  EXPECT_FALSE(lat.index_of(Point{q("9/8"), 0}).has_value());
}

TEST(DistanceTest, IntervalExamples) {
  auto a = iset({{"0", "1"}});
  const Norm abs = Norm::l1(1);
  EXPECT_EQ(distance_to_set(Point{2}, a, abs).value(), Rational(1));
  EXPECT_EQ(distance_to_set(Point{q("1/2")}, a, abs).value(), Rational(0));
  EXPECT_THROW(distance_to_set(Point{0}, IntervalSet{}, abs), Error);
  auto open = IntervalSet::from_intervals({{1, 2, false, true}});
  auto d = distance_to_set(Point{0}, open, abs);
  EXPECT_EQ(d.value(), Rational(1));
  EXPECT_FALSE(d.attained);
  EXPECT_FALSE(d.within(1));
  EXPECT_TRUE(d.within(q("1001/1000")));
}

TEST(DistanceTest, GridDiamondExample) {
  // L1 ball of radius 2 on the unit lattice, enumerated by hand
  std::vector<Index> cells;
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) {
      if (std::abs(i) + std::abs(j) <= 2) cells.push_back({i, j});
    }
  }
  auto diamond = GridSet::from_cells(Lattice::unit(2), cells);
  EXPECT_EQ(diamond.count(), 13u);
  EXPECT_EQ(distance_to_set(Point{3, 0}, diamond, Norm::l1(2)).value(), Rational(1));
  auto d2 = distance_to_set(Point{3, 1}, diamond, Norm::l2(2));
  EXPECT_TRUE(d2.squared);
  EXPECT_EQ(d2.key, Rational(2));
  EXPECT_THROW(d2.value(), Error);
}

TEST(DistanceTest, DistanceBallDuality) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> pos(-90, 90), rad(0, 36);
  const Norm abs = Norm::l2(1);
  for (int i = 0; i < 1000; ++i) {
    auto a = oracle::random_interval_set(rng, 5);
    if (a.empty()) continue;
    Rational x(pos(rng), 12), eps(rad(rng), 12);
    x.canonicalize();
    eps.canonicalize();
    bool by_distance = distance_to_set(Point{x}, a, abs).within(eps);
    // ball meets A iff some probe point of A lies in the ball
    bool by_ball = !intersection(a, IntervalSet::closed({{x - eps, x + eps}})).empty();
    ASSERT_EQ(by_distance, by_ball);
  }
}

}  // namespace
}  // namespace advcalc
