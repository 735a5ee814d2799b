#include <gtest/gtest.h>

#include <random>

#include "advcalc/errors.hpp"
#include "advcalc/risk.hpp"
#include "oracles.hpp"

namespace advcalc {
namespace {

Rational q(const char* s) { return parse_rational(s); }

IntervalSet iset(std::initializer_list<std::pair<const char*, const char*>> raw) {
  std::vector<std::pair<Rational, Rational>> v;
  for (const auto& [lo, hi] : raw) v.emplace_back(q(lo), q(hi));
  return IntervalSet::closed(v);
}

LabeledDistribution two_atoms() {
  return LabeledDistribution::make({{Point{0}, q("1/2"), 1}, {Point{1}, q("1/2"), 0}});
}

IntervalContext ctx1(const char* eps) { return {Norm::l1(1), q(eps), std::nullopt}; }

TEST(DistributionTest, Validation) {
  EXPECT_THROW(LabeledDistribution::make({{Point{0}, q("1/2"), 1}}), Error);
  EXPECT_THROW(LabeledDistribution::make({{Point{0}, 1, q("3/2")}}), Error);
  EXPECT_THROW(LabeledDistribution::make({{Point{0}, q("1/2"), 1}, {Point{0}, q("1/2"), 0}}), Error);
  EXPECT_THROW(LabeledDistribution::make({{Point{0}, 0, 1}, {Point{1}, 1, 0}}), Error);
  EXPECT_THROW(LabeledDistribution::make({}), Error);
  EXPECT_EQ(two_atoms().size(), 2u);
}

TEST(StandardRiskTest, Examples) {
  auto d = two_atoms();
  EXPECT_EQ(standard_risk(IntervalSet{}, d), q("1/2"));
  EXPECT_EQ(standard_risk(iset({{"-1/4", "1/4"}}), d), 0);
  EXPECT_EQ(standard_risk(iset({{"-5", "5"}}), d), q("1/2"));
  auto g = GridSet::from_cells(Lattice::unit(1), {{0}});
  EXPECT_EQ(standard_risk(g, d), 0);
  EXPECT_THROW(standard_risk(g, LabeledDistribution::make({{Point{q("1/2")}, 1, 1}})), Error);
}

TEST(BayesClassifierTest, Examples) {
  EXPECT_EQ(bayes_classifier(two_atoms()), IntervalSet::point(0));
  auto ties = LabeledDistribution::make({{Point{0}, q("1/2"), q("1/2")}, {Point{1}, q("1/2"), q("1/2")}});
  EXPECT_TRUE(bayes_classifier(ties).empty());
  auto three = LabeledDistribution::make(
      {{Point{0}, q("1/3"), q("3/4")}, {Point{1}, q("1/3"), q("1/4")}, {Point{2}, q("1/3"), q("9/10")}});
  auto b = bayes_classifier(three);
  EXPECT_EQ(b, IntervalSet::from_intervals({Interval::closed(0, 0), Interval::closed(2, 2)}));
  // 1/12 + 1/12 + 1/30
  EXPECT_EQ(standard_risk(b, three), q("1/5"));
  EXPECT_EQ(three.bayes_risk(), q("1/5"));
  auto g = bayes_classifier(three, Lattice::unit(1));
  EXPECT_EQ(g, GridSet::from_cells(Lattice::unit(1), {{0}, {2}}));
  EXPECT_EQ(standard_risk(g, three), q("1/5"));
}

TEST(AdversarialRiskTest, Examples) {
  auto d = two_atoms();
  for (auto mode : {RiskMode::kMorphology, RiskMode::kDistance}) {
    EXPECT_EQ(adversarial_risk(iset({{"-10", "1/2"}}), d, ctx1("3/5"), mode), 1);
    EXPECT_EQ(adversarial_risk(iset({{"-10", "10"}}), d, ctx1("3/5"), mode), q("1/2"));
    IntervalContext universe{Norm::l1(1), q("3/5"), Interval::closed(-1, 2), DomainPolicy::kUniverse};
    EXPECT_EQ(adversarial_risk(iset({{"-1", "2"}}), d, universe, mode), q("1/2"));
    EXPECT_EQ(adversarial_risk(IntervalSet{}, d, universe, mode), q("1/2"));
  }
  EXPECT_EQ(parse_risk_mode("distance"), RiskMode::kDistance);
  EXPECT_THROW(parse_risk_mode("fast"), ParseError);
}

TEST(AdversarialRiskTest, AtomOutsideDomain) {
  IntervalContext c{Norm::l1(1), q("1/2"), Interval::closed(2, 4), DomainPolicy::kUniverse};
  EXPECT_THROW(adversarial_risk(iset({{"2", "3"}}), two_atoms(), c), DomainError);
}

TEST(AdversarialRiskTest, ZeroRadiusIsStandardRisk) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> pos(-72, 72), atoms(1, 10);
  for (int i = 0; i < 200; ++i) {
    auto a = oracle::random_interval_set(rng, 5);
    std::set<Rational> xs;
    int n = atoms(rng);
    while (static_cast<int>(xs.size()) < n) xs.insert(Rational(pos(rng), 12));
    std::vector<Point> support;
    for (auto x : xs) {
      x.canonicalize();
      support.push_back(Point{x});
    }
    auto d = oracle::random_distribution(rng, support);
    ASSERT_EQ(adversarial_risk(a, d, ctx1("0")), standard_risk(a, d));
    ASSERT_EQ(adversarial_risk(a, d, ctx1("0"), RiskMode::kDistance), standard_risk(a, d));
  }
}

class RiskProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{77};

  LabeledDistribution random_1d() {
    std::uniform_int_distribution<int> pos(-84, 84), atoms(1, 10);
    std::set<Rational> xs;
    int n = atoms(rng);
    while (static_cast<int>(xs.size()) < n) xs.insert(Rational(pos(rng), 12));
    std::vector<Point> support;
    for (auto x : xs) {
      x.canonicalize();
      support.push_back(Point{x});
    }
    return oracle::random_distribution(rng, support);
  }

  Rational random_eps() {
    Rational e(std::uniform_int_distribution<int>(0, 18)(rng), 12);
    e.canonicalize();
    return e;
  }
};

TEST_F(RiskProperties, IntervalInequalities) {
  for (int i = 0; i < 500; ++i) {
    auto a = oracle::random_interval_set(rng, 6);
    auto d = random_1d();
    IntervalContext c{Norm::l2(1), random_eps(), std::nullopt};
    IntervalContext wider{c.norm, c.eps + random_eps(), std::nullopt};
    const Rational r = adversarial_risk(a, d, c);
    ASSERT_EQ(r, oracle::interval_adversarial_risk(a, d, c.eps));
    ASSERT_EQ(r, adversarial_risk(a, d, c, RiskMode::kDistance));
    ASSERT_GE(r, standard_risk(a, d));
    ASSERT_GE(standard_risk(a, d), d.bayes_risk());
    ASSERT_LE(r, adversarial_risk(a, d, wider));
    ASSERT_LE(adversarial_risk(closing(a, c), d, c), r);
    ASSERT_LE(adversarial_risk(opening(a, c), d, c), r);
    ASSERT_LE(adversarial_risk(mollify(a, c), d, c), r);
  }
}

TEST_F(RiskProperties, UniverseDomainInequalities) {
  const Interval dom = Interval::closed(-7, 8);
  for (int i = 0; i < 300; ++i) {
    auto a = intersection(oracle::random_interval_set(rng, 6), IntervalSet::closed({{dom.lo, dom.hi}}));
    auto d = random_1d();
    IntervalContext c{Norm::l1(1), random_eps(), dom, DomainPolicy::kUniverse};
    const Rational r = adversarial_risk(a, d, c);
    ASSERT_EQ(r, adversarial_risk(a, d, c, RiskMode::kDistance));
    ASSERT_LE(adversarial_risk(closing(a, c), d, c), r);
    ASSERT_LE(adversarial_risk(opening(a, c), d, c), r);
    ASSERT_LE(adversarial_risk(mollify(a, c), d, c), r);
  }
}

TEST_F(RiskProperties, GridInequalities) {
  const std::vector<Norm> norms{Norm::l1(2), Norm::l2(2), Norm::linf(2)};
  Lattice lat = Lattice::unit(2);
  std::uniform_int_distribution<int> coord(0, 9), atoms(1, 10), rad(0, 3);
  for (int i = 0; i < 300; ++i) {
    const Norm& n = norms[i % 3];
    auto a = oracle::random_grid(rng, lat, 10, 10, 0.5);
    std::set<Point> xs;
    int k = atoms(rng);
    while (static_cast<int>(xs.size()) < k) xs.insert(Point{coord(rng), coord(rng)});
    auto d = oracle::random_distribution(rng, {xs.begin(), xs.end()});
    Rational e = rad(rng);
    GridContext c{n, e, std::nullopt};
    GridContext wider{n, e + 1, std::nullopt};
    const Rational r = adversarial_risk(a, d, c);
    auto ball = oracle::lattice_ball(n, 1, e, static_cast<std::int64_t>(e.get_d()));
    ASSERT_EQ(r, oracle::grid_adversarial_risk(a, d, ball));
    ASSERT_EQ(r, adversarial_risk(a, d, c, RiskMode::kDistance));
    ASSERT_EQ(adversarial_risk(a, d, GridContext{n, 0, std::nullopt}), standard_risk(a, d));
    ASSERT_LE(r, adversarial_risk(a, d, wider));
    ASSERT_LE(adversarial_risk(closing(a, c), d, c), r);
    ASSERT_LE(adversarial_risk(opening(a, c), d, c), r);
    ASSERT_LE(adversarial_risk(mollify(a, c), d, c), r);
  }
}

}  // namespace
}  // namespace advcalc
