#include "advcalc/risk.hpp"

#include "advcalc/geometry.hpp"
#include "advcalc/morph_frame.hpp"

namespace advcalc {
namespace {

void require_dimension(const LabeledDistribution& d, std::size_t dim) {
  for (const auto& a : d.atoms()) {
    if (a.x.dimension() != dim) throw DimensionMismatch("atom " + a.x.to_string() + " has the wrong dimension");
  }
}

std::vector<Point> atom_points(const LabeledDistribution& d) {
  std::vector<Point> out;
  for (const auto& a : d.atoms()) out.push_back(a.x);
  return out;
}

bool grid_member(const GridSet& s, const Point& x) {
  auto k = s.lattice().index_of(x);
  if (!k) throw Error("atom " + x.to_string() + " is not a lattice point");
  return s.test(*k);
}

bool near(const IntervalSet& s, const Point& x, const Norm& n, const Rational& eps) {
  return !s.empty() && distance_to_set(x, s, n).within(eps);
}

bool near(const GridSet& s, const Point& x, const Norm& n, const Rational& eps) {
  return !s.empty() && distance_to_set(x, s, n).within(eps);
}

bool member(const IntervalSet& s, const Point& x) { return s.contains(x[0]); }
bool member(const GridSet& s, const Point& x) { return grid_member(s, x); }

template <class Set>
Rational adversarial_impl(const Set& a, const LabeledDistribution& d, const MorphContext<Set>& ctx, RiskMode mode) {
  MorphFrame<Set> frame(ctx, {&a}, atom_points(d), ctx.eps);
  const Set s = frame.enter(a);
  const Set c = frame.comp(s);
  if (mode == RiskMode::kDistance) {
    return risk_sum(
        d, [&](const Point& x) { return near(s, x, ctx.norm, ctx.eps); },
        [&](const Point& x) { return near(c, x, ctx.norm, ctx.eps); });
  }
  const Set plus = frame.dil(s, ctx.eps);
  const Set minus = frame.dil(c, ctx.eps);
  return risk_sum(
      d, [&](const Point& x) { return member(plus, x); }, [&](const Point& x) { return member(minus, x); });
}

}  // namespace

Rational standard_risk(const IntervalSet& a, const LabeledDistribution& d) {
  require_dimension(d, 1);
  return risk_sum(
      d, [&](const Point& x) { return a.contains(x[0]); }, [&](const Point& x) { return !a.contains(x[0]); });
}

Rational standard_risk(const GridSet& a, const LabeledDistribution& d) {
  require_dimension(d, a.dimension());
  return risk_sum(
      d, [&](const Point& x) { return grid_member(a, x); }, [&](const Point& x) { return !grid_member(a, x); });
}

IntervalSet bayes_classifier(const LabeledDistribution& d) {
  require_dimension(d, 1);
  std::vector<Interval> pts;
  for (const auto& a : d.atoms()) {
    if (a.eta * 2 > 1) pts.push_back(Interval::closed(a.x[0], a.x[0]));
  }
  return IntervalSet::from_intervals(std::move(pts));
}

GridSet bayes_classifier(const LabeledDistribution& d, const Lattice& lattice) {
  require_dimension(d, lattice.dimension());
  std::vector<Index> cells;
  for (const auto& a : d.atoms()) {
    auto k = lattice.index_of(a.x);
    if (!k) throw Error("atom " + a.x.to_string() + " is not a lattice point");
    if (a.eta * 2 > 1) cells.push_back(*k);
  }
  return GridSet::from_cells(lattice, cells);
}

RiskMode parse_risk_mode(std::string_view name) {
  if (name == "morphology") return RiskMode::kMorphology;
  if (name == "distance") return RiskMode::kDistance;
  throw ParseError("unknown risk mode '" + std::string(name) + "'");
}

Rational adversarial_risk(const IntervalSet& a, const LabeledDistribution& d, const IntervalContext& ctx,
                          RiskMode mode) {
  require_dimension(d, 1);
  return adversarial_impl(a, d, ctx, mode);
}

Rational adversarial_risk(const GridSet& a, const LabeledDistribution& d, const GridContext& ctx, RiskMode mode) {
  require_dimension(d, a.dimension());
  return adversarial_impl(a, d, ctx, mode);
}

}  // namespace advcalc
