#include "advcalc/geometry.hpp"

#include <cmath>

#include "advcalc/errors.hpp"

namespace advcalc {

bool ball_membership(const Point& c, const Rational& eps, const Norm& norm, const Point& x) {
  if (c.dimension() != norm.dimension() || x.dimension() != norm.dimension()) {
    throw DimensionMismatch("ball_membership: dimensions disagree");
  }
  return norm.within(difference(x, c), eps);
}

Rational SetDistance::value() const {
  if (!squared) return key;
  Rational root;
  if (!exact_sqrt(key, &root)) throw Error("distance sqrt(" + key.get_str() + ") is irrational");
  return root;
}

double SetDistance::approx() const { return squared ? std::sqrt(key.get_d()) : key.get_d(); }

bool SetDistance::within(const Rational& eps) const {
  if (eps < 0) return false;
  Rational bound = squared ? Rational(eps * eps) : eps;
  return key < bound || (key == bound && attained);
}

SetDistance distance_to_set(const Point& x, const IntervalSet& a, const Norm& norm) {
  if (x.dimension() != 1 || norm.dimension() != 1) throw DimensionMismatch("interval sets live in dimension 1");
  if (a.empty()) throw Error("empty set has no distance");
  SetDistance best;
  bool have = false;
  auto offer = [&](const Rational& gap, bool attained) {
    std::vector<Rational> v{gap};
    Rational key = norm.key(v);
    if (!have || key < best.key) {
      best = {key, norm.key_is_squared(), attained};
      have = true;
    } else if (key == best.key) {
      best.attained = best.attained || attained;
    }
  };
  const Rational& p = x[0];
  for (const auto& iv : a.intervals()) {
    if (iv.contains(p)) return {Rational(0), norm.key_is_squared(), true};
    if (p <= iv.lo) {
      offer(iv.lo - p, iv.lo_closed);
    } else if (p >= iv.hi) {
      offer(p - iv.hi, iv.hi_closed);
    }
  }
  return best;
}

SetDistance distance_to_set(const Point& x, const GridSet& a, const Norm& norm) {
  if (x.dimension() != a.dimension() || norm.dimension() != a.dimension()) {
    throw DimensionMismatch("distance_to_set: dimensions disagree");
  }
  if (a.empty()) throw Error("empty set has no distance");
  SetDistance best{Rational(0), norm.key_is_squared(), true};
  bool have = false;
  for (const auto& k : a.cells()) {
    Rational key = norm.key(difference(x, a.lattice().point_at(k)));
    if (!have || key < best.key) {
      best.key = key;
      have = true;
    }
  }
  return best;
}

}  // namespace advcalc
