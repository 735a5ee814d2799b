#pragma once

#include "advcalc/grid_set.hpp"
#include "advcalc/interval_set.hpp"
#include "advcalc/norm.hpp"
#include "advcalc/point.hpp"

namespace advcalc {

// true iff ||x - c|| <= eps, exactly.
bool ball_membership(const Point& c, const Rational& eps, const Norm& norm, const Point& x);

// Exact distance from a point to a set.
//
// key holds the distance, or its square for the L2 norm in dimension > 1.
// attained is false when the infimum is only approached (open endpoints), in
// which case the closed ball of radius key does not meet the set.
struct SetDistance {
  Rational key;
  bool squared = false;
  bool attained = true;

  // Exact distance; throws Error if it is irrational.
  Rational value() const;
  double approx() const;
  // The closed eps-ball around the point meets the set.
  bool within(const Rational& eps) const;
};

SetDistance distance_to_set(const Point& x, const IntervalSet& a, const Norm& norm);
SetDistance distance_to_set(const Point& x, const GridSet& a, const Norm& norm);

}  // namespace advcalc
