#pragma once

#include <optional>
#include <string>
#include <vector>

#include "advcalc/rational.hpp"

namespace advcalc {

// One interval of the real line with exact endpoints. Each end is closed or
// open independently; a degenerate interval [a, a] must be closed at both ends.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, true}; }

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(const Rational& x) const;
  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// A finite union of intervals in canonical form: sorted, pairwise disjoint,
// and no two neighbours share a boundary point that either of them contains
// (so [0,1] and (1,2] are merged while [0,1) and (1,2] stay apart). The
// canonical form is unique per point set, so operator== is set equality.
class IntervalSet {
 public:
  using Domain = Interval;

  IntervalSet() = default;

  // Throws Error when some lo > hi. Degenerate non-closed intervals are dropped.
  static IntervalSet from_intervals(std::vector<Interval> raw);
  static IntervalSet closed(const std::vector<std::pair<Rational, Rational>>& raw);
  static IntervalSet point(const Rational& x) { return closed({{x, x}}); }

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  bool contains(const Rational& x) const;

  // Smallest closed interval containing the set.
  std::optional<Interval> hull() const;

  IntervalSet closure() const;
  bool is_closed() const;

  // Lebesgue measure.
  Rational length() const;

  // Some point of the set: the first closed endpoint, else a midpoint.
  std::optional<Rational> any_point() const;

  std::string to_string() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

// Raw canonicalization entry point; same contract as from_intervals.
IntervalSet canonicalize(std::vector<Interval> raw);

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersection(const IntervalSet& a, const IntervalSet& b);
IntervalSet difference(const IntervalSet& a, const IntervalSet& b);
IntervalSet symmetric_difference(const IntervalSet& a, const IntervalSet& b);
IntervalSet complement(const IntervalSet& a, const Interval& domain);
bool is_subset(const IntervalSet& a, const IntervalSet& b);

// Equality of closures: the finite stand-in for equality up to null sets.
bool closure_equal(const IntervalSet& a, const IntervalSet& b);

// Every point of a within distance r (absolute value metric).
IntervalSet minkowski_dilate(const IntervalSet& a, const Rational& r);

}  // namespace advcalc
