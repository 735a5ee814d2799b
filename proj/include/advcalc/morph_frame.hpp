#pragma once

#include <map>
#include <string>
#include <vector>

#include "advcalc/morphology.hpp"

namespace advcalc {

// Working window in which the eps-calculus is evaluated.
//
// A frame owns an inner window (the user's domain, or one derived from the
// inputs) and an outer window with extra margin. Sets enter the frame through
// enter(), which validates them against the context's DomainPolicy and, for a
// padded domain, extends sets that cover the domain rim into the margin so
// that they behave as unbounded. All primitive operations are then exact on
// the outer window, and leave() cuts results back to the inner window.
template <class Set>
class MorphFrame;

template <>
class MorphFrame<IntervalSet> {
 public:
  // margin_eps is the largest radius the caller will use (>= ctx.eps).
  MorphFrame(const IntervalContext& ctx, const std::vector<const IntervalSet*>& inputs,
             const std::vector<Point>& points, const Rational& margin_eps);

  IntervalSet enter(const IntervalSet& s) const;
  IntervalSet leave(const IntervalSet& s) const;

  IntervalSet dil(const IntervalSet& s, const Rational& eps) const;
  IntervalSet ero(const IntervalSet& s, const Rational& eps) const;
  IntervalSet comp(const IntervalSet& s) const;

  const Interval& inner() const { return inner_; }
  const Interval& outer() const { return outer_; }
  bool in_inner(const Point& x) const { return inner_.contains(x[0]); }

 private:
  Rational radius(const Rational& eps) const { return eps / scale_; }

  Norm norm_;
  Rational scale_;
  bool universe_ = false;
  bool padded_domain_ = false;
  Rational rim_;
  Interval inner_;
  Interval outer_;
};

template <>
class MorphFrame<GridSet> {
 public:
  MorphFrame(const GridContext& ctx, const std::vector<const GridSet*>& inputs, const std::vector<Point>& points,
             const Rational& margin_eps);

  GridSet enter(const GridSet& s) const;
  GridSet leave(const GridSet& s) const;

  GridSet dil(const GridSet& s, const Rational& eps) const;
  GridSet ero(const GridSet& s, const Rational& eps) const;
  GridSet comp(const GridSet& s) const;

  const GridBox& inner() const { return inner_; }
  const GridBox& outer() const { return outer_; }
  const Lattice& lattice() const { return lattice_; }
  bool in_inner(const Point& x) const;

  const std::vector<Index>& element(const Rational& eps) const;

 private:
  Norm norm_;
  Lattice lattice_;
  bool universe_ = false;
  bool padded_domain_ = false;
  bool trim_ = false;
  Index rim_;
  GridBox inner_;
  GridBox outer_;
  mutable std::map<std::string, std::vector<Index>> elements_;
};

}  // namespace advcalc
