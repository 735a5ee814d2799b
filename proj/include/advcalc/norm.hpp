#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "advcalc/rational.hpp"

namespace advcalc {

enum class NormKind { kL1, kL2, kLInf, kWeightedLInf, kPolytopeGauge };

// A norm on R^d with exact rational evaluation.
//
// WeightedLInf is ||x|| = max_i w_i |x_i| with w_i > 0. PolytopeGauge is
// ||x|| = max_i |a_i . x| for rational rows a_i spanning R^d; its unit ball
// is a centrally symmetric polytope. L2 has no rational value in general, so
// comparisons go through key() which is the squared norm for L2 and the norm
// itself otherwise.
class Norm {
 public:
  static Norm l1(std::size_t dim);
  static Norm l2(std::size_t dim);
  static Norm linf(std::size_t dim);
  static Norm weighted_linf(std::vector<Rational> weights);
  static Norm polytope_gauge(std::vector<std::vector<Rational>> rows);

  NormKind kind() const { return kind_; }
  std::size_t dimension() const { return dim_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  Rational key(std::span<const Rational> v) const;
  Rational radius_key(const Rational& eps) const;
  bool within(std::span<const Rational> v, const Rational& eps) const {
    return key(v) <= radius_key(eps);
  }
  bool key_is_squared() const { return kind_ == NormKind::kL2; }

  double value(std::span<const double> v) const;

  // Every norm on R is s|x|; returns s.
  Rational scale_1d() const;

  // max |v_axis| over the closed ball of radius r.
  Rational axis_extent(std::size_t axis, const Rational& r) const;

  // Short tag: l1, l2, linf, wlinf:w1,w2,..., poly:a11,a12;a21,a22;...
  std::string tag() const;

  // Same norm, different dimension (only for L1/L2/LInf).
  Norm with_dimension(std::size_t dim) const;

  friend bool operator==(const Norm&, const Norm&) = default;

 private:
  Norm(NormKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  NormKind kind_;
  std::size_t dim_;
  std::vector<Rational> weights_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> poly_extent_;  // per-axis extent of the unit ball
};

// Parses a tag produced by Norm::tag(); dim is used for l1/l2/linf.
Norm parse_norm(std::string_view tag, std::size_t dim);

}  // namespace advcalc
