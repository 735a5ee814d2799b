#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "advcalc/errors.hpp"
#include "advcalc/grid_set.hpp"
#include "advcalc/interval_set.hpp"
#include "advcalc/morphology.hpp"
#include "advcalc/point.hpp"

namespace advcalc {

// One support point with mass p and conditional label probability eta = P(Y = +1 | x).
template <class X>
struct BasicAtom {
  X x;
  Rational p;
  Rational eta;
};

// Finite labeled distribution: masses sum to one exactly, every eta lies in
// [0, 1], support points are distinct.
template <class X>
class BasicDistribution {
 public:
  using Atom = BasicAtom<X>;

  BasicDistribution() = default;

  static BasicDistribution make(std::vector<Atom> atoms) {
    Rational total = 0;
    std::vector<const X*> xs;
    for (const auto& a : atoms) {
      if (a.p <= 0) throw Error("atom mass must be positive");
      if (a.eta < 0 || a.eta > 1) throw Error("eta must lie in [0, 1]");
      total += a.p;
      xs.push_back(&a.x);
    }
    if (atoms.empty() || total != 1) throw Error("atom masses must sum to 1");
    std::sort(xs.begin(), xs.end(), [](const X* a, const X* b) { return *a < *b; });
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (*xs[i - 1] == *xs[i]) throw Error("support points must be distinct");
    }
    BasicDistribution d;
    d.atoms_ = std::move(atoms);
    return d;
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  // sum p_i min(eta_i, 1 - eta_i)
  Rational bayes_risk() const {
    Rational r = 0;
    for (const auto& a : atoms_) r += a.p * std::min(a.eta, Rational(1 - a.eta));
    return r;
  }

 private:
  std::vector<Atom> atoms_;
};

using LabeledDistribution = BasicDistribution<Point>;

// Risk given the two membership indicators per atom:
// sum p_i [(1 - eta_i) in_plus_i + eta_i in_minus_i].
template <class X, class Plus, class Minus>
Rational risk_sum(const BasicDistribution<X>& d, Plus in_plus, Minus in_minus) {
  Rational r = 0;
  for (const auto& a : d.atoms()) {
    if (in_plus(a.x)) r += a.p * (1 - a.eta);
    if (in_minus(a.x)) r += a.p * a.eta;
  }
  return r;
}

// R(A). Grid atoms must be lattice points of A's lattice.
Rational standard_risk(const IntervalSet& a, const LabeledDistribution& d);
Rational standard_risk(const GridSet& a, const LabeledDistribution& d);

// {x_i : eta_i > 1/2} as degenerate intervals or lattice cells.
IntervalSet bayes_classifier(const LabeledDistribution& d);
GridSet bayes_classifier(const LabeledDistribution& d, const Lattice& lattice);

enum class RiskMode { kMorphology, kDistance };

RiskMode parse_risk_mode(std::string_view name);

// R^eps(A). kMorphology tests atoms against A^eps and (A^C)^eps; kDistance
// tests dist(x_i, A) <= eps and dist(x_i, A^C) <= eps. Both follow the
// context's domain policy and agree exactly. A domain must contain every atom.
Rational adversarial_risk(const IntervalSet& a, const LabeledDistribution& d, const IntervalContext& ctx,
                          RiskMode mode = RiskMode::kMorphology);
Rational adversarial_risk(const GridSet& a, const LabeledDistribution& d, const GridContext& ctx,
                          RiskMode mode = RiskMode::kMorphology);

}  // namespace advcalc
