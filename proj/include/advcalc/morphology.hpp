#pragma once

#include <optional>
#include <string>
#include <vector>

#include "advcalc/geometry.hpp"
#include "advcalc/grid_set.hpp"
#include "advcalc/interval_set.hpp"
#include "advcalc/norm.hpp"

namespace advcalc {

// How a MorphContext's domain is interpreted.
//
// kPadded: the domain is a finite window onto R^d (or Z^d). Every input must
//   look the same on a rim of width 2*eps along the window border (entirely
//   inside or entirely outside the set), which lets complements such as A^C
//   be treated as unbounded. Violations raise DomainError("domain overflow").
// kUniverse: the domain is the whole space. Complements are taken inside it
//   and dilations are clipped to it; nothing lies outside.
//
// Without a domain, inputs are bounded sets in R^d and a window is derived
// from their hull.
enum class DomainPolicy { kPadded, kUniverse };

template <class Set>
struct MorphContext {
  Norm norm;
  Rational eps;
  std::optional<typename Set::Domain> domain;
  DomainPolicy policy = DomainPolicy::kPadded;
};

using IntervalContext = MorphContext<IntervalSet>;
using GridContext = MorphContext<GridSet>;

enum class MorphOp { kDilate, kErode, kOpen, kClose, kFringe, kMollify };
MorphOp parse_morph_op(std::string_view name);
std::string_view to_string(MorphOp op);

// A^eps, the union of closed eps-balls centred in A.
IntervalSet dilate(const IntervalSet& a, const IntervalContext& ctx);
GridSet dilate(const GridSet& a, const GridContext& ctx);

// A^-eps = ((A^C)^eps)^C, the points whose closed eps-ball stays in A.
IntervalSet erode(const IntervalSet& a, const IntervalContext& ctx);
GridSet erode(const GridSet& a, const GridContext& ctx);

// (A^-eps)^eps
IntervalSet opening(const IntervalSet& a, const IntervalContext& ctx);
GridSet opening(const GridSet& a, const GridContext& ctx);

// (A^eps)^-eps
IntervalSet closing(const IntervalSet& a, const IntervalContext& ctx);
GridSet closing(const GridSet& a, const GridContext& ctx);

// F(A) = A \ (A^-eps)^eps: points every closed eps-ball through which leaves A.
IntervalSet fringe(const IntervalSet& a, const IntervalContext& ctx);
GridSet fringe(const GridSet& a, const GridContext& ctx);

// ((A^-eps)^2eps)^-eps, evaluated as four single-eps passes.
IntervalSet mollify(const IntervalSet& a, const IntervalContext& ctx);
GridSet mollify(const GridSet& a, const GridContext& ctx);

IntervalSet apply(MorphOp op, const IntervalSet& a, const IntervalContext& ctx);
GridSet apply(MorphOp op, const GridSet& a, const GridContext& ctx);

// Complement relative to the context: the domain when one is given, otherwise
// a window around the set wide enough for eps-morphology of A^C.
IntervalSet complement(const IntervalSet& a, const IntervalContext& ctx);
GridSet complement(const GridSet& a, const GridContext& ctx);

// F(A^C), with A^C treated as in complement(a, ctx).
IntervalSet complement_fringe(const IntervalSet& a, const IntervalContext& ctx);
GridSet complement_fringe(const GridSet& a, const GridContext& ctx);

struct CompositionCheck {
  bool dilation_holds = false;  // (A^e1)^e2 == A^(e1+e2)
  bool erosion_holds = false;   // (A^-e1)^-e2 == A^-(e1+e2)
  bool holds() const { return dilation_holds && erosion_holds; }
};

// Exact for interval sets. For grids only L1/LInf with radii that are whole
// multiples of the cell size are accepted; other combinations throw
// Error("composition not exact on this lattice").
CompositionCheck compose_radii_check(const IntervalSet& a, const Norm& norm, const Rational& eps1,
                                     const Rational& eps2);
CompositionCheck compose_radii_check(const GridSet& a, const Norm& norm, const Rational& eps1,
                                     const Rational& eps2);

// Offsets of the lattice ball of radius eps1+eps2 missing from the sum of the
// balls of radius eps1 and eps2 (empty when composition is exact).
std::vector<Index> radius_composition_witnesses(const Norm& norm, const Rational& cell, const Rational& eps1,
                                                const Rational& eps2);

struct RobustnessReport {
  bool robust = false;
  bool fringe_empty = false;
  bool complement_fringe_empty = false;
  std::optional<Point> witness;  // a point of the nonempty fringe
};

// F(A) and F(A^C) both empty.
RobustnessReport is_pseudo_certifiably_robust(const IntervalSet& a, const IntervalContext& ctx);
RobustnessReport is_pseudo_certifiably_robust(const GridSet& a, const GridContext& ctx);

// x in A^-eps when x in A, else x in (A^C)^-eps.
bool is_certifiably_robust_at(const IntervalSet& a, const IntervalContext& ctx, const Point& x);
bool is_certifiably_robust_at(const GridSet& a, const GridContext& ctx, const Point& x);

template <class Set>
struct IdentityCheck {
  std::string name;
  bool holds = false;
  Set lhs;
  Set rhs;
  Set witness;  // points where the relation fails
};

template <class Set>
struct FamilyReport {
  std::vector<IdentityCheck<Set>> checks;
  bool all_hold() const {
    for (const auto& c : checks) {
      if (!c.holds) return false;
    }
    return true;
  }
};

// The four relations for a finite family: (uA_i)^e = uA_i^e and
// (nA_i)^-e = nA_i^-e (equalities), (nA_i)^e c nA_i^e and
// uA_i^-e c (uA_i)^-e (containments). Family size must be in [1, 8].
FamilyReport<IntervalSet> finite_family_identities(const std::vector<IntervalSet>& sets,
                                                   const IntervalContext& ctx);
FamilyReport<GridSet> finite_family_identities(const std::vector<GridSet>& sets, const GridContext& ctx);

// B_n = union of A_k for k >= n.
std::vector<IntervalSet> tail_unions(const std::vector<IntervalSet>& seq);
std::vector<GridSet> tail_unions(const std::vector<GridSet>& seq);

}  // namespace advcalc
