#include "advcalc/morphology.hpp"

#include <algorithm>
#include <set>

#include "advcalc/errors.hpp"
#include "advcalc/morph_frame.hpp"

namespace advcalc {
namespace {

template <class Set>
Set run(MorphOp op, const Set& a, const MorphContext<Set>& ctx) {
  MorphFrame<Set> frame(ctx, {&a}, {}, ctx.eps);
  const Rational& e = ctx.eps;
  Set s = frame.enter(a);
  Set out;
  switch (op) {
    case MorphOp::kDilate:
      out = frame.dil(s, e);
      break;
    case MorphOp::kErode:
      out = frame.ero(s, e);
      break;
    case MorphOp::kOpen:
      out = frame.dil(frame.ero(s, e), e);
      break;
    case MorphOp::kClose:
      out = frame.ero(frame.dil(s, e), e);
      break;
    case MorphOp::kFringe:
      out = difference(s, frame.dil(frame.ero(s, e), e));
      break;
    case MorphOp::kMollify:
      out = frame.ero(frame.dil(frame.dil(frame.ero(s, e), e), e), e);
      break;
  }
  return frame.leave(out);
}

template <class Set>
Set complement_impl(const Set& a, const MorphContext<Set>& ctx) {
  MorphFrame<Set> frame(ctx, {&a}, {}, ctx.eps);
  return frame.leave(frame.comp(frame.enter(a)));
}

template <class Set>
Set complement_fringe_impl(const Set& a, const MorphContext<Set>& ctx) {
  MorphFrame<Set> frame(ctx, {&a}, {}, ctx.eps);
  Set c = frame.comp(frame.enter(a));
  return frame.leave(difference(c, frame.dil(frame.ero(c, ctx.eps), ctx.eps)));
}

Point witness_point(const IntervalSet& s, const MorphFrame<IntervalSet>&) { return Point{*s.any_point()}; }

Point witness_point(const GridSet& s, const MorphFrame<GridSet>& frame) {
  return frame.lattice().point_at(s.cells().front());
}

template <class Set>
RobustnessReport robustness_impl(const Set& a, const MorphContext<Set>& ctx) {
  MorphFrame<Set> frame(ctx, {&a}, {}, ctx.eps);
  const Rational& e = ctx.eps;
  Set s = frame.enter(a);
  Set c = frame.comp(s);
  Set fa = frame.leave(difference(s, frame.dil(frame.ero(s, e), e)));
  Set fc = frame.leave(difference(c, frame.dil(frame.ero(c, e), e)));
  RobustnessReport r;
  r.fringe_empty = fa.empty();
  r.complement_fringe_empty = fc.empty();
  r.robust = r.fringe_empty && r.complement_fringe_empty;
  if (!r.fringe_empty) {
    r.witness = witness_point(fa, frame);
  } else if (!r.complement_fringe_empty) {
    r.witness = witness_point(fc, frame);
  }
  return r;
}

bool member(const IntervalSet& s, const Point& x) { return s.contains(x[0]); }
bool member(const GridSet& s, const Point& x) { return s.contains(x); }

template <class Set>
bool certified_impl(const Set& a, const MorphContext<Set>& ctx, const Point& x) {
  MorphFrame<Set> frame(ctx, {&a}, {x}, ctx.eps);
  Set s = frame.enter(a);
  if (member(s, x)) return member(frame.ero(s, ctx.eps), x);
  return member(frame.ero(frame.comp(s), ctx.eps), x);
}

template <class Set>
IdentityCheck<Set> equality(std::string name, Set lhs, Set rhs) {
  IdentityCheck<Set> c;
  c.name = std::move(name);
  c.witness = symmetric_difference(lhs, rhs);
  c.holds = c.witness.empty();
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  return c;
}

template <class Set>
IdentityCheck<Set> containment(std::string name, Set lhs, Set rhs) {
  IdentityCheck<Set> c;
  c.name = std::move(name);
  c.witness = difference(lhs, rhs);
  c.holds = c.witness.empty();
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  return c;
}

template <class Set>
FamilyReport<Set> family_impl(const std::vector<Set>& sets, const MorphContext<Set>& ctx) {
  if (sets.empty() || sets.size() > 8) throw Error("family size must be between 1 and 8");
  std::vector<const Set*> ptrs;
  for (const auto& s : sets) ptrs.push_back(&s);
  MorphFrame<Set> frame(ctx, ptrs, {}, ctx.eps);
  const Rational& e = ctx.eps;
  std::vector<Set> in;
  for (const auto& s : sets) in.push_back(frame.enter(s));

  Set uni = in.front(), cap = in.front();
  Set uni_dil = frame.dil(in.front(), e), cap_dil = uni_dil;
  Set uni_ero = frame.ero(in.front(), e), cap_ero = uni_ero;
  for (std::size_t i = 1; i < in.size(); ++i) {
    Set d = frame.dil(in[i], e);
    Set r = frame.ero(in[i], e);
    uni = set_union(uni, in[i]);
    cap = intersection(cap, in[i]);
    uni_dil = set_union(uni_dil, d);
    cap_dil = intersection(cap_dil, d);
    uni_ero = set_union(uni_ero, r);
    cap_ero = intersection(cap_ero, r);
  }
  auto out = [&](const Set& s) { return frame.leave(s); };
  FamilyReport<Set> report;
  report.checks.push_back(equality("dilate(union) == union(dilate)", out(frame.dil(uni, e)), out(uni_dil)));
  report.checks.push_back(equality("erode(intersection) == intersection(erode)", out(frame.ero(cap, e)), out(cap_ero)));
  report.checks.push_back(
      containment("dilate(intersection) <= intersection(dilate)", out(frame.dil(cap, e)), out(cap_dil)));
  report.checks.push_back(containment("union(erode) <= erode(union)", out(uni_ero), out(frame.ero(uni, e))));
  return report;
}

template <class Set>
CompositionCheck compose_impl(const Set& a, const Norm& norm, const Rational& e1, const Rational& e2) {
  if (e1 < 0 || e2 < 0) throw Error("radius must be nonnegative");
  MorphContext<Set> ctx{norm, Rational(e1 + e2), std::nullopt, DomainPolicy::kPadded};
  MorphFrame<Set> frame(ctx, {&a}, {}, ctx.eps);
  Set s = frame.enter(a);
  CompositionCheck c;
  c.dilation_holds = frame.leave(frame.dil(frame.dil(s, e1), e2)) == frame.leave(frame.dil(s, ctx.eps));
  c.erosion_holds = frame.leave(frame.ero(frame.ero(s, e1), e2)) == frame.leave(frame.ero(s, ctx.eps));
  return c;
}

template <class Set>
std::vector<Set> tails_impl(const std::vector<Set>& seq) {
  if (seq.empty()) throw Error("tail_unions needs a nonempty sequence");
  std::vector<Set> out(seq.size());
  for (std::size_t n = seq.size(); n-- > 0;) {
    out[n] = n + 1 == seq.size() ? seq[n] : set_union(seq[n], out[n + 1]);
  }
  return out;
}

}  // namespace

MorphOp parse_morph_op(std::string_view name) {
  if (name == "dilate") return MorphOp::kDilate;
  if (name == "erode") return MorphOp::kErode;
  if (name == "open") return MorphOp::kOpen;
  if (name == "close") return MorphOp::kClose;
  if (name == "fringe") return MorphOp::kFringe;
  if (name == "mollify") return MorphOp::kMollify;
  throw ParseError("unknown morphology op '" + std::string(name) + "'");
}

std::string_view to_string(MorphOp op) {
  switch (op) {
    case MorphOp::kDilate:
      return "dilate";
    case MorphOp::kErode:
      return "erode";
    case MorphOp::kOpen:
      return "open";
    case MorphOp::kClose:
      return "close";
    case MorphOp::kFringe:
      return "fringe";
    case MorphOp::kMollify:
      return "mollify";
  }
  return "";
}

IntervalSet dilate(const IntervalSet& a, const IntervalContext& ctx) { return run(MorphOp::kDilate, a, ctx); }
GridSet dilate(const GridSet& a, const GridContext& ctx) { return run(MorphOp::kDilate, a, ctx); }
IntervalSet erode(const IntervalSet& a, const IntervalContext& ctx) { return run(MorphOp::kErode, a, ctx); }
GridSet erode(const GridSet& a, const GridContext& ctx) { return run(MorphOp::kErode, a, ctx); }
IntervalSet opening(const IntervalSet& a, const IntervalContext& ctx) { return run(MorphOp::kOpen, a, ctx); }
GridSet opening(const GridSet& a, const GridContext& ctx) { return run(MorphOp::kOpen, a, ctx); }
IntervalSet closing(const IntervalSet& a, const IntervalContext& ctx) { return run(MorphOp::kClose, a, ctx); }
GridSet closing(const GridSet& a, const GridContext& ctx) { return run(MorphOp::kClose, a, ctx); }
IntervalSet fringe(const IntervalSet& a, const IntervalContext& ctx) { return run(MorphOp::kFringe, a, ctx); }
GridSet fringe(const GridSet& a, const GridContext& ctx) { return run(MorphOp::kFringe, a, ctx); }
IntervalSet mollify(const IntervalSet& a, const IntervalContext& ctx) { return run(MorphOp::kMollify, a, ctx); }
GridSet mollify(const GridSet& a, const GridContext& ctx) { return run(MorphOp::kMollify, a, ctx); }

IntervalSet apply(MorphOp op, const IntervalSet& a, const IntervalContext& ctx) { return run(op, a, ctx); }
GridSet apply(MorphOp op, const GridSet& a, const GridContext& ctx) { return run(op, a, ctx); }

IntervalSet complement(const IntervalSet& a, const IntervalContext& ctx) { return complement_impl(a, ctx); }
GridSet complement(const GridSet& a, const GridContext& ctx) { return complement_impl(a, ctx); }

IntervalSet complement_fringe(const IntervalSet& a, const IntervalContext& ctx) {
  return complement_fringe_impl(a, ctx);
}
GridSet complement_fringe(const GridSet& a, const GridContext& ctx) { return complement_fringe_impl(a, ctx); }

CompositionCheck compose_radii_check(const IntervalSet& a, const Norm& norm, const Rational& eps1,
                                     const Rational& eps2) {
  return compose_impl(a, norm, eps1, eps2);
}

CompositionCheck compose_radii_check(const GridSet& a, const Norm& norm, const Rational& eps1,
                                     const Rational& eps2) {
  const bool polyhedral_axis = norm.kind() == NormKind::kL1 || norm.kind() == NormKind::kLInf;
  const Rational q1 = eps1 / a.lattice().cell;
  const Rational q2 = eps2 / a.lattice().cell;
  if (!polyhedral_axis || q1.get_den() != 1 || q2.get_den() != 1) {
    throw Error("composition not exact on this lattice");
  }
  return compose_impl(a, norm, eps1, eps2);
}

std::vector<Index> radius_composition_witnesses(const Norm& norm, const Rational& cell, const Rational& eps1,
                                                const Rational& eps2) {
  auto b1 = structuring_element(norm, cell, eps1);
  auto b2 = structuring_element(norm, cell, eps2);
  auto b3 = structuring_element(norm, cell, eps1 + eps2);
  std::set<Index> sum;
  for (const auto& u : b1) {
    for (const auto& v : b2) {
      Index w(u.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = u[i] + v[i];
      sum.insert(std::move(w));
    }
  }
  std::vector<Index> out;
  for (const auto& w : b3) {
    if (!sum.contains(w)) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RobustnessReport is_pseudo_certifiably_robust(const IntervalSet& a, const IntervalContext& ctx) {
  return robustness_impl(a, ctx);
}
RobustnessReport is_pseudo_certifiably_robust(const GridSet& a, const GridContext& ctx) {
  return robustness_impl(a, ctx);
}

bool is_certifiably_robust_at(const IntervalSet& a, const IntervalContext& ctx, const Point& x) {
  return certified_impl(a, ctx, x);
}
bool is_certifiably_robust_at(const GridSet& a, const GridContext& ctx, const Point& x) {
  return certified_impl(a, ctx, x);
}

FamilyReport<IntervalSet> finite_family_identities(const std::vector<IntervalSet>& sets,
                                                   const IntervalContext& ctx) {
  return family_impl(sets, ctx);
}
FamilyReport<GridSet> finite_family_identities(const std::vector<GridSet>& sets, const GridContext& ctx) {
  return family_impl(sets, ctx);
}

std::vector<IntervalSet> tail_unions(const std::vector<IntervalSet>& seq) { return tails_impl(seq); }
std::vector<GridSet> tail_unions(const std::vector<GridSet>& seq) { return tails_impl(seq); }

}  // namespace advcalc
