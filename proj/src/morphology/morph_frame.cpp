#include "advcalc/morph_frame.hpp"

#include <algorithm>

#include "advcalc/errors.hpp"

namespace advcalc {
namespace {

Interval padded(const Interval& iv, const Rational& by) { return Interval::closed(iv.lo - by, iv.hi + by); }

IntervalSet as_set(const Interval& iv) { return IntervalSet::from_intervals({iv}); }

}  // namespace

// ---------------------------------------------------------------------------
// Interval frames

MorphFrame<IntervalSet>::MorphFrame(const IntervalContext& ctx, const std::vector<const IntervalSet*>& inputs,
                                    const std::vector<Point>& points, const Rational& margin_eps)
    : norm_(ctx.norm) {
  if (norm_.dimension() != 1) throw DimensionMismatch("interval sets need a norm on R");
  if (ctx.eps < 0 || margin_eps < 0) throw Error("radius must be nonnegative");
  for (const auto& p : points) {
    if (p.dimension() != 1) throw DimensionMismatch("interval sets live in dimension 1");
  }
  scale_ = norm_.scale_1d();
  const Rational r = std::max(ctx.eps, margin_eps) / scale_;

  if (ctx.domain) {
    if (ctx.domain->lo > ctx.domain->hi) throw Error("empty domain");
    inner_ = Interval::closed(ctx.domain->lo, ctx.domain->hi);
    if (ctx.policy == DomainPolicy::kUniverse) {
      universe_ = true;
      outer_ = inner_;
    } else {
      padded_domain_ = true;
      rim_ = 2 * r;
      outer_ = padded(inner_, 4 * r + 1);
    }
    for (const auto& p : points) {
      if (!inner_.contains(p[0])) throw DomainError("point " + p.to_string() + " outside domain");
    }
    for (const auto* s : inputs) enter(*s);
    return;
  }

  std::optional<Interval> hull;
  auto absorb = [&](const Rational& lo, const Rational& hi) {
    if (!hull) {
      hull = Interval::closed(lo, hi);
    } else {
      hull->lo = std::min(hull->lo, lo);
      hull->hi = std::max(hull->hi, hi);
    }
  };
  for (const auto* s : inputs) {
    if (auto h = s->hull()) absorb(h->lo, h->hi);
  }
  for (const auto& p : points) absorb(p[0], p[0]);
  if (!hull) hull = Interval::closed(0, 0);
  inner_ = padded(*hull, 2 * r + 1);
  outer_ = padded(inner_, 4 * r + 1);
}

IntervalSet MorphFrame<IntervalSet>::enter(const IntervalSet& s) const {
  const IntervalSet inner = as_set(inner_);
  if (!is_subset(s, inner)) {
    throw DomainError(universe_ ? "set outside domain" : "domain overflow: set leaves the domain");
  }
  if (!padded_domain_) return s;

  IntervalSet out = s;
  const Interval left = Interval::closed(inner_.lo, std::min(Rational(inner_.lo + rim_), inner_.hi));
  const Interval right = Interval::closed(std::max(Rational(inner_.hi - rim_), inner_.lo), inner_.hi);
  const Interval left_margin = Interval::closed(outer_.lo, inner_.lo);
  const Interval right_margin = Interval::closed(inner_.hi, outer_.hi);
  for (const auto& [rim, margin] : {std::pair{left, left_margin}, std::pair{right, right_margin}}) {
    IntervalSet hit = intersection(s, as_set(rim));
    if (hit.empty()) continue;
    if (hit != as_set(rim)) {
      throw DomainError("domain overflow: set boundary within 2*eps of the domain edge");
    }
    out = set_union(out, as_set(margin));
  }
  return out;
}

IntervalSet MorphFrame<IntervalSet>::leave(const IntervalSet& s) const { return intersection(s, as_set(inner_)); }

IntervalSet MorphFrame<IntervalSet>::dil(const IntervalSet& s, const Rational& eps) const {
  return intersection(minkowski_dilate(s, radius(eps)), as_set(outer_));
}

IntervalSet MorphFrame<IntervalSet>::comp(const IntervalSet& s) const { return complement(s, outer_); }

IntervalSet MorphFrame<IntervalSet>::ero(const IntervalSet& s, const Rational& eps) const {
  return comp(dil(comp(s), eps));
}

// ---------------------------------------------------------------------------
// Grid frames

namespace {

GridBox shrunk(const GridBox& box, const Index& by) {
  GridBox out = box;
  for (std::size_t a = 0; a < box.dimension(); ++a) {
    out.lo[a] += by[a];
    out.extent[a] = std::max<std::int64_t>(0, box.extent[a] - 2 * by[a]);
  }
  return out;
}

Index scaled(const Index& v, std::int64_t f, std::int64_t add) {
  Index out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * f + add;
  return out;
}

}  // namespace

MorphFrame<GridSet>::MorphFrame(const GridContext& ctx, const std::vector<const GridSet*>& inputs,
                                const std::vector<Point>& points, const Rational& margin_eps)
    : norm_(ctx.norm) {
  if (inputs.empty()) throw Error("grid frame needs at least one set to fix the lattice");
  lattice_ = inputs.front()->lattice();
  for (const auto* s : inputs) {
    if (s->lattice() != lattice_) throw Error("incompatible lattices");
  }
  if (norm_.dimension() != lattice_.dimension()) throw DimensionMismatch("norm dimension does not match grid");
  if (ctx.eps < 0 || margin_eps < 0) throw Error("radius must be nonnegative");
  const Rational m = std::max(ctx.eps, margin_eps);
  const std::size_t dim = lattice_.dimension();
  Index reach(dim);
  for (std::size_t a = 0; a < dim; ++a) reach[a] = floor(norm_.axis_extent(a, m) / lattice_.cell).get_si();

  std::vector<Index> point_cells;
  for (const auto& p : points) {
    auto k = lattice_.index_of(p);
    if (!k) throw Error("point " + p.to_string() + " is not a lattice point");
    point_cells.push_back(*k);
  }

  if (ctx.domain) {
    if (ctx.domain->dimension() != dim) throw DimensionMismatch("domain dimension does not match grid");
    inner_ = *ctx.domain;
    if (ctx.policy == DomainPolicy::kUniverse) {
      universe_ = true;
      outer_ = inner_;
    } else {
      padded_domain_ = true;
      rim_ = scaled(reach, 2, 0);
      outer_ = inner_.expanded(scaled(reach, 4, 1));
    }
    for (const auto& k : point_cells) {
      if (!inner_.contains(k)) throw DomainError("point outside domain");
    }
    for (const auto* s : inputs) enter(*s);
    return;
  }

  trim_ = true;
  GridBox box{Index(dim, 0), Index(dim, 0)};
  for (const auto* s : inputs) {
    if (auto sb = s->support_box()) box = bounding_box(box, *sb);
  }
  for (const auto& k : point_cells) box = bounding_box(box, GridBox{k, Index(dim, 1)});
  if (box.volume() == 0) box = GridBox{Index(dim, 0), Index(dim, 1)};
  inner_ = box.expanded(scaled(reach, 2, 1));
  outer_ = inner_.expanded(scaled(reach, 4, 1));
}

bool MorphFrame<GridSet>::in_inner(const Point& x) const {
  auto k = lattice_.index_of(x);
  return k && inner_.contains(*k);
}

GridSet MorphFrame<GridSet>::enter(const GridSet& s) const {
  if (s.lattice() != lattice_) throw Error("incompatible lattices");
  for (std::size_t i = 0; i < s.mask().size(); ++i) {
    if (s.test_flat(i) && !inner_.contains(s.box().unflat(i))) {
      throw DomainError(universe_ ? "set outside domain" : "domain overflow: set leaves the domain");
    }
  }
  GridSet out = s.reboxed(outer_);
  if (!padded_domain_) return out;

  const std::size_t dim = inner_.dimension();
  const GridBox core = shrunk(inner_, rim_);
  // Rim components: both ends separately on a line, the whole band otherwise.
  std::vector<std::vector<std::size_t>> parts(dim == 1 && core.volume() > 0 ? 2 : 1);
  for (std::size_t i = 0; i < inner_.volume(); ++i) {
    Index k = inner_.unflat(i);
    if (core.volume() > 0 && core.contains(k)) continue;
    std::size_t part = 0;
    if (parts.size() == 2 && k[0] >= core.lo[0] + core.extent[0]) part = 1;
    parts[part].push_back(outer_.flat(k));
  }
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& cells = parts[p];
    if (cells.empty()) continue;
    std::size_t members = 0;
    for (auto f : cells) members += out.test_flat(f) ? 1 : 0;
    if (members == 0) continue;
    if (members != cells.size()) {
      throw DomainError("domain overflow: set boundary within 2*eps of the domain edge");
    }
    for (std::size_t i = 0; i < outer_.volume(); ++i) {
      Index k = outer_.unflat(i);
      if (inner_.contains(k)) continue;
      if (parts.size() == 2 && (p == 0) != (k[0] < inner_.lo[0])) continue;
      out.set_flat(i);
    }
  }
  return out;
}

GridSet MorphFrame<GridSet>::leave(const GridSet& s) const {
  GridSet out = s.reboxed(inner_);
  return trim_ ? out.trimmed() : out;
}

const std::vector<Index>& MorphFrame<GridSet>::element(const Rational& eps) const {
  auto key = eps.get_str();
  auto it = elements_.find(key);
  if (it == elements_.end()) it = elements_.emplace(key, structuring_element(norm_, lattice_.cell, eps)).first;
  return it->second;
}

GridSet MorphFrame<GridSet>::dil(const GridSet& s, const Rational& eps) const {
  return minkowski_dilate(s, element(eps)).reboxed(outer_);
}

GridSet MorphFrame<GridSet>::comp(const GridSet& s) const { return complement(s, outer_); }

GridSet MorphFrame<GridSet>::ero(const GridSet& s, const Rational& eps) const { return comp(dil(comp(s), eps)); }

}  // namespace advcalc
