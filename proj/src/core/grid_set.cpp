#include "advcalc/grid_set.hpp"

#include <algorithm>

#include "advcalc/errors.hpp"

namespace advcalc {

Point Lattice::point_at(std::span<const std::int64_t> k) const {
  if (k.size() != origin.size()) throw DimensionMismatch("index dimension does not match lattice");
  std::vector<Rational> coords(origin.size());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = origin[i] + cell * Rational(static_cast<long>(k[i]));
  return Point(std::move(coords));
}

std::optional<Index> Lattice::index_of(const Point& x) const {
  if (x.dimension() != origin.size()) throw DimensionMismatch("point dimension does not match lattice");
  Index k(origin.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    Rational q = (x[i] - origin[i]) / cell;
    if (q.get_den() != 1) return std::nullopt;
    if (!q.get_num().fits_slong_p()) return std::nullopt;
    k[i] = q.get_num().get_si();
  }
  return k;
}

std::size_t GridBox::volume() const {
  std::size_t v = 1;
  for (auto e : extent) v *= static_cast<std::size_t>(std::max<std::int64_t>(e, 0));
  return v;
}

bool GridBox::contains(std::span<const std::int64_t> k) const {
  if (k.size() != lo.size()) return false;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < lo[i] || k[i] >= lo[i] + extent[i]) return false;
  }
  return true;
}

std::size_t GridBox::flat(std::span<const std::int64_t> k) const {
  std::size_t f = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    f = f * static_cast<std::size_t>(extent[i]) + static_cast<std::size_t>(k[i] - lo[i]);
  }
  return f;
}

Index GridBox::unflat(std::size_t f) const {
  Index k(lo.size());
  for (std::size_t i = lo.size(); i-- > 0;) {
    auto e = static_cast<std::size_t>(extent[i]);
    k[i] = lo[i] + static_cast<std::int64_t>(f % e);
    f /= e;
  }
  return k;
}

GridBox GridBox::expanded(std::span<const std::int64_t> margin) const {
  GridBox b = *this;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    b.lo[i] -= margin[i];
    b.extent[i] += 2 * margin[i];
  }
  return b;
}

GridBox GridBox::expanded(std::int64_t margin) const {
  return expanded(Index(lo.size(), margin));
}

GridBox bounding_box(const GridBox& a, const GridBox& b) {
  if (a.dimension() != b.dimension()) throw DimensionMismatch("box dimensions differ");
  if (a.volume() == 0) return b;
  if (b.volume() == 0) return a;
  GridBox out{Index(a.dimension()), Index(a.dimension())};
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    out.lo[i] = std::min(a.lo[i], b.lo[i]);
    out.extent[i] = std::max(a.lo[i] + a.extent[i], b.lo[i] + b.extent[i]) - out.lo[i];
  }
  return out;
}

GridSet::GridSet(Lattice lattice, GridBox box) : lattice_(std::move(lattice)), box_(std::move(box)) {
  if (box_.dimension() != lattice_.dimension() || box_.extent.size() != box_.lo.size()) {
    throw DimensionMismatch("box dimension does not match lattice");
  }
  if (lattice_.cell <= 0) throw Error("lattice cell size must be positive");
  for (auto e : box_.extent) {
    if (e < 0) throw Error("box extent must be nonnegative");
  }
  mask_.assign(box_.volume(), 0);
}

GridSet GridSet::from_cells(Lattice lattice, const std::vector<Index>& cells) {
  const std::size_t dim = lattice.dimension();
  if (cells.empty()) return GridSet(std::move(lattice), GridBox{Index(dim, 0), Index(dim, 0)});
  Index lo = cells.front(), hi = cells.front();
  for (const auto& c : cells) {
    if (c.size() != dim) throw DimensionMismatch("cell dimension does not match lattice");
    for (std::size_t i = 0; i < dim; ++i) {
      lo[i] = std::min(lo[i], c[i]);
      hi[i] = std::max(hi[i], c[i]);
    }
  }
  Index extent(dim);
  for (std::size_t i = 0; i < dim; ++i) extent[i] = hi[i] - lo[i] + 1;
  GridSet g(std::move(lattice), GridBox{lo, extent});
  for (const auto& c : cells) g.set(c);
  return g;
}

GridSet GridSet::full(Lattice lattice, GridBox box) {
  GridSet g(std::move(lattice), std::move(box));
  std::fill(g.mask_.begin(), g.mask_.end(), 1);
  return g;
}

bool GridSet::test(std::span<const std::int64_t> k) const {
  if (!box_.contains(k)) return false;
  return mask_[box_.flat(k)] != 0;
}

void GridSet::set(std::span<const std::int64_t> k, bool value) {
  if (!box_.contains(k)) throw Error("cell outside the grid box");
  mask_[box_.flat(k)] = value ? 1 : 0;
}

bool GridSet::contains(const Point& x) const {
  auto k = lattice_.index_of(x);
  return k && test(*k);
}

bool GridSet::empty() const {
  return std::none_of(mask_.begin(), mask_.end(), [](std::uint8_t b) { return b != 0; });
}

std::size_t GridSet::count() const {
  return static_cast<std::size_t>(std::count_if(mask_.begin(), mask_.end(), [](std::uint8_t b) { return b != 0; }));
}

std::vector<Index> GridSet::cells() const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(box_.unflat(i));
  }
  return out;
}

std::optional<GridBox> GridSet::support_box() const {
  const std::size_t dim = dimension();
  std::optional<Index> lo, hi;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (!mask_[i]) continue;
    Index k = box_.unflat(i);
    if (!lo) {
      lo = k;
      hi = k;
      continue;
    }
    for (std::size_t a = 0; a < dim; ++a) {
      (*lo)[a] = std::min((*lo)[a], k[a]);
      (*hi)[a] = std::max((*hi)[a], k[a]);
    }
  }
  if (!lo) return std::nullopt;
  Index extent(dim);
  for (std::size_t a = 0; a < dim; ++a) extent[a] = (*hi)[a] - (*lo)[a] + 1;
  return GridBox{*lo, extent};
}

GridSet GridSet::trimmed() const {
  auto sb = support_box();
  if (!sb) return GridSet(lattice_, GridBox{Index(dimension(), 0), Index(dimension(), 0)});
  return reboxed(*sb);
}

GridSet GridSet::reboxed(const GridBox& box) const {
  GridSet out(lattice_, box);
  if (out.mask_.empty() || mask_.empty()) return out;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (!mask_[i]) continue;
    Index k = box_.unflat(i);
    if (box.contains(k)) out.mask_[box.flat(k)] = 1;
  }
  return out;
}

std::string GridSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& k : cells()) {
    if (!first) out += ", ";
    first = false;
    out += "(";
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(k[i]);
    }
    out += ")";
  }
  return out + "}";
}

bool operator==(const GridSet& a, const GridSet& b) {
  if (a.lattice_ != b.lattice_) return false;
  if (a.box_ == b.box_) return a.mask_ == b.mask_;
  return a.cells() == b.cells();
}

void require_compatible(const GridSet& a, const GridSet& b) {
  if (a.dimension() != b.dimension()) throw DimensionMismatch("grid dimensions differ");
  if (a.lattice() != b.lattice()) throw Error("incompatible lattices");
}

namespace {

template <class Op>
GridSet combine(const GridSet& a, const GridSet& b, const GridBox& box, Op op) {
  GridSet out(a.lattice(), box);
  if (box.volume() == 0) return out;
  for (std::size_t i = 0; i < box.volume(); ++i) {
    Index k = box.unflat(i);
    if (op(a.test(k), b.test(k))) out.set_flat(i);
  }
  return out;
}

}  // namespace

GridSet set_union(const GridSet& a, const GridSet& b) {
  require_compatible(a, b);
  return combine(a, b, bounding_box(a.box(), b.box()), [](bool x, bool y) { return x || y; });
}

GridSet intersection(const GridSet& a, const GridSet& b) {
  require_compatible(a, b);
  return combine(a, b, a.box(), [](bool x, bool y) { return x && y; });
}

GridSet difference(const GridSet& a, const GridSet& b) {
  require_compatible(a, b);
  return combine(a, b, a.box(), [](bool x, bool y) { return x && !y; });
}

GridSet symmetric_difference(const GridSet& a, const GridSet& b) {
  require_compatible(a, b);
  return combine(a, b, bounding_box(a.box(), b.box()), [](bool x, bool y) { return x != y; });
}

GridSet complement(const GridSet& a, const GridBox& domain) {
  if (domain.dimension() != a.dimension()) throw DimensionMismatch("domain dimension does not match grid");
  GridSet out(a.lattice(), domain);
  for (std::size_t i = 0; i < domain.volume(); ++i) {
    if (!a.test(domain.unflat(i))) out.set_flat(i);
  }
  return out;
}

bool is_subset(const GridSet& a, const GridSet& b) {
  require_compatible(a, b);
  for (std::size_t i = 0; i < a.mask().size(); ++i) {
    if (a.test_flat(i) && !b.test(a.box().unflat(i))) return false;
  }
  return true;
}

std::vector<Index> structuring_element(const Norm& norm, const Rational& cell, const Rational& eps) {
  if (eps < 0) throw Error("radius must be nonnegative");
  if (cell <= 0) throw Error("lattice cell size must be positive");
  const std::size_t dim = norm.dimension();
  Index reach(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    reach[a] = floor(norm.axis_extent(a, eps) / cell).get_si();
  }
  GridBox box{Index(dim), Index(dim)};
  for (std::size_t a = 0; a < dim; ++a) {
    box.lo[a] = -reach[a];
    box.extent[a] = 2 * reach[a] + 1;
  }
  std::vector<Index> out;
  std::vector<Rational> v(dim);
  for (std::size_t i = 0; i < box.volume(); ++i) {
    Index k = box.unflat(i);
    for (std::size_t a = 0; a < dim; ++a) v[a] = cell * Rational(static_cast<long>(k[a]));
    if (norm.within(v, eps)) out.push_back(std::move(k));
  }
  return out;
}

GridSet minkowski_dilate(const GridSet& a, const std::vector<Index>& offsets) {
  const std::size_t dim = a.dimension();
  Index margin(dim, 0);
  for (const auto& v : offsets) {
    if (v.size() != dim) throw DimensionMismatch("offset dimension does not match grid");
    for (std::size_t i = 0; i < dim; ++i) margin[i] = std::max(margin[i], v[i] < 0 ? -v[i] : v[i]);
  }
  GridBox box = a.box().expanded(margin);
  GridSet out(a.lattice(), box);
  if (a.mask().empty()) return out;
  // Flat shift of each offset within the output box.
  std::vector<std::ptrdiff_t> shifts;
  shifts.reserve(offsets.size());
  for (const auto& v : offsets) {
    std::ptrdiff_t s = 0;
    for (std::size_t i = 0; i < dim; ++i) s = s * static_cast<std::ptrdiff_t>(box.extent[i]) + v[i];
    shifts.push_back(s);
  }
  for (std::size_t i = 0; i < a.mask().size(); ++i) {
    if (!a.test_flat(i)) continue;
    auto base = static_cast<std::ptrdiff_t>(box.flat(a.box().unflat(i)));
    for (auto s : shifts) out.set_flat(static_cast<std::size_t>(base + s));
  }
  return out;
}

}  // namespace advcalc
