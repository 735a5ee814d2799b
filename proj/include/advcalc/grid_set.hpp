#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "advcalc/norm.hpp"
#include "advcalc/point.hpp"
#include "advcalc/rational.hpp"

namespace advcalc {

using Index = std::vector<std::int64_t>;

// The lattice {origin + cell * k : k in Z^d}.
struct Lattice {
  std::vector<Rational> origin;
  Rational cell = 1;

  static Lattice unit(std::size_t dim) { return {std::vector<Rational>(dim, Rational(0)), Rational(1)}; }

  std::size_t dimension() const { return origin.size(); }
  Point point_at(std::span<const std::int64_t> k) const;
  // Lattice index of x, or nullopt when x is not a lattice point.
  std::optional<Index> index_of(const Point& x) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;
};

// Half-open box [lo, lo + extent) of lattice indices.
struct GridBox {
  Index lo;
  Index extent;

  std::size_t dimension() const { return lo.size(); }
  std::size_t volume() const;
  bool contains(std::span<const std::int64_t> k) const;
  std::size_t flat(std::span<const std::int64_t> k) const;  // row-major, last axis fastest
  Index unflat(std::size_t flat) const;
  GridBox expanded(std::span<const std::int64_t> margin) const;
  GridBox expanded(std::int64_t margin) const;

  friend bool operator==(const GridBox&, const GridBox&) = default;
};

GridBox bounding_box(const GridBox& a, const GridBox& b);

// A finite subset of a lattice, stored as a boolean mask over a box of
// indices. The box is storage only; equality compares the index sets.
class GridSet {
 public:
  // Complements are taken relative to a box on the same lattice.
  using Domain = GridBox;

  GridSet() = default;
  GridSet(Lattice lattice, GridBox box);
  static GridSet from_cells(Lattice lattice, const std::vector<Index>& cells);
  static GridSet full(Lattice lattice, GridBox box);

  const Lattice& lattice() const { return lattice_; }
  const GridBox& box() const { return box_; }
  std::size_t dimension() const { return lattice_.dimension(); }

  bool test(std::span<const std::int64_t> k) const;
  void set(std::span<const std::int64_t> k, bool value = true);  // k must lie in box()
  bool test_flat(std::size_t i) const { return mask_[i] != 0; }
  void set_flat(std::size_t i, bool value = true) { mask_[i] = value ? 1 : 0; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }

  bool contains(const Point& x) const;
  bool empty() const;
  std::size_t count() const;
  std::vector<Index> cells() const;  // lexicographic order

  // Tight bounding box of the members; nullopt when empty.
  std::optional<GridBox> support_box() const;
  GridSet trimmed() const;
  GridSet reboxed(const GridBox& box) const;  // members outside box are dropped

  std::string to_string() const;

  friend bool operator==(const GridSet& a, const GridSet& b);

 private:
  Lattice lattice_;
  GridBox box_;
  std::vector<std::uint8_t> mask_;
};

// Throws DimensionMismatch / Error("incompatible lattices") on mismatch.
void require_compatible(const GridSet& a, const GridSet& b);

GridSet set_union(const GridSet& a, const GridSet& b);
GridSet intersection(const GridSet& a, const GridSet& b);
GridSet difference(const GridSet& a, const GridSet& b);
GridSet symmetric_difference(const GridSet& a, const GridSet& b);
GridSet complement(const GridSet& a, const GridBox& domain);
bool is_subset(const GridSet& a, const GridSet& b);

// Lattice offsets v with ||cell * v|| <= eps.
std::vector<Index> structuring_element(const Norm& norm, const Rational& cell, const Rational& eps);

// Discrete Minkowski sum with an offset list; the box grows to hold the result.
GridSet minkowski_dilate(const GridSet& a, const std::vector<Index>& offsets);

}  // namespace advcalc
