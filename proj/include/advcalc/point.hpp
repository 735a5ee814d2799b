#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "advcalc/rational.hpp"

namespace advcalc {

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Rational> coords) : coords_(coords) {}

  std::size_t dimension() const { return coords_.size(); }
  std::span<const Rational> coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const Point& a, const Point& b);

  std::string to_string() const;

 private:
  std::vector<Rational> coords_;
};

std::vector<Rational> difference(const Point& a, const Point& b);

}  // namespace advcalc
