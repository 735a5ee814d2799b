#include "advcalc/point.hpp"

#include <algorithm>

#include "advcalc/errors.hpp"

namespace advcalc {

bool operator<(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end());
}

std::string Point::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ", ";
    out += coords_[i].get_str();
  }
  return out + ")";
}

std::vector<Rational> difference(const Point& a, const Point& b) {
  if (a.dimension() != b.dimension()) throw DimensionMismatch("point dimensions differ");
  std::vector<Rational> out(a.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace advcalc
