#include "advcalc/norm.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "advcalc/errors.hpp"

namespace advcalc {
namespace {

Rational abs_value(const Rational& x) { return x < 0 ? Rational(-x) : x; }

Rational dot(const std::vector<Rational>& a, std::span<const Rational> v) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * v[i];
  return s;
}

// Gaussian elimination over Q; nullopt when the system is singular.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

std::size_t rank(std::vector<std::vector<Rational>> m, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < m.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][col] == 0) continue;
      Rational f = m[i][col] / m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[i][c] -= f * m[r][c];
    }
    ++r;
  }
  return r;
}

// Per-axis maxima of {x : |a_i . x| <= 1} by enumerating its vertices.
std::vector<Rational> polytope_unit_extent(const std::vector<std::vector<Rational>>& rows, std::size_t dim) {
  std::vector<Rational> best(dim, Rational(0));
  std::vector<std::size_t> pick(dim);
  const std::size_t m = rows.size();
  // iterate over increasing index tuples
  for (std::size_t i = 0; i < dim; ++i) pick[i] = i;
  while (true) {
    for (std::uint32_t signs = 0; signs < (1u << dim); ++signs) {
      std::vector<std::vector<Rational>> mat;
      std::vector<Rational> rhs;
      for (std::size_t k = 0; k < dim; ++k) {
        mat.push_back(rows[pick[k]]);
        rhs.push_back((signs >> k) & 1u ? Rational(-1) : Rational(1));
      }
      auto x = solve(mat, rhs);
      if (!x) continue;
      bool feasible = std::all_of(rows.begin(), rows.end(),
                                  [&](const auto& row) { return abs_value(dot(row, *x)) <= 1; });
      if (!feasible) continue;
      for (std::size_t j = 0; j < dim; ++j) best[j] = std::max(best[j], abs_value((*x)[j]));
    }
    std::size_t i = dim;
    while (i > 0 && pick[i - 1] == m - dim + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < dim; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

std::string join(const std::vector<Rational>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += values[i].get_str();
  }
  return out;
}

}  // namespace

Norm Norm::l1(std::size_t dim) {
  if (dim == 0) throw Error("norm dimension must be positive");
  return Norm(NormKind::kL1, dim);
}

Norm Norm::l2(std::size_t dim) {
  if (dim == 0) throw Error("norm dimension must be positive");
  return Norm(NormKind::kL2, dim);
}

Norm Norm::linf(std::size_t dim) {
  if (dim == 0) throw Error("norm dimension must be positive");
  return Norm(NormKind::kLInf, dim);
}

Norm Norm::weighted_linf(std::vector<Rational> weights) {
  if (weights.empty()) throw Error("norm dimension must be positive");
  for (const auto& w : weights) {
    if (w <= 0) throw Error("weighted-linf weights must be positive");
  }
  Norm n(NormKind::kWeightedLInf, weights.size());
  n.weights_ = std::move(weights);
  return n;
}

Norm Norm::polytope_gauge(std::vector<std::vector<Rational>> rows) {
  if (rows.empty() || rows.front().empty()) throw Error("polytope gauge needs at least one row");
  const std::size_t dim = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != dim) throw DimensionMismatch("polytope gauge rows differ in length");
  }
  if (rank(rows, dim) != dim) throw Error("polytope gauge rows must span the space");
  Norm n(NormKind::kPolytopeGauge, dim);
  n.poly_extent_ = polytope_unit_extent(rows, dim);
  n.rows_ = std::move(rows);
  return n;
}

Rational Norm::key(std::span<const Rational> v) const {
  if (v.size() != dim_) throw DimensionMismatch("vector dimension does not match norm");
  Rational out = 0;
  switch (kind_) {
    case NormKind::kL1:
      for (const auto& x : v) out += abs_value(x);
      break;
    case NormKind::kL2:
      for (const auto& x : v) out += x * x;
      break;
    case NormKind::kLInf:
      for (const auto& x : v) out = std::max(out, abs_value(x));
      break;
    case NormKind::kWeightedLInf:
      for (std::size_t i = 0; i < dim_; ++i) out = std::max(out, Rational(weights_[i] * abs_value(v[i])));
      break;
    case NormKind::kPolytopeGauge:
      for (const auto& row : rows_) out = std::max(out, abs_value(dot(row, v)));
      break;
  }
  return out;
}

Rational Norm::radius_key(const Rational& eps) const {
  if (eps < 0) throw Error("radius must be nonnegative");
  return kind_ == NormKind::kL2 ? Rational(eps * eps) : eps;
}

double Norm::value(std::span<const double> v) const {
  if (v.size() != dim_) throw DimensionMismatch("vector dimension does not match norm");
  double out = 0;
  switch (kind_) {
    case NormKind::kL1:
      for (double x : v) out += std::abs(x);
      break;
    case NormKind::kL2:
      for (double x : v) out += x * x;
      out = std::sqrt(out);
      break;
    case NormKind::kLInf:
      for (double x : v) out = std::max(out, std::abs(x));
      break;
    case NormKind::kWeightedLInf:
      for (std::size_t i = 0; i < dim_; ++i) out = std::max(out, weights_[i].get_d() * std::abs(v[i]));
      break;
    case NormKind::kPolytopeGauge:
      for (const auto& row : rows_) {
        double s = 0;
        for (std::size_t i = 0; i < dim_; ++i) s += row[i].get_d() * v[i];
        out = std::max(out, std::abs(s));
      }
      break;
  }
  return out;
}

Rational Norm::scale_1d() const {
  if (dim_ != 1) throw DimensionMismatch("scale_1d requires a norm on R");
  switch (kind_) {
    case NormKind::kWeightedLInf:
      return weights_[0];
    case NormKind::kPolytopeGauge: {
      Rational s = 0;
      for (const auto& row : rows_) s = std::max(s, abs_value(row[0]));
      return s;
    }
    default:
      return 1;
  }
}

Rational Norm::axis_extent(std::size_t axis, const Rational& r) const {
  if (axis >= dim_) throw DimensionMismatch("axis out of range");
  switch (kind_) {
    case NormKind::kWeightedLInf:
      return r / weights_[axis];
    case NormKind::kPolytopeGauge:
      return r * poly_extent_[axis];
    default:
      return r;
  }
}

std::string Norm::tag() const {
  switch (kind_) {
    case NormKind::kL1:
      return "l1";
    case NormKind::kL2:
      return "l2";
    case NormKind::kLInf:
      return "linf";
    case NormKind::kWeightedLInf:
      return "wlinf:" + join(weights_, ',');
    case NormKind::kPolytopeGauge: {
      std::string out = "poly:";
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i) out += ';';
        out += join(rows_[i], ',');
      }
      return out;
    }
  }
  return {};
}

Norm Norm::with_dimension(std::size_t dim) const {
  switch (kind_) {
    case NormKind::kL1:
      return l1(dim);
    case NormKind::kL2:
      return l2(dim);
    case NormKind::kLInf:
      return linf(dim);
    default:
      if (dim != dim_) throw DimensionMismatch("norm '" + tag() + "' has fixed dimension");
      return *this;
  }
}

Norm parse_norm(std::string_view tag, std::size_t dim) {
  if (tag == "l1") return Norm::l1(dim);
  if (tag == "l2") return Norm::l2(dim);
  if (tag == "linf") return Norm::linf(dim);
  if (tag.starts_with("wlinf:")) {
    auto n = Norm::weighted_linf(parse_rational_list(tag.substr(6)));
    if (n.dimension() != dim) throw DimensionMismatch("weighted-linf weights do not match dimension");
    return n;
  }
  if (tag.starts_with("poly:")) {
    std::vector<std::vector<Rational>> rows;
    std::string_view rest = tag.substr(5);
    while (true) {
      auto semi = rest.find(';');
      rows.push_back(parse_rational_list(rest.substr(0, semi)));
      if (semi == std::string_view::npos) break;
      rest.remove_prefix(semi + 1);
    }
    auto n = Norm::polytope_gauge(std::move(rows));
    if (n.dimension() != dim) throw DimensionMismatch("polytope gauge rows do not match dimension");
    return n;
  }
  throw ParseError("unknown norm tag '" + std::string(tag) + "'");
}

}  // namespace advcalc
