#include "advcalc/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "advcalc/errors.hpp"

namespace advcalc::gauge {
namespace {

constexpr double kFeasTol = 1e-9;

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

void collect_vertices(const std::vector<Halfspace>& hs, std::size_t d, std::vector<Vec>& out) {
  const std::size_t m = hs.size();
  std::vector<std::size_t> pick(d);
  auto visit = [&]() {
    Eigen::MatrixXd a(d, d);
    Vec b(d);
    for (std::size_t r = 0; r < d; ++r) {
      a.row(r) = hs[pick[r]].a.transpose();
      b[r] = hs[pick[r]].b;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() < static_cast<Eigen::Index>(d)) return;
    Vec z = lu.solve(b);
    for (const auto& h : hs) {
      if (h.a.dot(z) > h.b + kFeasTol * (1 + std::abs(h.b))) return;
    }
    out.push_back(z);
  };
  // combinations of d rows
  for (std::size_t i = 0; i < d; ++i) pick[i] = i;
  if (m < d) return;
  while (true) {
    visit();
    std::size_t i = d;
    while (i > 0 && pick[i - 1] == m - d + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

HalfspacePolytope HalfspacePolytope::make(std::vector<Halfspace> constraints) {
  if (constraints.empty()) throw Error("polytope needs constraints");
  const std::size_t d = constraints.front().a.size();
  if (d != 2 && d != 3) throw DimensionMismatch("polytopes are supported in dimension 2 and 3");
  for (auto& h : constraints) {
    if (static_cast<std::size_t>(h.a.size()) != d) throw DimensionMismatch("constraint dimension mismatch");
    const double n = h.a.norm();
    if (!(n > 0) || !std::isfinite(n) || !std::isfinite(h.b)) throw Error("constraint normal must be nonzero");
    h.a /= n;
    h.b /= n;
  }
  for (std::size_t k = 0; k < d; ++k) {
    for (double s : {1.0, -1.0}) {
      bool blocked = std::any_of(constraints.begin(), constraints.end(),
                                 [&](const Halfspace& h) { return s * h.a[static_cast<Eigen::Index>(k)] > 1e-15; });
      if (!blocked) throw Error("polytope is unbounded");
    }
  }
  HalfspacePolytope p;
  collect_vertices(constraints, d, p.vertices_);
  if (p.vertices_.empty()) throw Error("polytope is empty");
  p.interior_ = Vec::Zero(static_cast<Eigen::Index>(d));
  for (const auto& v : p.vertices_) p.interior_ += v;
  p.interior_ /= static_cast<double>(p.vertices_.size());
  p.constraints_ = std::move(constraints);
  for (const auto& h : p.constraints_) {
    if (h.a.dot(p.interior_) > h.b - kFeasTol) throw Error("polytope has empty interior");
  }
  return p;
}

HalfspacePolytope HalfspacePolytope::box(const Vec& lo, const Vec& hi) {
  std::vector<Halfspace> hs;
  for (Eigen::Index k = 0; k < lo.size(); ++k) {
    Vec e = Vec::Zero(lo.size());
    e[k] = 1;
    hs.push_back({e, hi[k]});
    hs.push_back({-e, -lo[k]});
  }
  return make(std::move(hs));
}

bool HalfspacePolytope::contains(const Vec& z, double tol) const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const Halfspace& h) { return h.a.dot(z) <= h.b + tol; });
}

ConvexBody ConvexBody::ball(Vec center, double radius, NormKind kind) {
  const auto d = center.size();
  if (!(radius > 0)) throw Error("ball radius must be positive");
  if (kind == NormKind::kL2) {
    if (d < 1) throw DimensionMismatch("ball needs a dimension");
    return ConvexBody(L2Ball{std::move(center), radius});
  }
  std::vector<Halfspace> hs;
  if (kind == NormKind::kLInf) {
    for (Eigen::Index k = 0; k < d; ++k) {
      for (double s : {1.0, -1.0}) {
        Vec a = Vec::Zero(d);
        a[k] = s;
        hs.push_back({a, radius + a.dot(center)});
      }
    }
  } else if (kind == NormKind::kL1) {
    for (std::uint32_t signs = 0; signs < (1u << d); ++signs) {
      Vec a(d);
      for (Eigen::Index k = 0; k < d; ++k) a[k] = (signs >> k & 1) ? -1.0 : 1.0;
      hs.push_back({a, radius + a.dot(center)});
    }
  } else {
    throw Error("only L1, L2 and LInf balls are convex bodies here");
  }
  return ConvexBody(HalfspacePolytope::make(std::move(hs)));
}

std::size_t ConvexBody::dimension() const {
  return is_polytope() ? as_polytope().dimension() : static_cast<std::size_t>(as_ball().center.size());
}

bool ConvexBody::contains(const Vec& z, double tol) const {
  if (is_polytope()) return as_polytope().contains(z, tol);
  const auto& b = as_ball();
  return (z - b.center).norm() <= b.radius + tol;
}

std::pair<Vec, Vec> ConvexBody::bounds() const {
  if (!is_polytope()) {
    const auto& b = as_ball();
    Vec r = Vec::Constant(b.center.size(), b.radius);
    return {b.center - r, b.center + r};
  }
  const auto& vs = as_polytope().vertices();
  Vec lo = vs.front(), hi = vs.front();
  for (const auto& v : vs) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return {lo, hi};
}

ConvexBody ConvexBody::translated(const Vec& w) const {
  if (!is_polytope()) return ConvexBody(L2Ball{as_ball().center + w, as_ball().radius});
  auto hs = as_polytope().constraints();
  for (auto& h : hs) h.b += h.a.dot(w);
  return ConvexBody(HalfspacePolytope::make(std::move(hs)));
}

ConvexBody ConvexBody::scaled(double s) const {
  if (!(s > 0)) throw Error("scale must be positive");
  if (!is_polytope()) return ConvexBody(L2Ball{as_ball().center * s, as_ball().radius * s});
  auto hs = as_polytope().constraints();
  for (auto& h : hs) h.b *= s;
  return ConvexBody(HalfspacePolytope::make(std::move(hs)));
}

std::pair<double, double> line_range(const ConvexBody& c, const Vec& x, const Vec& v) {
  if (static_cast<std::size_t>(x.size()) != c.dimension() || x.size() != v.size()) {
    throw DimensionMismatch("point and direction must match the body");
  }
  if (v.squaredNorm() == 0) throw Error("direction must be nonzero");
  if (c.is_polytope()) {
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (const auto& h : c.as_polytope().constraints()) {
      const double av = h.a.dot(v), slack = h.b - h.a.dot(x);
      if (av > 0) {
        hi = std::min(hi, slack / av);
      } else if (av < 0) {
        lo = std::max(lo, slack / av);
      } else if (slack < -1e-12) {
        throw Error("line disjoint from body");
      }
    }
    if (lo > hi) {
      if (lo - hi > 1e-12 * (1 + std::abs(hi))) throw Error("line disjoint from body");
      lo = hi;
    }
    return {lo, hi};
  }
  const auto& b = c.as_ball();
  const Vec w = x - b.center;
  const double qa = v.squaredNorm(), qb = 2 * w.dot(v), qc = w.squaredNorm() - b.radius * b.radius;
  double disc = qb * qb - 4 * qa * qc;
  if (disc < 0) {
    if (disc < -1e-12 * (qb * qb + std::abs(4 * qa * qc))) throw Error("line disjoint from body");
    disc = 0;
  }
  const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
  if (q == 0) return {0.0, 0.0};
  const double r1 = q / qa, r2 = qc / q;
  return {std::min(r1, r2), std::max(r1, r2)};
}

double lambda(const ConvexBody& c, const Vec& x, const Vec& v) { return line_range(c, x, v).second; }

Vec sample_point(const ConvexBody& c, std::uint64_t seed, std::uint64_t index) {
  auto rng = stream(seed, index);
  auto [lo, hi] = c.bounds();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Vec z(lo.size());
    for (Eigen::Index k = 0; k < z.size(); ++k) z[k] = lo[k] + (hi[k] - lo[k]) * unit(rng);
    if (c.contains(z, 0.0)) return z;
  }
  throw Error("could not sample a point of the body");
}

Vec sample_unit(std::size_t dim, std::uint64_t seed, std::uint64_t index) {
  auto rng = stream(seed, index);
  std::normal_distribution<double> g;
  Vec v(static_cast<Eigen::Index>(dim));
  do {
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = g(rng);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

ProbeReport concavity_probe(const ConvexBody& c, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw Error("need at least one sample");
  ProbeReport rep;
  rep.samples = samples;
  rep.min_lambda = std::numeric_limits<double>::infinity();
  const Vec v = sample_unit(c.dimension(), seed, ~std::uint64_t{0});
  for (std::size_t i = 0; i < samples; ++i) {
    const Vec x = sample_point(c, seed, 2 * i), y = sample_point(c, seed, 2 * i + 1);
    auto rng = stream(seed ^ 0x9e3779b97f4a7c15ULL, i);
    const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double lx = lambda(c, x, v), ly = lambda(c, y, v);
    const double lhs = lambda(c, t * x + (1 - t) * y, v), rhs = t * lx + (1 - t) * ly;
    const double viol = std::max(rhs - lhs, 0.0);
    rep.max_violation = std::max(rep.max_violation, viol);
    rep.min_lambda = std::min({rep.min_lambda, lx, ly});
    rep.rows.push_back({i, lhs, rhs, viol});
  }
  rep.passed = rep.max_violation <= 1e-9 && rep.min_lambda >= -1e-12;
  return rep;
}

SemicontinuityReport semicontinuity_probe(const ConvexBody& c, const std::vector<Vec>& path, const Vec& x,
                                          const Vec& v) {
  if (path.empty()) throw Error("path must be nonempty");
  SemicontinuityReport rep;
  rep.lambda_limit = lambda(c, x, v);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double l = lambda(c, path[i], v);
    rep.rows.push_back({i, l, rep.lambda_limit, std::max(l - rep.lambda_limit, 0.0)});
  }
  const std::size_t tail = std::max<std::size_t>(1, path.size() / 10);
  rep.limsup = -std::numeric_limits<double>::infinity();
  for (std::size_t i = path.size() - tail; i < path.size(); ++i) rep.limsup = std::max(rep.limsup, rep.rows[i].lhs);
  rep.final_gap = std::abs(rep.rows.back().lhs - rep.lambda_limit);
  rep.upper_semicontinuous = rep.limsup <= rep.lambda_limit + 1e-9;
  rep.continuous = rep.final_gap <= 1e-9;
  rep.passed = rep.upper_semicontinuous && (!c.is_polytope() || rep.continuous);
  return rep;
}

HalfspacePolytope circumscribed_polygon(const L2Ball& disc, std::size_t k) {
  if (disc.center.size() != 2) throw DimensionMismatch("polygon approximation is planar");
  if (k < 3) throw Error("polygon needs at least 3 sides");
  std::vector<Halfspace> hs;
  for (std::size_t j = 0; j < k; ++j) {
    const double th = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k);
    Vec a(2);
    a << std::cos(th), std::sin(th);
    hs.push_back({a, disc.radius + a.dot(disc.center)});
  }
  // corners sit between consecutive tangent lines at radius r / cos(pi / k)
  const double half = std::numbers::pi / static_cast<double>(k);
  const double reach = disc.radius / std::cos(half);
  std::vector<Vec> corners;
  for (std::size_t j = 0; j < k; ++j) {
    const double th = 2 * half * static_cast<double>(j) + half;
    Vec z(2);
    z << disc.center[0] + reach * std::cos(th), disc.center[1] + reach * std::sin(th);
    corners.push_back(z);
  }
  HalfspacePolytope p;
  p.constraints_ = std::move(hs);
  p.vertices_ = std::move(corners);
  p.interior_ = disc.center;
  return p;
}

PolytopeApproximation approximate_by_polytope(const L2Ball& disc, double delta, const Vec& v, std::size_t samples,
                                              std::uint64_t seed) {
  if (!(delta > 0)) throw Error("delta must be positive");
  if (disc.center.size() != 2) throw DimensionMismatch("polygon approximation is planar");
  if (!(v.norm() > 0)) throw Error("direction must be nonzero");
  const ConvexBody c = ConvexBody::ball(disc.center, disc.radius);
  std::vector<Vec> xs;
  for (std::size_t i = 0; i < samples; ++i) xs.push_back(sample_point(c, seed, i));
  std::vector<std::pair<std::size_t, double>> history;
  for (std::size_t k = 8; k <= (std::size_t{1} << 22); k *= 2) {
    HalfspacePolytope p = circumscribed_polygon(disc, k);
    const ConvexBody pc = ConvexBody::polytope(p);
    double hi = -std::numeric_limits<double>::infinity(), lo = std::numeric_limits<double>::infinity();
    for (const auto& x : xs) {
      const double gap = lambda(pc, x, v) - lambda(c, x, v);
      hi = std::max(hi, gap);
      lo = std::min(lo, gap);
    }
    const double bound = disc.radius * std::tan(std::numbers::pi / static_cast<double>(k)) / v.norm();
    history.emplace_back(k, hi);
    if (hi < delta / 2 && bound < delta) return {std::move(p), k, hi, lo, std::move(history)};
  }
  throw BudgetExceeded("polygon approximation did not reach delta");
}

MidpointReport midpoint_lemma_harness(std::size_t configs, std::size_t sequence_length, std::size_t y_samples,
                                      std::uint64_t seed, std::size_t first_config) {
  if (sequence_length < 1) throw Error("sequence must be nonempty");
  MidpointReport rep;
  rep.configs = configs;
  rep.sequence_length = sequence_length;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = first_config; i < first_config + configs; ++i) {
    auto rng = stream(seed, i);
    const double eps = 0.25 + 0.75 * unit(rng);
    Vec b(2);
    b << 2 * unit(rng) - 1, 2 * unit(rng) - 1;
    const Vec u = sample_unit(2, seed ^ 0x5bd1e995ULL, i);
    const double reach = i % 2 == 0 ? 2 * eps : 2 * eps * 0.999 * unit(rng);
    const Vec x = b + reach * u;
    const double rho = eps * (0.1 + 0.9 * unit(rng));

    std::vector<Vec> bn;
    for (std::size_t n = 0; n < sequence_length; ++n) {
      Vec w(2);
      const double th = 2 * std::numbers::pi * unit(rng);
      w << std::cos(th), std::sin(th);
      Vec p = b + rho * std::ldexp(1.0, -static_cast<int>(n)) * w;
      const double dist = (p - x).norm();
      if (dist > 2 * eps) p = x + (p - x) * (2 * eps / dist);
      bn.push_back(p);
    }
    const Vec c = (b + x) / 2;

    auto inside = [&](const Vec& y, const Vec& centre) {
      const Vec dir = y - centre;
      if (dir.squaredNorm() == 0) return true;
      return lambda(ConvexBody::ball(centre, 2 * eps), centre, dir) >= 1 - 1e-12;
    };

    bool ok = true;
    for (std::size_t s = 0; s < y_samples && ok; ++s) {
      Vec y = x;
      if (s > 0) {
        const double th = 2 * std::numbers::pi * unit(rng);
        const double r = s % 2 == 0 ? 1.0 : std::sqrt(unit(rng));
        Vec d(2);
        d << std::cos(th), std::sin(th);
        y = c + eps * r * d;
      }
      std::size_t first = sequence_length;
      for (std::size_t n = sequence_length; n-- > 0;) {
        if (!inside(y, bn[n])) break;
        first = n;
      }
      if (first == sequence_length) {
        ok = false;
      } else {
        rep.max_index = std::max(rep.max_index, first);
      }
    }
    if (!ok) ++rep.failures;
  }
  return rep;
}

}  // namespace advcalc::gauge
