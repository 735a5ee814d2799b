#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "advcalc/norm.hpp"

namespace advcalc::gauge {

using Vec = Eigen::VectorXd;

// a . z <= b with |a| = 1.
struct Halfspace {
  Vec a;
  double b;
};

struct L2Ball;

// Bounded intersection of half-spaces in dimension 2 or 3 with nonempty
// interior. Construction normalizes every row, enumerates the vertices and
// stores their centroid as a strictly feasible point.
class HalfspacePolytope {
 public:
  static HalfspacePolytope make(std::vector<Halfspace> constraints);
  // Axis-aligned box [lo, hi] per coordinate.
  static HalfspacePolytope box(const Vec& lo, const Vec& hi);
  friend HalfspacePolytope circumscribed_polygon(const L2Ball& disc, std::size_t k);

  std::size_t dimension() const { return interior_.size(); }
  const std::vector<Halfspace>& constraints() const { return constraints_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const Vec& interior_point() const { return interior_; }
  bool contains(const Vec& z, double tol = 1e-12) const;

 private:
  std::vector<Halfspace> constraints_;
  std::vector<Vec> vertices_;
  Vec interior_;
};

struct L2Ball {
  Vec center;
  double radius;
};

// A closed bounded convex body: a Euclidean ball or a polytope. L1 and LInf
// balls are stored as polytopes.
class ConvexBody {
 public:
  static ConvexBody ball(Vec center, double radius, NormKind kind = NormKind::kL2);
  static ConvexBody polytope(HalfspacePolytope p) { return ConvexBody(std::move(p)); }

  std::size_t dimension() const;
  bool is_polytope() const { return std::holds_alternative<HalfspacePolytope>(body_); }
  const HalfspacePolytope& as_polytope() const { return std::get<HalfspacePolytope>(body_); }
  const L2Ball& as_ball() const { return std::get<L2Ball>(body_); }
  bool contains(const Vec& z, double tol = 1e-12) const;
  // Axis-aligned bounding box.
  std::pair<Vec, Vec> bounds() const;

  // C + w and s C (s > 0).
  ConvexBody translated(const Vec& w) const;
  ConvexBody scaled(double s) const;

 private:
  explicit ConvexBody(L2Ball b) : body_(std::move(b)) {}
  explicit ConvexBody(HalfspacePolytope p) : body_(std::move(p)) {}
  std::variant<L2Ball, HalfspacePolytope> body_;
};

// {t : x + t v in C} = [t_min, t_max]. Throws Error for v = 0 and
// Error("line disjoint from body") when the line misses C.
std::pair<double, double> line_range(const ConvexBody& c, const Vec& x, const Vec& v);

// lambda_C(x, v) = sup {t : x + t v in C}.
double lambda(const ConvexBody& c, const Vec& x, const Vec& v);

// Point drawn uniformly from C by rejection from its bounding box.
Vec sample_point(const ConvexBody& c, std::uint64_t seed, std::uint64_t index);
Vec sample_unit(std::size_t dim, std::uint64_t seed, std::uint64_t index);

struct ProbeRow {
  std::size_t sample;
  double lhs;
  double rhs;
  double violation;  // max(rhs - lhs, 0)
};

struct ProbeReport {
  std::size_t samples = 0;
  double max_violation = 0;
  double min_lambda = 0;  // smallest lambda seen at points of C
  bool passed = false;
  std::vector<ProbeRow> rows;
};

// lambda(t x + (1-t) y, v) >= t lambda(x, v) + (1-t) lambda(y, v) - 1e-9 for
// random x, y in C, t in [0, 1] and one random unit v; also lambda >= 0 on C.
ProbeReport concavity_probe(const ConvexBody& c, std::size_t samples, std::uint64_t seed);

struct SemicontinuityReport {
  double lambda_limit;  // lambda(x, v)
  double limsup;        // max over the last tenth of the path
  double final_gap;     // |lambda(x_last, v) - lambda(x, v)|
  bool upper_semicontinuous = false;
  bool continuous = false;  // final_gap <= 1e-9; asserted for polytopes only
  bool passed = false;
  std::vector<ProbeRow> rows;  // lhs = lambda(x_i, v), rhs = lambda(x, v)
};

SemicontinuityReport semicontinuity_probe(const ConvexBody& c, const std::vector<Vec>& path, const Vec& x,
                                          const Vec& v);

// Regular k-gon circumscribing a disc, one edge normal along angle 0.
HalfspacePolytope circumscribed_polygon(const L2Ball& disc, std::size_t k);

struct PolytopeApproximation {
  HalfspacePolytope polytope;
  std::size_t k = 0;
  double sampled_gap = 0;  // max of lambda_P - lambda_C over the samples for the final k
  double min_gap = 0;      // min of the same; >= -1e-12 by containment
  std::vector<std::pair<std::size_t, double>> history;  // (k, sampled gap) per round
};

// Doubles k from 8 until the sampled max of lambda_P - lambda_C over
// `samples` points x of C, for the fixed direction v, is below delta / 2 and
// the worst case over all of C, r tan(pi / k) / |v|, is below delta.
// The disc must be planar; delta > 0.
PolytopeApproximation approximate_by_polytope(const L2Ball& disc, double delta, const Vec& v,
                                              std::size_t samples = 10000, std::uint64_t seed = 1);

struct MidpointReport {
  std::size_t configs = 0;
  std::size_t failures = 0;
  std::size_t max_index = 0;  // largest N needed over all sampled y
  std::size_t sequence_length = 0;
  bool passed() const { return failures == 0; }
};

// Random L2 configurations b_n -> b with x in the closed 2eps-ball around
// every b_n (half of them with |x - b| = 2 eps). For c = (b + x) / 2 and
// sampled y in the closed eps-ball around c, finds N such that y lies in
// the closed 2eps-ball around b_n for every n >= N, testing membership with
// lambda from the centre. A configuration fails when some y has no such N
// within the sequence. Configurations are numbered from first_config, so a
// single one can be rerun on its own.
MidpointReport midpoint_lemma_harness(std::size_t configs, std::size_t sequence_length, std::size_t y_samples,
                                      std::uint64_t seed, std::size_t first_config = 0);

}  // namespace advcalc::gauge
