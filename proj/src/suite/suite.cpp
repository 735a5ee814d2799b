#include "advcalc/suite.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "advcalc/errors.hpp"
#include "advcalc/gauge.hpp"
#include "advcalc/morphology.hpp"
#include "advcalc/optimize.hpp"
#include "advcalc/risk.hpp"
#include "advcalc/strings.hpp"

namespace advcalc::suite {

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

namespace {

using io::to_json;
using strings::StringSet;
using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Comparisons. With a fault every comparison gets a far-away element added to
// the side that must not contain it, so the relation fails for real.

const Rational kFar = 1000000;

std::string describe(const GridSet& g) { return std::to_string(g.count()) + " cells"; }

std::string describe(const StringSet& s) {
  std::string out = "{";
  for (const auto& w : s) out += (out.size() > 1 ? "," : "") + ("\"" + w + "\"");
  return out + "}";
}

GridSet far_cell(const GridSet& a, const GridSet& b) {
  Index k(a.dimension());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = std::min(a.box().lo[i], b.box().lo[i]) - 5;
  return GridSet::from_cells(a.lattice(), {k});
}

std::string first_difference(const GridSet& a, const GridSet& b) {
  auto diff = symmetric_difference(a, b).cells();
  if (diff.empty()) return {};
  std::string out = "; differs at (";
  for (std::size_t i = 0; i < diff[0].size(); ++i) out += (i ? "," : "") + std::to_string(diff[0][i]);
  return out + ")";
}

class Checker {
 public:
  explicit Checker(bool fault) : fault_(fault) {}

  bool eq(const IntervalSet& l, IntervalSet r) {
    if (fault_) r = set_union(r, IntervalSet::closed({{kFar, kFar + 1}}));
    return record(closure_equal(l, r), l.to_string(), r.to_string(), symmetric_difference(l, r).length().get_d());
  }
  bool subset(IntervalSet l, const IntervalSet& r) {
    if (fault_) l = set_union(l, IntervalSet::closed({{kFar, kFar + 1}}));
    return record(is_subset(l.closure(), r.closure()), l.to_string(), r.to_string(),
                  difference(l, r).length().get_d());
  }
  bool empty(IntervalSet s) {
    if (fault_) s = set_union(s, IntervalSet::closed({{kFar, kFar + 1}}));
    return record(s.empty(), s.to_string(), "{}", s.length().get_d());
  }

  bool eq(const GridSet& l, GridSet r) {
    if (fault_) r = set_union(r, far_cell(l, r));
    const bool ok = l == r;
    const double v = ok ? 0 : static_cast<double>(symmetric_difference(l, r).count());
    return record(ok, describe(l) + (ok ? "" : first_difference(l, r)), describe(r), v);
  }
  bool subset(GridSet l, const GridSet& r) {
    if (fault_) l = set_union(l, far_cell(l, r));
    const bool ok = is_subset(l, r);
    const double v = ok ? 0 : static_cast<double>(difference(l, r).count());
    return record(ok, describe(l) + (ok ? "" : first_difference(l, intersection(l, r))), describe(r), v);
  }
  bool empty(GridSet s) {
    if (fault_) s = set_union(s, far_cell(s, s));
    return record(s.empty(), describe(s), "0 cells", static_cast<double>(s.count()));
  }

  bool eq(const Rational& l, Rational r) {
    if (fault_) r += 1;
    return record(l == r, to_string(l), to_string(r), Rational(abs(l - r)).get_d());
  }
  bool le(const Rational& l, Rational r) {
    if (fault_) r -= 1;
    return record(l <= r, to_string(l), to_string(r), l > r ? Rational(l - r).get_d() : 0.0);
  }

  bool eq(const StringSet& l, StringSet r) {
    if (fault_) r.insert("#");
    std::size_t diff = 0;
    for (const auto& w : l) diff += r.contains(w) ? 0 : 1;
    for (const auto& w : r) diff += l.contains(w) ? 0 : 1;
    return record(diff == 0, describe(l), describe(r), static_cast<double>(diff));
  }

  // l <= bound for measured doubles.
  bool le(double l, double bound) {
    if (fault_) bound -= 1;
    return record(l <= bound, format_double(l), format_double(bound), std::max(l - bound, 0.0));
  }

  const Outcome& outcome() const { return out_; }

 private:
  bool record(bool pass, std::string l, std::string r, double violation) {
    out_.violation = std::max(out_.violation, violation);
    if (out_.pass) {
      out_.lhs = std::move(l);
      out_.rhs = std::move(r);
      out_.pass = pass;
    }
    return pass;
  }

  bool fault_;
  Outcome out_;
};

// ---------------------------------------------------------------------------
// Random inputs.

std::uint64_t below(Rng& rng, std::uint64_t n) { return rng() % n; }

Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

double unit_real(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

const std::vector<Rational>& eta_values() {
  static const std::vector<Rational> kEtas{0, frac(1, 4), frac(1, 3), frac(1, 2), frac(2, 3), frac(3, 4), 1};
  return kEtas;
}

// Up to 8 closed intervals with endpoints on the 1/12 grid inside [-6, 9].
IntervalSet random_interval_set(Rng& rng) {
  std::vector<std::pair<Rational, Rational>> raw;
  const auto n = below(rng, 9);
  for (std::uint64_t i = 0; i < n; ++i) {
    Rational lo = frac(static_cast<long>(below(rng, 145)) - 72, 12);
    Rational len = frac(static_cast<long>(below(rng, 37)), 12);
    raw.push_back({lo, lo + len});
  }
  return IntervalSet::closed(raw);
}

template <class X>
BasicDistribution<X> random_weights(Rng& rng, const std::vector<X>& support) {
  std::vector<long> w(support.size());
  long total = 0;
  for (auto& x : w) total += x = 1 + static_cast<long>(below(rng, 6));
  std::vector<typename BasicDistribution<X>::Atom> atoms;
  for (std::size_t i = 0; i < support.size(); ++i) {
    atoms.push_back({support[i], frac(w[i], total), eta_values()[below(rng, eta_values().size())]});
  }
  return BasicDistribution<X>::make(std::move(atoms));
}

LabeledDistribution random_line_distribution(Rng& rng) {
  std::set<Point> support;
  const auto n = 1 + below(rng, 10);
  while (support.size() < n) support.insert(Point{frac(static_cast<long>(below(rng, 193)) - 96, 12)});
  return random_weights(rng, std::vector<Point>(support.begin(), support.end()));
}

LabeledDistribution random_lattice_distribution(Rng& rng, const Index& lo, const Index& extent,
                                                std::size_t max_atoms) {
  std::set<Point> support;
  std::size_t cells = 1;
  for (auto e : extent) cells *= static_cast<std::size_t>(e);
  const auto n = std::min<std::size_t>(1 + below(rng, max_atoms), cells);
  while (support.size() < n) {
    std::vector<Rational> x;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      x.push_back(Rational(static_cast<long>(lo[i] + static_cast<std::int64_t>(below(rng, extent[i])))));
    }
    support.insert(Point(x));
  }
  return random_weights(rng, std::vector<Point>(support.begin(), support.end()));
}

GridSet random_mask(Rng& rng, std::int64_t w, std::int64_t h) {
  GridSet g(Lattice::unit(2), GridBox{{0, 0}, {w, h}});
  if (below(rng, 2) == 0) {
    static const int kDensity[] = {25, 50, 75, 90};
    const int d = kDensity[below(rng, 4)];
    for (std::size_t i = 0; i < g.box().volume(); ++i) g.set_flat(i, static_cast<int>(below(rng, 100)) < d);
  } else {
    const auto rects = 1 + below(rng, 4);
    for (std::uint64_t r = 0; r < rects; ++r) {
      const auto x0 = static_cast<std::int64_t>(below(rng, w)), y0 = static_cast<std::int64_t>(below(rng, h));
      const auto x1 = std::min<std::int64_t>(w, x0 + 1 + static_cast<std::int64_t>(below(rng, w / 2)));
      const auto y1 = std::min<std::int64_t>(h, y0 + 1 + static_cast<std::int64_t>(below(rng, h / 2)));
      for (auto x = x0; x < x1; ++x) {
        for (auto y = y0; y < y1; ++y) g.set(Index{x, y});
      }
    }
  }
  return g;
}

gauge::Vec vec2(double x, double y) {
  gauge::Vec v(2);
  v << x, y;
  return v;
}

gauge::Vec random_direction(Rng& rng) {
  const double th = 2 * std::numbers::pi * unit_real(rng);
  return vec2(std::cos(th), std::sin(th));
}

// Planar polytope whose normals are spread around the circle, so it is bounded.
gauge::ConvexBody random_polytope(Rng& rng) {
  const auto k = 5 + below(rng, 4);
  const double offset = 2 * std::numbers::pi * unit_real(rng);
  std::vector<gauge::Halfspace> hs;
  for (std::uint64_t i = 0; i < k; ++i) {
    const double th = offset + 2 * std::numbers::pi * (static_cast<double>(i) + 0.4 * unit_real(rng)) /
                                   static_cast<double>(k);
    hs.push_back({vec2(std::cos(th), std::sin(th)), 0.5 + unit_real(rng)});
  }
  return gauge::ConvexBody::polytope(gauge::HalfspacePolytope::make(std::move(hs)));
}

strings::SwapFamily random_swaps(Rng& rng, std::size_t max_len, bool identity) {
  strings::SwapFamily f;
  f.include_identity = identity;
  const auto n = 1 + below(rng, 3);
  while (f.pairs.size() < n) {
    const std::size_t i = 1 + below(rng, max_len), j = 1 + below(rng, max_len);
    if (i != j) f.pairs.push_back({std::min(i, j), std::max(i, j)});
  }
  return f;
}

StringSet random_strings(Rng& rng, const strings::StringUniverse& u, int percent) {
  StringSet s;
  for (const auto& w : u.all()) {
    if (static_cast<int>(below(rng, 100)) < percent) s.insert(w);
  }
  return s;
}

// ---------------------------------------------------------------------------
// JSON helpers for case fields.

const json& at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("case is missing '") + key + "'");
  return j.at(key);
}

Rational rat(const json& j, const char* key) { return io::rational_from_json(at(j, key)); }

double num(const json& j, const char* key) {
  const json& v = at(j, key);
  if (!v.is_number()) throw ParseError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::size_t count(const json& j, const char* key) {
  const json& v = at(j, key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ParseError(std::string("'") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

Rational nonnegative(const Rational& r) {
  if (r < 0) throw ParseError("radius must be nonnegative");
  return r;
}

std::vector<Rational> radii(const json& j) {
  auto out = io::rationals_from_json(at(j, "eps"));
  for (const auto& r : out) nonnegative(r);
  return out;
}

IntervalContext line_ctx(const Rational& eps) { return {Norm::l1(1), eps, std::nullopt}; }

StringSet string_set(const json& j) {
  if (!j.is_array()) throw ParseError("string set must be an array");
  StringSet s;
  for (const auto& w : j) s.insert(w.get<std::string>());
  return s;
}

json to_json(const StringSet& s) { return json(std::vector<std::string>(s.begin(), s.end())); }

json to_json(const strings::SwapFamily& f) {
  json pairs = json::array();
  for (const auto& [i, j] : f.pairs) pairs.push_back({i, j});
  return {{"pairs", pairs}, {"identity", f.include_identity}};
}

strings::SwapFamily swaps(const json& j) {
  strings::SwapFamily f;
  for (const auto& p : at(j, "pairs")) {
    if (!p.is_array() || p.size() != 2) throw ParseError("swap pairs are [i, j]");
    f.pairs.push_back({p[0].get<std::size_t>(), p[1].get<std::size_t>()});
  }
  f.include_identity = at(j, "identity").get<bool>();
  f.validate();
  return f;
}

strings::StringUniverse universe(const json& j) {
  return strings::StringUniverse::make(at(j, "alphabet").get<std::string>(), count(j, "max_len"));
}

json to_json(const SearchInstance& inst) {
  json origin = json::array();
  for (const auto& o : inst.lattice.origin) origin.push_back(to_string(o));
  return {{"origin", origin},         {"cell", to_string(inst.lattice.cell)}, {"lo", inst.domain.lo},
          {"extent", inst.domain.extent}, {"dist", to_json(inst.dist)},       {"norm", inst.norm.tag()},
          {"eps", to_string(inst.eps)}};
}

SearchInstance instance(const json& j) {
  Lattice lat{io::rationals_from_json(at(j, "origin")), rat(j, "cell")};
  GridBox box{at(j, "lo").get<Index>(), at(j, "extent").get<Index>()};
  if (box.lo.size() != lat.dimension() || box.extent.size() != lat.dimension()) {
    throw ParseError("instance box dimension does not match the lattice");
  }
  return {lat, box, io::distribution_from_json(at(j, "dist")), io::norm_from_json(at(j, "norm"), lat.dimension()),
          nonnegative(rat(j, "eps"))};
}

// ---------------------------------------------------------------------------
// Families.

using Generator = std::function<json(Rng&, std::size_t)>;
using Evaluator = std::function<void(const json&, Checker&)>;

struct Family {
  std::string name;
  std::size_t default_cases;
  bool fixed;  // case count does not follow SuiteOptions::cases
  Generator make;
  Evaluator check;
};

struct Suite {
  std::string name;
  std::vector<Family> families;
};

json one_set_case(Rng& rng, std::size_t) {
  return {{"set", to_json(random_interval_set(rng))}, {"eps", {"1/4", "1/3", "1/2", "1"}}};
}

Suite identities_suite() {
  auto per_eps = [](auto body) {
    return [body](const json& c, Checker& ck) {
      const IntervalSet a = io::interval_set_from_json(at(c, "set"));
      for (const auto& e : radii(c)) {
        if (!body(a, line_ctx(e), ck)) return;
      }
    };
  };
  auto compose = [](bool dil) {
    return [dil](const json& c, Checker& ck) {
      const IntervalSet a = io::interval_set_from_json(at(c, "set"));
      const auto eps = radii(c);
      for (const auto& e1 : eps) {
        for (const auto& e2 : eps) {
          auto op = [dil](const IntervalSet& s, const Rational& e) {
            return dil ? dilate(s, line_ctx(e)) : erode(s, line_ctx(e));
          };
          if (!ck.eq(op(op(a, e1), e2), op(a, e1 + e2))) return;
        }
      }
    };
  };
  Suite s{"identities", {}};
  s.families.push_back({"compose_dilate", 1000, false, one_set_case, compose(true)});
  s.families.push_back({"compose_erode", 1000, false, one_set_case, compose(false)});
  s.families.push_back({"opening_decomposition", 1000, false, one_set_case,
                        per_eps([](const IntervalSet& a, const IntervalContext& ctx, Checker& ck) {
                          const auto op = opening(a, ctx), fr = fringe(a, ctx);
                          return ck.eq(set_union(op, fr), a) && ck.empty(intersection(op, fr));
                        })});
  s.families.push_back({"closing_decomposition", 1000, false, one_set_case,
                        per_eps([](const IntervalSet& a, const IntervalContext& ctx, Checker& ck) {
                          const auto fc = complement_fringe(a, ctx);
                          return ck.eq(closing(a, ctx), set_union(a, fc)) && ck.empty(intersection(a, fc));
                        })});
  s.families.push_back({"dilate_idempotence", 1000, false, one_set_case,
                        per_eps([](const IntervalSet& a, const IntervalContext& ctx, Checker& ck) {
                          return ck.eq(dilate(closing(a, ctx), ctx), dilate(a, ctx));
                        })});
  s.families.push_back({"erode_idempotence", 1000, false, one_set_case,
                        per_eps([](const IntervalSet& a, const IntervalContext& ctx, Checker& ck) {
                          return ck.eq(erode(opening(a, ctx), ctx), erode(a, ctx));
                        })});
  s.families.push_back({"family_relations", 1000, false,
                        [](Rng& rng, std::size_t) {
                          json sets = json::array();
                          const auto n = 1 + below(rng, 5);
                          for (std::uint64_t i = 0; i < n; ++i) sets.push_back(to_json(random_interval_set(rng)));
                          return json{{"sets", sets}, {"eps", {"1/4", "1/3", "1/2", "1"}}};
                        },
                        [](const json& c, Checker& ck) {
                          std::vector<IntervalSet> sets;
                          for (const auto& s : at(c, "sets")) sets.push_back(io::interval_set_from_json(s));
                          if (sets.empty() || sets.size() > 5) throw ParseError("families hold 1 to 5 sets");
                          for (const auto& e : radii(c)) {
                            for (const auto& r : finite_family_identities(sets, line_ctx(e)).checks) {
                              const bool equality = r.name.find("==") != std::string::npos;
                              if (!(equality ? ck.eq(r.lhs, r.rhs) : ck.subset(r.lhs, r.rhs))) return;
                            }
                          }
                        }});
  s.families.push_back({"empty_fringes", 1000, false, one_set_case,
                        per_eps([](const IntervalSet& a, const IntervalContext& ctx, Checker& ck) {
                          return ck.empty(fringe(dilate(a, ctx), ctx)) &&
                                 ck.empty(complement_fringe(erode(a, ctx), ctx)) &&
                                 ck.empty(erode(fringe(a, ctx), ctx));
                        })});
  return s;
}

const char* const kGridNorms[] = {"l1", "l2", "linf"};

json grid_case(Rng& rng, std::size_t i) {
  static const char* const kEps[] = {"1", "3/2", "2", "3"};
  return {{"grid", to_json(random_mask(rng, 32, 32))}, {"norm", kGridNorms[i % 3]}, {"eps", kEps[below(rng, 4)]}};
}

GridContext grid_ctx(const json& c, const GridSet& a) {
  return {io::norm_from_json(at(c, "norm"), a.dimension()), nonnegative(rat(c, "eps")), std::nullopt};
}

Suite grid_suite() {
  Suite s{"grid", {}};
  s.families.push_back({"extensive", 500, false, grid_case, [](const json& c, Checker& ck) {
                          const GridSet a = io::grid_from_json(at(c, "grid"));
                          const auto ctx = grid_ctx(c, a);
                          ck.subset(a, dilate(a, ctx)) && ck.subset(erode(a, ctx), a);
                        }});
  s.families.push_back({"monotone", 500, false,
                        [](Rng& rng, std::size_t i) {
                          json c = grid_case(rng, i);
                          c["extra"] = to_json(random_mask(rng, 32, 32));
                          return c;
                        },
                        [](const json& c, Checker& ck) {
                          const GridSet a = io::grid_from_json(at(c, "grid"));
                          const GridSet b = set_union(a, io::grid_from_json(at(c, "extra")));
                          const auto ctx = grid_ctx(c, a);
                          ck.subset(dilate(a, ctx), dilate(b, ctx)) && ck.subset(erode(a, ctx), erode(b, ctx));
                        }});
  s.families.push_back({"padding", 500, false,
                        [](Rng& rng, std::size_t i) {
                          json c = grid_case(rng, i);
                          c["extra_margin"] = below(rng, 4);
                          return c;
                        },
                        [](const json& c, Checker& ck) {
                          const GridSet a = io::grid_from_json(at(c, "grid"));
                          const auto free = grid_ctx(c, a);
                          const auto reach = floor(Rational(2 * free.eps / a.lattice().cell)).get_si();
                          const GridBox domain = a.box().expanded(reach + 1 + static_cast<long>(count(c, "extra_margin")));
                          const GridContext padded{free.norm, free.eps, domain, DomainPolicy::kPadded};
                          const GridSet ero = erode(a, free);
                          ck.eq(ero, erode(a, padded)) && ck.eq(dilate(a, free), dilate(a, padded)) &&
                              ck.eq(ero, complement(dilate(complement(a, padded), padded), padded));
                        }});
  s.families.push_back({"compose", 500, false,
                        [](Rng& rng, std::size_t i) {
                          return json{{"grid", to_json(random_mask(rng, 32, 32))},
                                      {"norm", i % 2 == 0 ? "l1" : "linf"},
                                      {"eps1", std::to_string(1 + below(rng, 3))},
                                      {"eps2", std::to_string(1 + below(rng, 3))}};
                        },
                        [](const json& c, Checker& ck) {
                          const GridSet a = io::grid_from_json(at(c, "grid"));
                          const Norm norm = io::norm_from_json(at(c, "norm"), a.dimension());
                          const Rational e1 = nonnegative(rat(c, "eps1")), e2 = nonnegative(rat(c, "eps2"));
                          auto ctx = [&](const Rational& e) { return GridContext{norm, e, std::nullopt}; };
                          ck.eq(dilate(dilate(a, ctx(e1)), ctx(e2)), dilate(a, ctx(e1 + e2))) &&
                              ck.eq(erode(erode(a, ctx(e1)), ctx(e2)), erode(a, ctx(e1 + e2)));
                        }});
  s.families.push_back({"l2_counterexample", 1, true,
                        [](Rng&, std::size_t) {
                          return json{{"norm", "l2"}, {"eps1", "1"}, {"eps2", "2"}, {"point", {2, 2}}};
                        },
                        [](const json& c, Checker& ck) {
                          const Index p = at(c, "point").get<Index>();
                          const Lattice lat = Lattice::unit(p.size());
                          const Norm norm = io::norm_from_json(at(c, "norm"), p.size());
                          const Rational e1 = nonnegative(rat(c, "eps1")), e2 = nonnegative(rat(c, "eps2"));
                          const GridSet point = GridSet::from_cells(lat, {p});
                          const GridSet sum = minkowski_dilate(
                              GridSet::from_cells(lat, structuring_element(norm, 1, e1)), structuring_element(norm, 1, e2));
                          const GridSet whole = GridSet::from_cells(lat, structuring_element(norm, 1, e1 + e2));
                          const GridSet witnesses =
                              GridSet::from_cells(lat, radius_composition_witnesses(norm, 1, e1, e2));
                          ck.subset(point, whole) && ck.empty(intersection(point, sum)) && ck.subset(point, witnesses);
                        }});
  return s;
}

json risk_case(Rng& rng, bool grid) {
  static const char* const kLineEps[] = {"1/4", "1/3", "1/2", "1"};
  static const char* const kGridEps[] = {"1/2", "1", "3/2", "2", "5/2"};
  static const char* const kExtra[] = {"0", "1/12", "1/4", "1/2", "1"};
  json c;
  if (grid) {
    c["space"] = "grid";
    c["set"] = to_json(random_mask(rng, 12, 12));
    c["dist"] = to_json(random_lattice_distribution(rng, {-2, -2}, {16, 16}, 10));
    c["norm"] = kGridNorms[below(rng, 3)];
    c["eps"] = kGridEps[below(rng, 5)];
  } else {
    c["space"] = "interval";
    c["set"] = to_json(random_interval_set(rng));
    c["dist"] = to_json(random_line_distribution(rng));
    c["norm"] = "l1";
    c["eps"] = kLineEps[below(rng, 4)];
  }
  c["extra"] = kExtra[below(rng, 5)];
  return c;
}

// Runs body(A, D, risk_at) for either set representation, where risk_at(S, eps)
// is the adversarial risk of S.
template <class Body>
void with_risk_input(const json& c, Checker& ck, Body body) {
  const auto d = io::distribution_from_json(at(c, "dist"));
  const Rational eps = nonnegative(rat(c, "eps"));
  const std::string space = at(c, "space").get<std::string>();
  if (space == "interval") {
    const IntervalSet a = io::interval_set_from_json(at(c, "set"));
    const Norm norm = io::norm_from_json(at(c, "norm"), 1);
    auto ctx = [&](const Rational& e) { return IntervalContext{norm, e, std::nullopt}; };
    body(a, d, eps, ctx, ck);
  } else if (space == "grid") {
    const GridSet a = io::grid_from_json(at(c, "set"));
    const Norm norm = io::norm_from_json(at(c, "norm"), a.dimension());
    auto ctx = [&](const Rational& e) { return GridContext{norm, e, std::nullopt}; };
    body(a, d, eps, ctx, ck);
  } else {
    throw ParseError("space must be interval or grid");
  }
}

Suite risk_suite() {
  Suite s{"risk", {}};
  auto add = [&](const std::string& name, auto body) {
    for (bool grid : {false, true}) {
      s.families.push_back({name + (grid ? "_grid" : "_line"), 500, false,
                            [grid](Rng& rng, std::size_t) { return risk_case(rng, grid); },
                            [body](const json& c, Checker& ck) { with_risk_input(c, ck, body); }});
    }
  };
  add("closing", [](const auto& a, const auto& d, const Rational& e, auto ctx, Checker& ck) {
    ck.le(adversarial_risk(closing(a, ctx(e)), d, ctx(e)), adversarial_risk(a, d, ctx(e)));
  });
  add("opening", [](const auto& a, const auto& d, const Rational& e, auto ctx, Checker& ck) {
    ck.le(adversarial_risk(opening(a, ctx(e)), d, ctx(e)), adversarial_risk(a, d, ctx(e)));
  });
  add("mollify", [](const auto& a, const auto& d, const Rational& e, auto ctx, Checker& ck) {
    ck.le(adversarial_risk(mollify(a, ctx(e)), d, ctx(e)), adversarial_risk(a, d, ctx(e)));
  });
  for (bool grid : {false, true}) {
    s.families.push_back({std::string("monotone") + (grid ? "_grid" : "_line"), 500, false,
                          [grid](Rng& rng, std::size_t) { return risk_case(rng, grid); },
                          [](const json& c, Checker& ck) {
                            const Rational extra = nonnegative(rat(c, "extra"));
                            with_risk_input(c, ck, [&](const auto& a, const auto& d, const Rational& e, auto ctx,
                                                       Checker& k) {
                              k.le(adversarial_risk(a, d, ctx(e)), adversarial_risk(a, d, ctx(e + extra)));
                            });
                          }});
  }
  add("zero", [](const auto& a, const auto& d, const Rational&, auto ctx, Checker& ck) {
    ck.eq(adversarial_risk(a, d, ctx(Rational(0))), standard_risk(a, d));
  });
  add("modes", [](const auto& a, const auto& d, const Rational& e, auto ctx, Checker& ck) {
    ck.eq(adversarial_risk(a, d, ctx(e), RiskMode::kMorphology), adversarial_risk(a, d, ctx(e), RiskMode::kDistance));
  });
  return s;
}

json random_instance_case(Rng& rng, std::size_t) {
  static const char* const kEps[] = {"0", "1/2", "1", "3/2", "2"};
  const Index extent{2 + static_cast<std::int64_t>(below(rng, 3)), 2 + static_cast<std::int64_t>(below(rng, 3))};
  SearchInstance inst{Lattice::unit(2), GridBox{{0, 0}, extent}, random_lattice_distribution(rng, {0, 0}, extent, 6),
                      parse_norm(kGridNorms[below(rng, 3)], 2), parse_rational(kEps[below(rng, 5)])};
  return {{"instance", to_json(inst)}};
}

Suite optimize_suite() {
  Suite s{"optimize", {}};
  s.families.push_back({"oracle_gray", 50, false, random_instance_case, [](const json& c, Checker& ck) {
                          const auto inst = instance(at(c, "instance"));
                          ck.eq(oracle_search(inst, 1).best_risk, gray_code_search(inst).best_risk);
                        }});
  s.families.push_back({"mollified_minimizer", 50, false, random_instance_case, [](const json& c, Checker& ck) {
                          const auto rep = mollified_optimality_check(instance(at(c, "instance")), 1);
                          ck.eq(rep.mollified_risk, rep.oracle.best_risk);
                        }});
  s.families.push_back({"greedy_fixed_point", 50, false, random_instance_case, [](const json& c, Checker& ck) {
                          const auto inst = instance(at(c, "instance"));
                          const auto best = oracle_search(inst, 1);
                          const auto descent = greedy_flip_descent(inst, best.best_set, 64);
                          ck.eq(Rational(static_cast<long>(descent.trace.size()) - 1), 0);
                        }});
  s.families.push_back({"two_atom", 1, true,
                        [](Rng&, std::size_t) {
                          const auto d = LabeledDistribution::make({{Point{0}, frac(1, 2), 1}, {Point{1}, frac(1, 2), 0}});
                          return json{{"instance", to_json(SearchInstance::on_segment(0, 1, 8, d, frac(3, 5)))},
                                      {"expect", "1/2"}};
                        },
                        [](const json& c, Checker& ck) {
                          const auto inst = instance(at(c, "instance"));
                          ck.eq(oracle_search(inst, 1).best_risk, rat(c, "expect")) &&
                              ck.eq(gray_code_search(inst).best_risk, rat(c, "expect"));
                        }});
  return s;
}

Suite gauge_suite() {
  using gauge::ConvexBody;
  using gauge::Vec;
  Suite s{"gauge", {}};
  s.families.push_back({"concavity", 4, true,
                        [](Rng& rng, std::size_t i) {
                          const ConvexBody body = i == 0 ? ConvexBody::ball(vec2(0, 0), 1) : random_polytope(rng);
                          return json{{"body", to_json(body)}, {"samples", 10000}, {"seed", rng() >> 32}};
                        },
                        [](const json& c, Checker& ck) {
                          const auto rep = gauge::concavity_probe(io::body_from_json(at(c, "body")), count(c, "samples"),
                                                                  count(c, "seed"));
                          ck.le(rep.max_violation, 1e-9) && ck.le(-rep.min_lambda, 1e-12);
                        }});
  s.families.push_back(
      {"covariance", 1000, false,
       [](Rng& rng, std::size_t i) {
         const ConvexBody body = i % 2 == 0 ? ConvexBody::ball(vec2(4 * unit_real(rng) - 2, 4 * unit_real(rng) - 2),
                                                                0.25 + 2 * unit_real(rng))
                                            : random_polytope(rng);
         const Vec x = gauge::sample_point(body, rng(), 0);
         return json{{"body", to_json(body)},
                     {"x", to_json(x)},
                     {"v", to_json(random_direction(rng))},
                     {"w", to_json(vec2(10 * unit_real(rng) - 5, 10 * unit_real(rng) - 5))},
                     {"s", 0.25 + 3.75 * unit_real(rng)}};
       },
       [](const json& c, Checker& ck) {
         const ConvexBody body = io::body_from_json(at(c, "body"));
         const Vec x = io::vec_from_json(at(c, "x")), v = io::vec_from_json(at(c, "v")),
                   w = io::vec_from_json(at(c, "w"));
         const double sc = num(c, "s");
         if (!(sc > 0)) throw ParseError("scale must be positive");
         const double l = gauge::lambda(body, x, v);
         const double lt = gauge::lambda(body.translated(w), x + w, v);
         const double ls = gauge::lambda(body.scaled(sc), sc * x, v);
         const double scale = std::max(1.0, std::abs(l));
         ck.le(std::abs(lt - l) / scale, 1e-12) && ck.le(std::abs(ls - sc * l) / (sc * scale), 1e-12);
       }});
  s.families.push_back({"approximation", 4, true,
                        [](Rng& rng, std::size_t) {
                          return json{{"center", {0.0, 0.0}}, {"radius", 1.0},  {"v", to_json(random_direction(rng))},
                                      {"delta", 1e-3},        {"samples", 10000}, {"seed", rng() >> 32}};
                        },
                        [](const json& c, Checker& ck) {
                          const gauge::L2Ball disc{io::vec_from_json(at(c, "center")), num(c, "radius")};
                          const Vec v = io::vec_from_json(at(c, "v"));
                          const double delta = num(c, "delta");
                          const std::size_t samples = count(c, "samples");
                          const std::uint64_t seed = count(c, "seed");
                          const auto approx = gauge::approximate_by_polytope(disc, delta, v, samples, seed);
                          // fresh points, independent of the ones used to pick k
                          const ConvexBody body = ConvexBody::ball(disc.center, disc.radius);
                          const ConvexBody poly = ConvexBody::polytope(approx.polytope);
                          double lo = 0, hi = 0;
                          for (std::size_t i = 0; i < samples; ++i) {
                            const Vec x = gauge::sample_point(body, seed + 1, i);
                            const double gap = gauge::lambda(poly, x, v) - gauge::lambda(body, x, v);
                            lo = i == 0 ? gap : std::min(lo, gap);
                            hi = i == 0 ? gap : std::max(hi, gap);
                          }
                          ck.le(hi, std::nextafter(delta, 0.0)) && ck.le(-lo, 1e-12);
                        }});
  s.families.push_back({"polytope_continuity", 100, false,
                        [](Rng& rng, std::size_t i) {
                          const ConvexBody body = random_polytope(rng);
                          const auto& p = body.as_polytope();
                          Vec x;
                          if (i % 3 == 0) {
                            x = p.vertices()[below(rng, p.vertices().size())];
                          } else if (i % 3 == 1) {
                            const Vec u = random_direction(rng);
                            x = p.interior_point() + gauge::lambda(body, p.interior_point(), u) * u;
                          } else {
                            x = gauge::sample_point(body, rng(), 0);
                          }
                          return json{{"body", to_json(body)},
                                      {"x", to_json(x)},
                                      {"z", to_json(gauge::sample_point(body, rng(), 1))},
                                      {"v", to_json(random_direction(rng))},
                                      {"steps", 48}};
                        },
                        [](const json& c, Checker& ck) {
                          const ConvexBody body = io::body_from_json(at(c, "body"));
                          const Vec x = io::vec_from_json(at(c, "x")), z = io::vec_from_json(at(c, "z"));
                          std::vector<Vec> path;
                          for (std::size_t n = 0; n < count(c, "steps"); ++n) {
                            path.push_back(x + std::ldexp(1.0, -static_cast<int>(n)) * (z - x));
                          }
                          const auto rep = gauge::semicontinuity_probe(body, path, x, io::vec_from_json(at(c, "v")));
                          ck.le(rep.final_gap, 1e-9) && ck.le(rep.limsup - rep.lambda_limit, 1e-9);
                        }});
  s.families.push_back({"midpoint", 100, false,
                        [](Rng&, std::size_t i) {
                          return json{{"config", i}, {"seed", 11}, {"sequence_length", 64}, {"y_samples", 50}};
                        },
                        [](const json& c, Checker& ck) {
                          const std::size_t len = count(c, "sequence_length");
                          const auto rep = gauge::midpoint_lemma_harness(1, len, count(c, "y_samples"), count(c, "seed"),
                                                                         count(c, "config"));
                          ck.eq(Rational(static_cast<long>(rep.failures)), 0) &&
                              ck.le(Rational(static_cast<long>(rep.max_index)), Rational(static_cast<long>(len)));
                        }});
  return s;
}

json strings_base(Rng& rng) {
  static const std::pair<const char*, std::size_t> kUniverses[] = {{"ab", 3}, {"ab", 4}, {"abc", 3}, {"abc", 4}};
  const auto [alphabet, len] = kUniverses[below(rng, 4)];
  return {{"alphabet", alphabet}, {"max_len", len}, {"swaps", to_json(random_swaps(rng, len, below(rng, 2) == 0))}};
}

Suite strings_suite() {
  using namespace strings;
  Suite s{"strings", {}};
  s.families.push_back({"involution", 200, false, [](Rng& rng, std::size_t) { return strings_base(rng); },
                        [](const json& c, Checker& ck) {
                          const auto u = universe(c);
                          for (const auto& p : swaps(at(c, "swaps")).pairs) {
                            StringSet twice;
                            for (const auto& w : u.all()) twice.insert(swap_apply(p, swap_apply(p, w)));
                            if (!ck.eq(twice, u.as_set())) return;
                          }
                        }});
  s.families.push_back({"union", 200, false,
                        [](Rng& rng, std::size_t) {
                          json c = strings_base(rng);
                          const auto u = universe(c);
                          json sets = json::array();
                          const auto n = 1 + below(rng, 4);
                          for (std::uint64_t i = 0; i < n; ++i) sets.push_back(to_json(random_strings(rng, u, 30)));
                          c["sets"] = sets;
                          return c;
                        },
                        [](const json& c, Checker& ck) {
                          const auto u = universe(c);
                          const auto b = swaps(at(c, "swaps"));
                          StringSet all, images;
                          for (const auto& j : at(c, "sets")) {
                            const StringSet a = string_set(j);
                            for (const auto& w : a) {
                              if (!u.contains(w)) throw DomainError("string outside the universe");
                            }
                            all.insert(a.begin(), a.end());
                            const StringSet img = perturb(a, b);
                            images.insert(img.begin(), img.end());
                          }
                          ck.eq(perturb(all, b), images);
                        }});
  s.families.push_back({"decreasing_intersection", 200, false,
                        [](Rng& rng, std::size_t) {
                          json c = strings_base(rng);
                          const auto u = universe(c);
                          json chain = json::array();
                          StringSet cur = random_strings(rng, u, 60);
                          const auto n = 1 + below(rng, 5);
                          for (std::uint64_t i = 0; i < n; ++i) {
                            chain.push_back(to_json(cur));
                            std::erase_if(cur, [&](const std::string&) { return below(rng, 10) < 3; });
                          }
                          c["chain"] = chain;
                          return c;
                        },
                        [](const json& c, Checker& ck) {
                          std::vector<StringSet> chain;
                          for (const auto& j : at(c, "chain")) chain.push_back(string_set(j));
                          const auto r = decreasing_intersection_check(chain, swaps(at(c, "swaps")));
                          ck.eq(r.lhs, r.rhs);
                        }});
  s.families.push_back({"ab_ba", 1, true,
                        [](Rng&, std::size_t) {
                          return json{{"alphabet", "ab"},
                                      {"max_len", 2},
                                      {"swaps", {{"pairs", {{1, 2}}}, {"identity", true}}},
                                      {"dist", {{{"x", "ab"}, {"p", "1/2"}, {"eta", "1"}}, {{"x", "ba"}, {"p", "1/2"}, {"eta", "0"}}}},
                                      {"set", {"ab"}},
                                      {"expect_risk", "1"},
                                      {"expect_best", "1/2"}};
                        },
                        [](const json& c, Checker& ck) {
                          const auto u = universe(c);
                          const auto b = swaps(at(c, "swaps"));
                          const auto d = io::string_distribution_from_json(at(c, "dist"));
                          ck.eq(string_adversarial_risk(string_set(at(c, "set")), d, b, u), rat(c, "expect_risk")) &&
                              ck.eq(string_oracle_search(d, b, u).best_risk, rat(c, "expect_best"));
                        }});
  s.families.push_back({"risk_decrease", 200, false,
                        [](Rng& rng, std::size_t) {
                          json c = strings_base(rng);
                          const auto u = universe(c);
                          c["set"] = to_json(random_strings(rng, u, 50));
                          std::set<std::string> support;
                          const auto n = 1 + below(rng, 5);
                          while (support.size() < n) support.insert(u.all()[below(rng, u.size())]);
                          c["dist"] = to_json(random_weights(rng, std::vector<std::string>(support.begin(), support.end())));
                          return c;
                        },
                        [](const json& c, Checker& ck) {
                          const auto u = universe(c);
                          const auto b = swaps(at(c, "swaps"));
                          const auto d = io::string_distribution_from_json(at(c, "dist"));
                          const StringSet a = string_set(at(c, "set"));
                          const Rational r = string_adversarial_risk(a, d, b, u);
                          ck.le(string_adversarial_risk(erode(perturb(a, b), b, u), d, b, u), r) &&
                              ck.le(string_adversarial_risk(perturb(erode(a, b, u), b), d, b, u), r);
                        }});
  return s;
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> kSuites{identities_suite(), grid_suite(),  risk_suite(),
                                          optimize_suite(),   gauge_suite(), strings_suite()};
  return kSuites;
}

const Suite& find_suite(std::string_view name) {
  for (const auto& s : suites()) {
    if (s.name == name) return s;
  }
  throw Error("unknown suite '" + std::string(name) + "'");
}

const Family& find_family(std::string_view suite, std::string_view family) {
  for (const auto& f : find_suite(suite).families) {
    if (f.name == family) return f;
  }
  throw ParseError("unknown family '" + std::string(family) + "' in suite '" + std::string(suite) + "'");
}

std::uint64_t name_hash(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

}  // namespace

Outcome evaluate_case(const json& c) {
  if (!c.is_object()) throw ParseError("a case must be a JSON object");
  const auto& suite = at(c, "suite");
  const auto& family = at(c, "family");
  if (!suite.is_string() || !family.is_string()) throw ParseError("suite and family must be strings");
  const Family& f = find_family(suite.get<std::string>(), family.get<std::string>());
  Checker ck(c.value("fault", false));
  try {
    f.check(c, ck);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed case: ") + e.what());
  }
  return ck.outcome();
}

bool SuiteResult::passed() const {
  for (const auto& f : families) {
    if (f.failures) return false;
  }
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.name);
    return out;
  }();
  return kNames;
}

std::vector<std::pair<std::string, std::vector<json>>> generate_suite(const std::string& name,
                                                                      const SuiteOptions& opts) {
  const Suite& s = find_suite(name);
  std::vector<std::pair<std::string, std::vector<json>>> out;
  bool injected = !opts.inject.has_value();
  for (const auto& f : s.families) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(name_hash(s.name + "." + f.name))};
    Rng rng(seq);
    const std::size_t n = f.fixed ? f.default_cases : opts.cases.value_or(f.default_cases);
    std::vector<json> cases;
    for (std::size_t i = 0; i < n; ++i) {
      json c = f.make(rng, i);
      c["suite"] = s.name;
      c["family"] = f.name;
      c["case"] = i;
      cases.push_back(std::move(c));
    }
    if (opts.inject && (*opts.inject == f.name || *opts.inject == s.name + "." + f.name) && !cases.empty()) {
      cases.front()["fault"] = true;
      injected = true;
    }
    out.emplace_back(f.name, std::move(cases));
  }
  if (!injected) throw Error("no family '" + *opts.inject + "' with cases in suite '" + name + "'");
  return out;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  auto generated = generate_suite(name, opts);
  struct Job {
    std::size_t family;
    std::size_t index;
  };
  std::vector<Job> jobs;
  SuiteResult result{name, {}};
  for (std::size_t f = 0; f < generated.size(); ++f) {
    FamilyResult fr{name, generated[f].first, generated[f].second.size(), 0, 0, {}};
    for (std::size_t i = 0; i < generated[f].second.size(); ++i) {
      fr.records.push_back({std::to_string(i), {}, std::move(generated[f].second[i]), {}});
      jobs.push_back({f, i});
    }
    result.families.push_back(std::move(fr));
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      CaseRecord& rec = result.families[jobs[j].family].records[jobs[j].index];
      try {
        rec.outcome = evaluate_case(rec.input);
      } catch (const std::exception& e) {
        rec.outcome = {false, "error", e.what(), 0};
      }
    }
  };
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  for (auto& f : result.families) {
    for (const auto& r : f.records) {
      if (!r.outcome.pass) ++f.failures;
      f.max_violation = std::max(f.max_violation, r.outcome.violation);
    }
  }
  return result;
}

Format parse_format(std::string_view s) {
  if (s == "csv") return Format::kCsv;
  if (s == "json") return Format::kJson;
  throw ParseError("format must be csv or json");
}

int write_suite(const SuiteResult& r, const std::filesystem::path& out_dir, Format format) {
  namespace fs = std::filesystem;
  const fs::path wdir = out_dir / "witnesses";
  std::error_code ec;
  fs::remove_all(wdir, ec);

  json summary = json::array(), cases = json::array();
  std::ostringstream summary_csv, cases_csv;
  summary_csv << "suite,cases,failures,max_violation\n";
  cases_csv << "suite,case_id,status,lhs,rhs,witness_path\n";
  for (const auto& f : r.families) {
    summary_csv << io::csv_field(f.label()) << ',' << f.cases << ',' << f.failures << ','
                << format_double(f.max_violation) << '\n';
    summary.push_back({{"suite", f.label()}, {"cases", f.cases}, {"failures", f.failures}, {"max_violation", f.max_violation}});
    for (const auto& rec : f.records) {
      std::string witness;
      if (!rec.outcome.pass) {
        witness = "witnesses/" + f.label() + "." + rec.case_id + ".json";
        json w = rec.input;
        w["observed"] = {{"lhs", rec.outcome.lhs}, {"rhs", rec.outcome.rhs}, {"violation", rec.outcome.violation}};
        io::write_json(out_dir / witness, w);
      }
      const char* status = rec.outcome.pass ? "pass" : (rec.outcome.lhs == "error" ? "error" : "fail");
      cases_csv << io::csv_field(f.label()) << ',' << rec.case_id << ',' << status << ','
                << io::csv_field(rec.outcome.lhs) << ',' << io::csv_field(rec.outcome.rhs) << ',' << witness << '\n';
      cases.push_back({{"suite", f.label()},
                       {"case_id", rec.case_id},
                       {"status", status},
                       {"lhs", rec.outcome.lhs},
                       {"rhs", rec.outcome.rhs},
                       {"witness_path", witness}});
    }
  }
  if (format == Format::kCsv) {
    io::write_text(out_dir / "summary.csv", summary_csv.str());
    io::write_text(out_dir / "cases.csv", cases_csv.str());
  } else {
    io::write_json(out_dir / "summary.json", summary);
    io::write_json(out_dir / "cases.json", cases);
  }
  return r.passed() ? 0 : 1;
}

Replay replay_witness(const std::filesystem::path& path) {
  Replay r;
  try {
    r.outcome = evaluate_case(io::read_json(path));
    r.status = r.outcome.pass ? ReplayStatus::kHolds : ReplayStatus::kReproduced;
    r.message = r.outcome.pass ? "relation holds" : "failure reproduced";
  } catch (const std::exception& e) {
    r.status = ReplayStatus::kMalformed;
    r.message = e.what();
  }
  return r;
}

}  // namespace advcalc::suite
