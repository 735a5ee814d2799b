#include "advcalc/io.hpp"

#include <fstream>
#include <sstream>

#include "advcalc/errors.hpp"

namespace advcalc::io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Index index_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("index must be an array");
  Index k;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError("index entries must be integers");
    k.push_back(v.get<std::int64_t>());
  }
  return k;
}

Lattice lattice_from_json(const json& j) {
  Lattice lat{rationals_from_json(field(j, "origin")), rational_from_json(field(j, "cell"))};
  if (lat.cell <= 0) throw ParseError("cell size must be positive");
  if (lat.origin.empty() || lat.origin.size() > 3) throw ParseError("grids have dimension 1 to 3");
  return lat;
}

json rationals_to_json(std::span<const Rational> v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_json(r));
  return out;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>()).get_d();
  throw ParseError("expected a number");
}

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rationals must be strings such as \"3/2\"");
}

json to_json(const Rational& r) { return to_string(r); }

std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

IntervalSet interval_set_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("interval set must be a JSON array");
  std::vector<Interval> raw;
  for (const auto& item : j) {
    if (item.is_array()) {
      if (item.size() != 2) throw ParseError("interval needs two endpoints");
      raw.push_back(Interval::closed(rational_from_json(item[0]), rational_from_json(item[1])));
    } else if (item.is_object()) {
      raw.push_back({rational_from_json(field(item, "lo")), rational_from_json(field(item, "hi")),
                     item.value("lo_closed", true), item.value("hi_closed", true)});
    } else {
      throw ParseError("interval must be a pair or an object");
    }
  }
  return IntervalSet::from_intervals(std::move(raw));
}

json to_json(const IntervalSet& s) {
  json out = json::array();
  for (const auto& iv : s.intervals()) {
    if (iv.lo_closed && iv.hi_closed) {
      out.push_back(json::array({to_string(iv.lo), to_string(iv.hi)}));
    } else {
      out.push_back(
          {{"lo", to_string(iv.lo)}, {"hi", to_string(iv.hi)}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}});
    }
  }
  return out;
}

GridSet grid_from_json(const json& j) {
  Lattice lat = lattice_from_json(j);
  GridBox box{index_from_json(field(j, "lo")), index_from_json(field(j, "extent"))};
  if (box.lo.size() != lat.dimension() || box.extent.size() != lat.dimension()) {
    throw ParseError("grid box dimension does not match the origin");
  }
  for (auto e : box.extent) {
    if (e < 0) throw ParseError("extent must be nonnegative");
  }
  GridSet g(lat, box);
  for (const auto& c : field(j, "cells")) {
    Index k = index_from_json(c);
    if (!box.contains(k)) throw ParseError("grid cell outside its box");
    g.set(k);
  }
  return g;
}

json to_json(const GridSet& g) {
  json cells = json::array();
  for (const auto& c : g.cells()) cells.push_back(c);
  return {{"origin", rationals_to_json(g.lattice().origin)},
          {"cell", to_string(g.lattice().cell)},
          {"lo", g.box().lo},
          {"extent", g.box().extent},
          {"cells", cells}};
}

LabeledDistribution distribution_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("distribution must be a JSON array");
  std::vector<LabeledDistribution::Atom> atoms;
  for (const auto& a : j) {
    const json& x = field(a, "x");
    Point pt = x.is_array() ? Point(rationals_from_json(x)) : Point{rational_from_json(x)};
    atoms.push_back({std::move(pt), rational_from_json(field(a, "p")), rational_from_json(field(a, "eta"))});
  }
  return LabeledDistribution::make(std::move(atoms));
}

json to_json(const LabeledDistribution& d) {
  json out = json::array();
  for (const auto& a : d.atoms()) {
    out.push_back({{"x", rationals_to_json(a.x.coords())}, {"p", to_string(a.p)}, {"eta", to_string(a.eta)}});
  }
  return out;
}

strings::StringDistribution string_distribution_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("distribution must be a JSON array");
  std::vector<strings::StringDistribution::Atom> atoms;
  for (const auto& a : j) {
    const json& x = field(a, "x");
    if (!x.is_string()) throw ParseError("string atoms need a string x");
    atoms.push_back({x.get<std::string>(), rational_from_json(field(a, "p")), rational_from_json(field(a, "eta"))});
  }
  return strings::StringDistribution::make(std::move(atoms));
}

json to_json(const strings::StringDistribution& d) {
  json out = json::array();
  for (const auto& a : d.atoms()) out.push_back({{"x", a.x}, {"p", to_string(a.p)}, {"eta", to_string(a.eta)}});
  return out;
}

Norm norm_from_json(const json& j, std::size_t dim) {
  if (j.is_string()) return parse_norm(j.get<std::string>(), dim);
  const std::string kind = field(j, "kind").get<std::string>();
  const std::size_t d = j.value("dim", dim);
  if (kind == "l1") return Norm::l1(d);
  if (kind == "l2") return Norm::l2(d);
  if (kind == "linf") return Norm::linf(d);
  if (kind == "wlinf") return Norm::weighted_linf(rationals_from_json(field(j, "weights")));
  if (kind == "poly") {
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : field(j, "rows")) rows.push_back(rationals_from_json(r));
    return Norm::polytope_gauge(std::move(rows));
  }
  throw ParseError("unknown norm kind '" + kind + "'");
}

json to_json(const Norm& n) { return n.tag(); }

gauge::Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of numbers");
  gauge::Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number_from_json(j[i]);
  return v;
}

json to_json(const gauge::Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

gauge::ConvexBody body_from_json(const json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "ball") {
    const std::string norm = j.value("norm", std::string("l2"));
    NormKind kind = norm == "l2" ? NormKind::kL2 : norm == "l1" ? NormKind::kL1 : norm == "linf" ? NormKind::kLInf
                                                                                             : throw ParseError("ball norm must be l1, l2 or linf");
    return gauge::ConvexBody::ball(vec_from_json(field(j, "center")), number_from_json(field(j, "radius")), kind);
  }
  if (type == "polytope") {
    std::vector<gauge::Halfspace> hs;
    for (const auto& h : field(j, "halfspaces")) hs.push_back({vec_from_json(field(h, "a")), number_from_json(field(h, "b"))});
    return gauge::ConvexBody::polytope(gauge::HalfspacePolytope::make(std::move(hs)));
  }
  throw ParseError("unknown body type '" + type + "'");
}

json to_json(const gauge::ConvexBody& c) {
  if (!c.is_polytope()) {
    return {{"type", "ball"}, {"center", to_json(c.as_ball().center)}, {"radius", c.as_ball().radius}, {"norm", "l2"}};
  }
  json hs = json::array();
  for (const auto& h : c.as_polytope().constraints()) hs.push_back({{"a", to_json(h.a)}, {"b", h.b}});
  return {{"type", "polytope"}, {"halfspaces", hs}};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

GridSet read_grid(const std::filesystem::path& pbm) {
  json side = read_json(pbm.string() + ".json");
  Lattice lat = lattice_from_json(side);
  Index extent = index_from_json(field(side, "extent"));
  Index offset = side.contains("offset") ? index_from_json(side.at("offset")) : Index(lat.dimension(), 0);
  if (lat.dimension() > 2) throw ParseError("PBM grids are 1-D or 2-D");
  if (extent.size() != lat.dimension() || offset.size() != lat.dimension()) {
    throw ParseError("sidecar extent/offset dimension does not match the origin");
  }

  std::ifstream in(pbm);
  if (!in) throw Error("cannot open " + pbm.string());
  std::string content, line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    content += line + "\n";
  }
  std::istringstream tokens(content);
  std::string magic;
  long width = 0, height = 0;
  tokens >> magic >> width >> height;
  if (magic != "P1" || !tokens) throw ParseError(pbm.string() + ": not a plain PBM (P1) file");
  const long want_w = extent[0], want_h = lat.dimension() == 2 ? extent[1] : 1;
  if (width != want_w || height != want_h) throw ParseError(pbm.string() + ": size does not match the sidecar extent");

  GridSet g(lat, GridBox{offset, extent});
  std::vector<char> bits;
  char c;
  while (tokens >> c) {
    if (c != '0' && c != '1') throw ParseError(pbm.string() + ": unexpected character in raster");
    bits.push_back(c);
  }
  if (static_cast<long>(bits.size()) != width * height) throw ParseError(pbm.string() + ": wrong number of pixels");
  for (long r = 0; r < height; ++r) {
    for (long col = 0; col < width; ++col) {
      if (bits[static_cast<std::size_t>(r * width + col)] != '1') continue;
      Index k = offset;
      k[0] += col;
      if (k.size() == 2) k[1] += r;
      g.set(k);
    }
  }
  return g;
}

void write_grid(const std::filesystem::path& pbm, const GridSet& g) {
  if (g.dimension() < 1 || g.dimension() > 2) throw Error("PBM grids are 1-D or 2-D");
  const GridBox& box = g.box();
  const std::int64_t width = box.extent[0], height = g.dimension() == 2 ? box.extent[1] : 1;
  std::ostringstream out;
  out << "P1\n" << width << " " << height << "\n";
  for (std::int64_t r = 0; r < height; ++r) {
    for (std::int64_t col = 0; col < width; ++col) {
      Index k = box.lo;
      k[0] += col;
      if (k.size() == 2) k[1] += r;
      out << (g.test(k) ? '1' : '0') << (col + 1 < width ? " " : "");
    }
    out << "\n";
  }
  write_text(pbm, out.str());
  write_json(pbm.string() + ".json", {{"origin", rationals_to_json(g.lattice().origin)},
                                     {"cell", to_string(g.lattice().cell)},
                                     {"extent", box.extent},
                                     {"offset", box.lo}});
}

bool is_grid_path(const std::filesystem::path& p) { return p.extension() == ".pbm"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace advcalc::io
