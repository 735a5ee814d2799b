#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "advcalc/gauge.hpp"
#include "advcalc/grid_set.hpp"
#include "advcalc/interval_set.hpp"
#include "advcalc/norm.hpp"
#include "advcalc/risk.hpp"
#include "advcalc/strings.hpp"

namespace advcalc::io {

using json = nlohmann::json;

// Rationals travel as strings ("3/2"); plain JSON integers are accepted on input.
Rational rational_from_json(const json& j);
json to_json(const Rational& r);
std::vector<Rational> rationals_from_json(const json& j);

// [["0","1"],["3/2","2"]] for closed intervals; an interval with an open end
// is written as {"lo":..,"hi":..,"lo_closed":false,"hi_closed":true}.
IntervalSet interval_set_from_json(const json& j);
json to_json(const IntervalSet& s);

// Inline grid: {"origin":[..],"cell":"..","lo":[..],"extent":[..],"cells":[[..],..]}.
GridSet grid_from_json(const json& j);
json to_json(const GridSet& g);

// [{"x":[..],"p":"..","eta":".."}, ...]; x may be a bare rational in 1-D.
LabeledDistribution distribution_from_json(const json& j);
json to_json(const LabeledDistribution& d);
strings::StringDistribution string_distribution_from_json(const json& j);
json to_json(const strings::StringDistribution& d);

// A tag string ("l2", "wlinf:1,2", "poly:1,0;0,1") or an object
// {"kind":"l1","dim":2} / {"kind":"wlinf","weights":[..]} / {"kind":"poly","rows":[[..]]}.
Norm norm_from_json(const json& j, std::size_t dim);
json to_json(const Norm& n);

// {"type":"ball","center":[..],"radius":r,"norm":"l2"} or
// {"type":"polytope","halfspaces":[{"a":[..],"b":..}, ...]}.
gauge::ConvexBody body_from_json(const json& j);
json to_json(const gauge::ConvexBody& c);
gauge::Vec vec_from_json(const json& j);
json to_json(const gauge::Vec& v);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

// PBM (P1) raster plus a sidecar <path>.json {"origin","cell","extent","offset"}.
// Axis 0 runs along a row (left to right) and axis 1 down the rows; 1-D grids
// are a single row. offset is the lattice index of the top-left pixel.
GridSet read_grid(const std::filesystem::path& pbm);
void write_grid(const std::filesystem::path& pbm, const GridSet& g);

// Sets by file extension: .pbm is a grid, anything else an interval-set JSON.
bool is_grid_path(const std::filesystem::path& p);

// Minimal CSV quoting.
std::string csv_field(const std::string& s);

}  // namespace advcalc::io
