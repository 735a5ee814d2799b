#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "advcalc/errors.hpp"
#include "advcalc/io.hpp"
#include "advcalc/render.hpp"

namespace advcalc {
namespace {

namespace fs = std::filesystem;
using io::json;

Rational q(const char* s) { return parse_rational(s); }

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("advcalc_io_test_" + std::to_string(getpid())) / name;
  fs::create_directories(p.parent_path());
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(IntervalJsonTest, RoundTrip) {
  auto s = io::interval_set_from_json(json::parse(R"([["0","1"],["3/2","2"]])"));
  EXPECT_EQ(s, IntervalSet::closed({{0, 1}, {q("3/2"), 2}}));
  EXPECT_EQ(io::to_json(s).dump(), R"([["0","1"],["3/2","2"]])");
  IntervalSet open = IntervalSet::from_intervals({{0, 1, false, true}});
  EXPECT_EQ(io::interval_set_from_json(io::to_json(open)), open);
  EXPECT_THROW(io::interval_set_from_json(json::parse(R"([["2","1"]])")), Error);
  EXPECT_THROW(io::interval_set_from_json(json::parse(R"([["0"]])")), ParseError);
  EXPECT_THROW(io::interval_set_from_json(json::parse(R"([["0","x"]])")), ParseError);
}

TEST(DistributionJsonTest, RoundTrip) {
  auto d = io::distribution_from_json(
      json::parse(R"([{"x":["0"],"p":"1/2","eta":"1"},{"x":"1","p":"1/2","eta":"0"}])"));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.atoms()[1].x, Point{1});
  EXPECT_EQ(io::distribution_from_json(io::to_json(d)).atoms()[0].p, q("1/2"));
  EXPECT_THROW(io::distribution_from_json(json::parse(R"([{"x":["0"],"p":"1/2","eta":"1"}])")), Error);
}

TEST(NormJsonTest, TagsAndObjects) {
  EXPECT_EQ(io::norm_from_json("l2", 2).tag(), "l2");
  EXPECT_EQ(io::norm_from_json(json::parse(R"({"kind":"wlinf","weights":["1","2"]})"), 2).tag(), "wlinf:1,2");
  EXPECT_THROW(io::norm_from_json("l7", 2), ParseError);
}

TEST(GridFileTest, PbmRoundTripAndOrientation) {
  // axis 0 along the row, axis 1 down the rows
  GridSet g = GridSet::from_cells(Lattice{{q("1/2"), 0}, q("1/4")}, {{0, 0}, {2, 0}, {1, 1}});
  const fs::path p = scratch("g.pbm");
  io::write_grid(p, g);
  EXPECT_EQ(slurp(p), "P1\n3 2\n1 0 1\n0 1 0\n");
  GridSet back = io::read_grid(p);
  EXPECT_EQ(back, g);
  EXPECT_EQ(back.lattice(), g.lattice());

  std::ofstream(p) << "P1\n# comment\n3 2\n1 0 1\n0 1\n";
  EXPECT_THROW(io::read_grid(p), ParseError);
  EXPECT_EQ(io::grid_from_json(io::to_json(g)), g);
}

TEST(CsvTest, Quoting) {
  EXPECT_EQ(io::csv_field("plain"), "plain");
  EXPECT_EQ(io::csv_field("[0, 1]"), "\"[0, 1]\"");
  EXPECT_EQ(io::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(RenderTest, IntervalBands) {
  IntervalContext ctx{Norm::l1(1), q("1/2"), std::nullopt};
  const std::string svg = render_svg(IntervalSet::closed({{0, 1}}), ctx);
  EXPECT_NE(svg.find("<title>[0, 1]</title>"), std::string::npos);
  EXPECT_NE(svg.find("<title>[-1/2, 3/2]</title>"), std::string::npos);
  EXPECT_NE(svg.find("<title>[1/2, 1/2]</title>"), std::string::npos);
  EXPECT_EQ(render_svg(IntervalSet::closed({{0, 1}}), ctx), svg);

  const std::string empty = render_svg(IntervalSet{}, ctx);
  EXPECT_EQ(empty.find("<title>"), std::string::npos);
  EXPECT_NE(empty.find("A^-eps"), std::string::npos);
}

TEST(RenderTest, DiamondRaster) {
  GridContext ctx{Norm::l1(2), 2, std::nullopt};
  const std::string ppm = render_ppm(GridSet::from_cells(Lattice::unit(2), {{0, 0}}), ctx, 1);
  std::istringstream in(ppm);
  std::string magic;
  int w = 0, h = 0, max = 0;
  in >> magic >> w >> h >> max;
  EXPECT_EQ(magic, "P3");
  EXPECT_EQ(w, 5);
  EXPECT_EQ(h, 5);
  int coloured = 0, r, g, b;
  while (in >> r >> g >> b) coloured += (r != 255 || g != 255 || b != 255) ? 1 : 0;
  EXPECT_EQ(coloured, 13);

  GridContext ctx3{Norm::l1(3), 1, std::nullopt};
  EXPECT_THROW(render_ppm(GridSet::from_cells(Lattice::unit(3), {{0, 0, 0}}), ctx3), DimensionMismatch);
}

}  // namespace
}  // namespace advcalc
