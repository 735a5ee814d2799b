#include "advcalc/render.hpp"

#include <cstdio>
#include <optional>
#include <sstream>

#include "advcalc/errors.hpp"

namespace advcalc {
namespace {

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", x);
  return buf;
}

}  // namespace

std::string render_svg(const IntervalSet& a, const IntervalContext& ctx) {
  const IntervalSet dil = dilate(a, ctx);
  const IntervalSet ero = erode(a, ctx);
  constexpr double kWidth = 800, kMargin = 40, kBand = 40, kGap = 20;
  Rational lo = -1, hi = 1;
  if (auto h = dil.hull()) {
    const Rational pad = std::max(Rational(ctx.eps), Rational((h->hi - h->lo) / 20));
    lo = h->lo - (pad > 0 ? pad : Rational(1));
    hi = h->hi + (pad > 0 ? pad : Rational(1));
  }
  const double span = Rational(hi - lo).get_d();
  auto px = [&](const Rational& x) { return kMargin + (kWidth - 2 * kMargin) * Rational(x - lo).get_d() / span; };

  const struct {
    const char* label;
    const IntervalSet* set;
    const char* colour;
  } bands[] = {{"A", &a, "#4477aa"}, {"A^eps", &dil, "#99bbdd"}, {"A^-eps", &ero, "#223366"}};

  const double height = 2 * kMargin + 3 * kBand + 2 * kGap;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << kWidth << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kMargin << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">eps = "
      << to_string(ctx.eps) << ", axis [" << to_string(lo) << ", " << to_string(hi) << "]</text>\n";
  for (int b = 0; b < 3; ++b) {
    const double y = kMargin + b * (kBand + kGap);
    out << "<line x1=\"" << fixed(kMargin) << "\" y1=\"" << fixed(y + kBand / 2) << "\" x2=\""
        << fixed(kWidth - kMargin) << "\" y2=\"" << fixed(y + kBand / 2) << "\" stroke=\"#bbbbbb\"/>\n";
    out << "<text x=\"4\" y=\"" << fixed(y + kBand / 2 + 5) << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << bands[b].label << "</text>\n";
    for (const auto& iv : bands[b].set->intervals()) {
      const double x0 = px(iv.lo), x1 = px(iv.hi);
      out << "<rect x=\"" << fixed(x0) << "\" y=\"" << fixed(y) << "\" width=\"" << fixed(std::max(x1 - x0, 1.0))
          << "\" height=\"" << fixed(kBand) << "\" fill=\"" << bands[b].colour << "\"><title>" << iv.to_string()
          << "</title></rect>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_ppm(const GridSet& a, const GridContext& ctx, int scale) {
  if (a.dimension() < 1 || a.dimension() > 2) throw DimensionMismatch("render supports 1-D and 2-D sets");
  if (scale < 1) throw Error("scale must be positive");
  const GridSet dil = dilate(a, ctx);
  const GridSet ero = erode(a, ctx);
  const GridBox box = bounding_box(a.box(), dil.box());
  const std::int64_t w = box.extent[0], h = a.dimension() == 2 ? box.extent[1] : 1;

  std::ostringstream out;
  out << "P3\n" << w * scale << " " << h * scale << "\n255\n";
  for (std::int64_t r = 0; r < h * scale; ++r) {
    for (std::int64_t c = 0; c < w * scale; ++c) {
      Index k = box.lo;
      k[0] += c / scale;
      if (k.size() == 2) k[1] += r / scale;
      const char* rgb = "255 255 255";
      if (ero.test(k)) {
        rgb = "34 51 102";
      } else if (a.test(k)) {
        rgb = "68 119 170";
      } else if (dil.test(k)) {
        rgb = "153 187 221";
      }
      out << rgb << (c + 1 < w * scale ? " " : "\n");
    }
  }
  return out.str();
}

}  // namespace advcalc
