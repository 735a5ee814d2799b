#pragma once

#include <string>

#include "advcalc/morphology.hpp"

namespace advcalc {

// Three stacked number-line bands: A, A^eps and A^-eps. An empty A gives the
// bands with nothing drawn on them.
std::string render_svg(const IntervalSet& a, const IntervalContext& ctx);

// Plain PPM (P3) of a 1-D or 2-D grid, `scale` pixels per cell. Cells of
// A^-eps are dark, the rest of A is mid-tone, A^eps \ A is light and the
// remaining background white. Axis 0 runs left to right, axis 1 downwards.
// Throws DimensionMismatch for dimension > 2.
std::string render_ppm(const GridSet& a, const GridContext& ctx, int scale = 8);

}  // namespace advcalc
