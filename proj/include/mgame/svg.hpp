#pragma once

#include <string>

#include "mgame/multigame.hpp"

namespace mgame {

// Standalone SVG of the (lambda, gamma) unit square: one shaded rectangle per
// open cell labelled with its equilibria, dashed lines at the breakpoints.
std::string render_region_svg(const DoubleGame& dg, const RegionDiagram& diagram);

}  // namespace mgame
