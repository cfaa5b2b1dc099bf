#pragma once

#include <string>

#include "rvp/scenarios.hpp"

namespace rvp {

/// Standalone SVG: occupied cells in black, the global path as a dashed blue
/// polyline and, when given, the local path as a solid magenta polyline.
/// The grid fills the canvas; its longer side spans 600 px.
std::string render_svg(const Scenario& scenario, const Path* local_path = nullptr);

}  // namespace rvp
