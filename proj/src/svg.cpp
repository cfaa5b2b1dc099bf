#include "rvp/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace rvp {

namespace {

constexpr double kCanvasPx = 600.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

}  // namespace

std::string render_svg(const Scenario& scenario, const Path* local_path) {
  const OccupancyGrid& grid = scenario.grid;
  const double cell_px = kCanvasPx / double(std::max(grid.width(), grid.height()));
  const double scale = cell_px / grid.resolution();
  const double w = cell_px * grid.width();
  const double h = cell_px * grid.height();
  auto px = [&](const Point2& p) {
    return fmt((p.x - grid.origin().x) * scale) + "," + fmt(h - (p.y - grid.origin().y) * scale);
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
         "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
         "\" fill=\"white\"/>\n";
  out += "<g fill=\"black\">\n";
  // one rect per horizontal run of occupied cells
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width();) {
      if (!grid.occupied(row, col)) {
        ++col;
        continue;
      }
      int end = col;
      while (end < grid.width() && grid.occupied(row, end)) ++end;
      out += "<rect x=\"" + fmt(col * cell_px) + "\" y=\"" + fmt(h - (row + 1) * cell_px) +
             "\" width=\"" + fmt((end - col) * cell_px) + "\" height=\"" + fmt(cell_px) + "\"/>\n";
      col = end;
    }
  }
  out += "</g>\n";

  auto polyline = [&](const Path& path, const std::string& style) {
    std::string pts;
    for (const auto& p : path.points()) {
      if (!pts.empty()) pts += ' ';
      pts += px(p);
    }
    out += "<polyline points=\"" + pts + "\" fill=\"none\" " + style + "/>\n";
  };
  polyline(scenario.global_path, "stroke=\"blue\" stroke-width=\"2\" stroke-dasharray=\"8,5\"");
  if (local_path) polyline(*local_path, "stroke=\"magenta\" stroke-width=\"2\"");
  out += "</svg>\n";
  return out;
}

}  // namespace rvp
