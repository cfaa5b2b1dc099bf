#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "rvp/geometry.hpp"
#include "rvp/grid.hpp"
#include "rvp/rng.hpp"

namespace rvp::test {

inline constexpr double kPi = std::numbers::pi;

// Random polyline with step lengths in [min_step, max_step] and heading drift.
inline Path random_path(Rng& rng, int n, double min_step = 0.1, double max_step = 1.0,
                        double max_turn = 1.2) {
  std::vector<Point2> pts;
  Point2 p{rng.uniform(-5, 5), rng.uniform(-5, 5)};
  double heading = rng.uniform(0, 2 * kPi);
  pts.push_back(p);
  for (int i = 1; i < n; ++i) {
    heading += rng.uniform(-max_turn, max_turn);
    p += rng.uniform(min_step, max_step) * Vec2{std::cos(heading), std::sin(heading)};
    pts.push_back(p);
  }
  return Path(std::move(pts));
}

inline Path circle_arc(Point2 c, double radius, double a0, double a1, int n) {
  std::vector<Point2> pts;
  for (int i = 0; i < n; ++i) {
    const double a = a0 + (a1 - a0) * i / (n - 1);
    pts.push_back(c + radius * Vec2{std::cos(a), std::sin(a)});
  }
  return Path(std::move(pts));
}

inline Path straight(Point2 a, Point2 b, int n) {
  std::vector<Point2> pts;
  for (int i = 0; i < n; ++i) pts.push_back(a + (double(i) / (n - 1)) * (b - a));
  return Path(std::move(pts));
}

inline OccupancyGrid random_grid(Rng& rng, int w, int h, double res, double fill,
                                 Point2 origin = {0, 0}) {
  std::vector<std::uint8_t> mask(std::size_t(w) * h);
  for (auto& m : mask) m = rng.uniform() < fill ? 1 : 0;
  return OccupancyGrid(res, origin, w, h, std::move(mask));
}

// Brute-force distance from p to the nearest occupied center, scanning every cell.
inline double brute_nearest(const OccupancyGrid& g, const Point2& p) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < g.height(); ++r)
    for (int c = 0; c < g.width(); ++c)
      if (g.occupied(r, c)) best = std::min(best, distance(p, g.cell_center(r, c)));
  return best;
}

// Brute-force polyline distance by dense sampling of each segment.
inline double dense_cross_track(const Path& path, const Point2& y, int samples = 2000) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    for (int k = 0; k <= samples; ++k) {
      const double t = double(k) / samples;
      best = std::min(best, distance(y, path[i] + t * (path[i + 1] - path[i])));
    }
  return best;
}

}  // namespace rvp::test
