#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rvp/geometry.hpp"

namespace rvp {

struct CellIndex {
  int row = 0;  // y direction
  int col = 0;  // x direction

  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

struct OccupiedCell {
  Point2 center;
  double distance = 0.0;
};

/// Boolean occupancy map. Cell (row, col) covers
/// [origin.x + col*res, origin.x + (col+1)*res) x [origin.y + row*res, ...).
/// Obstacles are represented by occupied cell centers for every distance
/// query; space outside the grid is free. Immutable once built.
class OccupancyGrid {
 public:
  /// Empty grid. Throws Error(InvalidArgument) on non-positive resolution or size.
  OccupancyGrid(double resolution, Point2 origin, int width, int height);

  /// Grid with the listed cells occupied (duplicates allowed). Throws
  /// Error(InvalidArgument) naming "occupied" when an index is out of bounds.
  OccupancyGrid(double resolution, Point2 origin, int width, int height,
                const std::vector<CellIndex>& occupied);

  /// Row-major mask of width * height entries, non-zero means occupied.
  OccupancyGrid(double resolution, Point2 origin, int width, int height,
                std::vector<std::uint8_t> mask);

  double resolution() const noexcept { return resolution_; }
  const Point2& origin() const noexcept { return origin_; }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double extent_x() const noexcept { return width_ * resolution_; }
  double extent_y() const noexcept { return height_ * resolution_; }

  bool in_bounds(int row, int col) const noexcept {
    return row >= 0 && col >= 0 && row < height_ && col < width_;
  }
  bool occupied(int row, int col) const noexcept {
    return in_bounds(row, col) && mask_[std::size_t(row) * width_ + col] != 0;
  }
  bool empty() const noexcept { return occupied_count_ == 0; }
  std::size_t occupied_count() const noexcept { return occupied_count_; }

  Point2 cell_center(int row, int col) const noexcept;
  /// Cell containing `p`; may lie outside the grid.
  CellIndex cell_of(const Point2& p) const noexcept;
  bool contains(const Point2& p) const noexcept;

  /// Occupied cells in row-major order.
  std::vector<CellIndex> occupied_cells() const;

  /// Calls `fn(center, distance)` for each occupied cell center within
  /// `r_max` of `p`, in row-major order.
  template <typename Fn>
  void for_each_occupied_within(const Point2& p, double r_max, Fn&& fn) const;

  /// True when some occupied center lies within `r` (inclusive) of `p`.
  bool any_occupied_within(const Point2& p, double r) const;

  friend bool operator==(const OccupancyGrid& a, const OccupancyGrid& b) {
    return a.resolution_ == b.resolution_ && a.origin_ == b.origin_ && a.width_ == b.width_ &&
           a.height_ == b.height_ && a.mask_ == b.mask_;
  }

 private:
  void index_rows();
  std::pair<int, int> row_range(double y, double r) const noexcept;
  std::pair<int, int> col_range(double x, double r) const noexcept;

  double resolution_;
  Point2 origin_;
  int width_;
  int height_;
  std::vector<std::uint8_t> mask_;
  std::vector<std::vector<int>> row_cols_;  // sorted occupied columns per row
  std::size_t occupied_count_ = 0;
};

/// delta_eps(p, r, theta): is the cell under p + r*(cos theta, sin theta) occupied.
bool occupancy_query(const OccupancyGrid& grid, const Point2& p, double r, double theta);

std::vector<OccupiedCell> occupied_cells_within(const OccupancyGrid& grid, const Point2& p,
                                                double r_max);

/// Distance to the nearest occupied cell center; nullopt on an empty grid.
std::optional<double> nearest_obstacle_distance(const OccupancyGrid& grid, const Point2& p);

/// A point of the evaluation set: vertices plus interpolated samples.
struct EvalPoint {
  Point2 point;
  std::size_t segment = 0;  // segment index; the last vertex reports size() - 2
  double t = 0.0;           // position along the segment in [0, 1]
};

/// Vertices plus points every `eval_spacing` along each segment, in path order.
std::vector<EvalPoint> evaluation_points(const Path& path, double eval_spacing);

struct CollisionReport {
  bool colliding = false;
  std::vector<Point2> unsafe_points;
};

/// Collision iff some evaluation point lies within d_c (inclusive) of an
/// occupied cell center.
CollisionReport collision_check(const Path& path, const OccupancyGrid& grid, double d_c,
                                double eval_spacing);

// ---------------------------------------------------------------------------

template <typename Fn>
void OccupancyGrid::for_each_occupied_within(const Point2& p, double r_max, Fn&& fn) const {
  if (occupied_count_ == 0 || !(r_max >= 0.0)) return;
  const auto [r0, r1] = row_range(p.y, r_max);
  const double r2 = r_max * r_max;
  for (int row = r0; row <= r1; ++row) {
    const auto& cols = row_cols_[row];
    if (cols.empty()) continue;
    const double cy = origin_.y + (row + 0.5) * resolution_;
    const double dy = p.y - cy;
    const double half = std::sqrt(std::max(0.0, r2 - dy * dy));
    const auto [c0, c1] = col_range(p.x, half);
    if (c0 > c1) continue;
    auto it = std::lower_bound(cols.begin(), cols.end(), c0);
    for (; it != cols.end() && *it <= c1; ++it) {
      const Point2 center{origin_.x + (*it + 0.5) * resolution_, cy};
      const double d = distance(p, center);
      if (d <= r_max) fn(center, d);
    }
  }
}

}  // namespace rvp
