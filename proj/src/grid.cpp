#include "rvp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rvp/error.hpp"

namespace rvp {

namespace {

void check_geometry(double resolution, const Point2& origin, int width, int height) {
  require(std::isfinite(resolution) && resolution > 0.0, "grid resolution must be positive");
  require(is_finite(origin), "grid origin must be finite");
  require(width >= 1 && height >= 1, "grid width and height must be at least 1");
}

}  // namespace

OccupancyGrid::OccupancyGrid(double resolution, Point2 origin, int width, int height)
    : resolution_(resolution), origin_(origin), width_(width), height_(height) {
  check_geometry(resolution, origin, width, height);
  mask_.assign(std::size_t(width) * std::size_t(height), 0);
  index_rows();
}

OccupancyGrid::OccupancyGrid(double resolution, Point2 origin, int width, int height,
                             const std::vector<CellIndex>& occupied)
    : resolution_(resolution), origin_(origin), width_(width), height_(height) {
  check_geometry(resolution, origin, width, height);
  mask_.assign(std::size_t(width) * std::size_t(height), 0);
  for (const auto& c : occupied) {
    require(in_bounds(c.row, c.col), "occupied cell (" + std::to_string(c.row) + ", " +
                                         std::to_string(c.col) + ") is out of bounds");
    mask_[std::size_t(c.row) * width_ + c.col] = 1;
  }
  index_rows();
}

OccupancyGrid::OccupancyGrid(double resolution, Point2 origin, int width, int height,
                             std::vector<std::uint8_t> mask)
    : resolution_(resolution), origin_(origin), width_(width), height_(height),
      mask_(std::move(mask)) {
  check_geometry(resolution, origin, width, height);
  require(mask_.size() == std::size_t(width) * std::size_t(height),
          "occupancy mask size does not match grid dimensions");
  for (auto& v : mask_) v = v != 0 ? 1 : 0;
  index_rows();
}

void OccupancyGrid::index_rows() {
  row_cols_.assign(std::size_t(height_), {});
  occupied_count_ = 0;
  for (int row = 0; row < height_; ++row) {
    for (int col = 0; col < width_; ++col) {
      if (mask_[std::size_t(row) * width_ + col]) {
        row_cols_[row].push_back(col);
        ++occupied_count_;
      }
    }
  }
}

Point2 OccupancyGrid::cell_center(int row, int col) const noexcept {
  return {origin_.x + (col + 0.5) * resolution_, origin_.y + (row + 0.5) * resolution_};
}

CellIndex OccupancyGrid::cell_of(const Point2& p) const noexcept {
  const double fx = std::floor((p.x - origin_.x) / resolution_);
  const double fy = std::floor((p.y - origin_.y) / resolution_);
  constexpr double lim = 1e9;
  return {int(std::clamp(fy, -lim, lim)), int(std::clamp(fx, -lim, lim))};
}

bool OccupancyGrid::contains(const Point2& p) const noexcept {
  return p.x >= origin_.x && p.y >= origin_.y && p.x <= origin_.x + extent_x() &&
         p.y <= origin_.y + extent_y();
}

std::vector<CellIndex> OccupancyGrid::occupied_cells() const {
  std::vector<CellIndex> out;
  out.reserve(occupied_count_);
  for (int row = 0; row < height_; ++row) {
    for (int col : row_cols_[row]) out.push_back({row, col});
  }
  return out;
}

std::pair<int, int> OccupancyGrid::row_range(double y, double r) const noexcept {
  const double lo = std::ceil((y - r - origin_.y) / resolution_ - 0.5);
  const double hi = std::floor((y + r - origin_.y) / resolution_ - 0.5);
  const int r0 = int(std::clamp(lo, 0.0, double(height_)));
  const int r1 = int(std::clamp(hi, -1.0, double(height_ - 1)));
  // widen by one row each way so rounding never hides a cell on the boundary
  return {std::max(0, r0 - 1), std::min(height_ - 1, r1 + 1)};
}

std::pair<int, int> OccupancyGrid::col_range(double x, double r) const noexcept {
  const double lo = std::ceil((x - r - origin_.x) / resolution_ - 0.5);
  const double hi = std::floor((x + r - origin_.x) / resolution_ - 0.5);
  const int c0 = int(std::clamp(lo, 0.0, double(width_)));
  const int c1 = int(std::clamp(hi, -1.0, double(width_ - 1)));
  return {std::max(0, c0 - 1), std::min(width_ - 1, c1 + 1)};
}

bool OccupancyGrid::any_occupied_within(const Point2& p, double r) const {
  if (occupied_count_ == 0 || !(r >= 0.0)) return false;
  const auto [r0, r1] = row_range(p.y, r);
  for (int row = r0; row <= r1; ++row) {
    const auto& cols = row_cols_[row];
    if (cols.empty()) continue;
    const double cy = origin_.y + (row + 0.5) * resolution_;
    const double dy = p.y - cy;
    const double half = std::sqrt(std::max(0.0, r * r - dy * dy));
    const auto [c0, c1] = col_range(p.x, half);
    for (auto it = std::lower_bound(cols.begin(), cols.end(), c0); it != cols.end() && *it <= c1;
         ++it) {
      if (distance(p, Point2{origin_.x + (*it + 0.5) * resolution_, cy}) <= r) return true;
    }
  }
  return false;
}

bool occupancy_query(const OccupancyGrid& grid, const Point2& p, double r, double theta) {
  const Point2 q = p + r * Vec2{std::cos(theta), std::sin(theta)};
  const CellIndex c = grid.cell_of(q);
  return grid.occupied(c.row, c.col);
}

std::vector<OccupiedCell> occupied_cells_within(const OccupancyGrid& grid, const Point2& p,
                                                double r_max) {
  std::vector<OccupiedCell> out;
  grid.for_each_occupied_within(p, r_max, [&](const Point2& c, double d) {
    out.push_back({c, d});
  });
  return out;
}

std::optional<double> nearest_obstacle_distance(const OccupancyGrid& grid, const Point2& p) {
  if (grid.empty()) return std::nullopt;
  const double res = grid.resolution();
  const CellIndex home = grid.cell_of(p);
  // Chebyshev rings around the home cell; ring k centers are at least
  // (k - 0.5) * res away from p.
  const long gap_r = std::max({0L, long(-home.row), long(home.row) - (grid.height() - 1)});
  const long gap_c = std::max({0L, long(-home.col), long(home.col) - (grid.width() - 1)});
  const long k_start = std::max(gap_r, gap_c);
  const long k_end = k_start + grid.width() + grid.height();
  double best = std::numeric_limits<double>::infinity();
  auto visit = [&](long row, long col) {
    if (row < 0 || col < 0 || row >= grid.height() || col >= grid.width()) return;
    if (!grid.occupied(int(row), int(col))) return;
    best = std::min(best, distance(p, grid.cell_center(int(row), int(col))));
  };
  for (long k = k_start; k <= k_end; ++k) {
    if (best <= (double(k) - 0.5) * res) break;
    if (k == 0) {
      visit(home.row, home.col);
      continue;
    }
    for (long dc = -k; dc <= k; ++dc) {
      visit(home.row - k, home.col + dc);
      visit(home.row + k, home.col + dc);
    }
    for (long dr = -k + 1; dr <= k - 1; ++dr) {
      visit(home.row + dr, home.col - k);
      visit(home.row + dr, home.col + k);
    }
  }
  return best;
}

std::vector<EvalPoint> evaluation_points(const Path& path, double eval_spacing) {
  require(std::isfinite(eval_spacing) && eval_spacing > 0.0, "eval_spacing must be positive");
  std::vector<EvalPoint> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Point2& a = path[i];
    const Point2& b = path[i + 1];
    out.push_back({a, i, 0.0});
    const double len = distance(a, b);
    for (std::size_t k = 1; double(k) * eval_spacing < len; ++k) {
      const double t = double(k) * eval_spacing / len;
      out.push_back({a + t * (b - a), i, t});
    }
  }
  out.push_back({path.back(), path.size() - 2, 1.0});
  return out;
}

CollisionReport collision_check(const Path& path, const OccupancyGrid& grid, double d_c,
                                double eval_spacing) {
  require(std::isfinite(d_c) && d_c >= 0.0, "d_c must be non-negative");
  CollisionReport report;
  if (grid.empty()) {
    require(std::isfinite(eval_spacing) && eval_spacing > 0.0, "eval_spacing must be positive");
    return report;
  }
  for (const auto& ep : evaluation_points(path, eval_spacing)) {
    if (grid.any_occupied_within(ep.point, d_c)) {
      report.colliding = true;
      report.unsafe_points.push_back(ep.point);
    }
  }
  return report;
}

}  // namespace rvp
