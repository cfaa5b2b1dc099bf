#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace rvp {

/// Planar vector / point in meters. Used for both positions and forces.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) noexcept { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(const Vec2& o) noexcept { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) noexcept { x *= s; y *= s; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) noexcept { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) noexcept { return a -= b; }
  friend constexpr Vec2 operator-(const Vec2& a) noexcept { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) noexcept { return a *= s; }
  friend constexpr Vec2 operator*(double s, Vec2 a) noexcept { return a *= s; }
  friend constexpr Vec2 operator/(const Vec2& a, double s) noexcept { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

using Point2 = Vec2;

constexpr double dot(const Vec2& a, const Vec2& b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) noexcept { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& v) noexcept { return std::sqrt(dot(v, v)); }
inline double distance(const Point2& a, const Point2& b) noexcept { return norm(b - a); }
inline bool is_finite(const Vec2& v) noexcept { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Distance from `p` to the closed segment [a, b].
double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) noexcept;

/// An ordered polyline of at least two points with no zero-length segments.
/// Serves as global path, local path and initial simulation state.
class Path {
 public:
  /// Throws Error(InvalidArgument) when fewer than two points, any coordinate
  /// is non-finite, or two consecutive points coincide.
  explicit Path(std::vector<Point2> points);

  const std::vector<Point2>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point2& operator[](std::size_t i) const { return points_[i]; }
  const Point2& front() const noexcept { return points_.front(); }
  const Point2& back() const noexcept { return points_.back(); }

  /// Total polyline length.
  double length() const noexcept;

  friend bool operator==(const Path&, const Path&) = default;

 private:
  std::vector<Point2> points_;
};

/// Cumulative distance along the path; s[0] = 0, strictly increasing.
struct ArcLengthProfile {
  std::vector<double> s;

  double total() const noexcept { return s.empty() ? 0.0 : s.back(); }
};

/// Unsigned discrete curvature per path point (1/m).
struct CurvatureProfile {
  std::vector<double> kappa;
};

ArcLengthProfile arc_length_profile(const Path& path);

/// Shortest distance from `y` to the polyline (exact point-to-segment).
double cross_track_error(const Path& path, const Point2& y);

/// Sum over points of `p1` of the squared cross-track error against `p2`.
double path_deviation(const Path& p1, const Path& p2);

/// Menger (circumscribed circle) curvature of each consecutive triple;
/// endpoints copy their neighbor. Requires at least three points.
CurvatureProfile curvature_profile(const Path& path);

/// Fits a centripetal Catmull-Rom spline through `path` and returns points
/// spaced `spacing` apart in spline arc length. The first and last input
/// points are kept exactly. When the leftover arc after the last full step
/// is shorter than half a step, that sample is dropped so the final segment
/// lies in [spacing, 1.5 * spacing); otherwise the final segment is shorter.
/// A spacing not shorter than the spline length yields the two endpoints.
Path resample_spline(const Path& path, double spacing);

/// Arc length of the centripetal Catmull-Rom spline through `path`.
double spline_length(const Path& path);

}  // namespace rvp
