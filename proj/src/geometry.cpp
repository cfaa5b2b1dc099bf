#include "rvp/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "rvp/error.hpp"

namespace rvp {

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) noexcept {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

Path::Path(std::vector<Point2> points) : points_(std::move(points)) {
  require(points_.size() >= 2, "path needs at least 2 points, got " + std::to_string(points_.size()));
  for (std::size_t i = 0; i < points_.size(); ++i) {
    require(is_finite(points_[i]), "path point " + std::to_string(i) + " is not finite");
    if (i > 0) {
      require(!(points_[i] == points_[i - 1]),
              "path points " + std::to_string(i - 1) + " and " + std::to_string(i) + " coincide");
    }
  }
}

double Path::length() const noexcept {
  double total = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) total += distance(points_[i - 1], points_[i]);
  return total;
}

ArcLengthProfile arc_length_profile(const Path& path) {
  ArcLengthProfile profile;
  profile.s.reserve(path.size());
  profile.s.push_back(0.0);
  for (std::size_t i = 1; i < path.size(); ++i) {
    profile.s.push_back(profile.s.back() + distance(path[i - 1], path[i]));
  }
  return profile;
}

double cross_track_error(const Path& path, const Point2& y) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < path.size(); ++i) {
    best = std::min(best, point_segment_distance(y, path[i - 1], path[i]));
  }
  return best;
}

double path_deviation(const Path& p1, const Path& p2) {
  double sum = 0.0;
  for (const auto& p : p1.points()) {
    const double e = cross_track_error(p2, p);
    sum += e * e;
  }
  return sum;
}

namespace {

double menger_curvature(const Point2& a, const Point2& b, const Point2& c) {
  const double ab = distance(a, b);
  const double bc = distance(b, c);
  const double ac = distance(a, c);
  const double twice_area = std::abs(cross(b - a, c - a));
  if (twice_area <= 1e-12 * ab * ac || ac == 0.0) return 0.0;
  return 2.0 * twice_area / (ab * bc * ac);
}

// One centripetal Catmull-Rom segment in cubic Hermite (power basis) form,
// parameterized over u in [0, 1].
struct CubicSegment {
  Vec2 c0, c1, c2, c3;

  Vec2 eval(double u) const noexcept { return ((c3 * u + c2) * u + c1) * u + c0; }
  Vec2 deriv(double u) const noexcept { return (3.0 * c3 * u + 2.0 * c2) * u + c1; }
  double speed(double u) const noexcept { return norm(deriv(u)); }
};

CubicSegment centripetal_segment(const Point2& p0, const Point2& p1, const Point2& p2,
                                 const Point2& p3) {
  double dt0 = std::sqrt(distance(p0, p1));
  const double dt1 = std::sqrt(distance(p1, p2));
  double dt2 = std::sqrt(distance(p2, p3));
  if (dt0 < 1e-4) dt0 = dt1;
  if (dt2 < 1e-4) dt2 = dt1;

  Vec2 m1 = (p1 - p0) / dt0 - (p2 - p0) / (dt0 + dt1) + (p2 - p1) / dt1;
  Vec2 m2 = (p2 - p1) / dt1 - (p3 - p1) / (dt1 + dt2) + (p3 - p2) / dt2;
  m1 *= dt1;
  m2 *= dt1;

  return CubicSegment{p1, m1, -3.0 * p1 + 3.0 * p2 - 2.0 * m1 - m2, 2.0 * p1 - 2.0 * p2 + m1 + m2};
}

constexpr int kSubdivisions = 16;
constexpr std::array<double, 5> kGaussNodes = {0.0, -0.5384693101056831, 0.5384693101056831,
                                               -0.9061798459386640, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {0.5688888888888889, 0.4786286704993665,
                                                 0.4786286704993665, 0.2369268850561891,
                                                 0.2369268850561891};

double segment_arc(const CubicSegment& seg, double u0, double u1) {
  const double half = 0.5 * (u1 - u0);
  const double mid = 0.5 * (u1 + u0);
  double sum = 0.0;
  for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
    sum += kGaussWeights[k] * seg.speed(mid + half * kGaussNodes[k]);
  }
  return sum * half;
}

// Spline with a per-segment cumulative arc table at kSubdivisions + 1 knots.
class ArcSpline {
 public:
  explicit ArcSpline(const std::vector<Point2>& pts) {
    const std::size_t n = pts.size();
    const Point2 head = 2.0 * pts[0] - pts[1];
    const Point2 tail = 2.0 * pts[n - 1] - pts[n - 2];
    segments_.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const Point2& p0 = i == 0 ? head : pts[i - 1];
      const Point2& p3 = i + 2 < n ? pts[i + 2] : tail;
      segments_.push_back(centripetal_segment(p0, pts[i], pts[i + 1], p3));
    }
    tables_.resize(segments_.size());
    starts_.resize(segments_.size() + 1, 0.0);
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      auto& table = tables_[i];
      table[0] = 0.0;
      for (int j = 0; j < kSubdivisions; ++j) {
        table[j + 1] = table[j] + segment_arc(segments_[i], double(j) / kSubdivisions,
                                               double(j + 1) / kSubdivisions);
      }
      starts_[i + 1] = starts_[i] + table[kSubdivisions];
    }
  }

  double length() const noexcept { return starts_.back(); }

  Point2 at_arc_length(double s) const {
    const auto it = std::upper_bound(starts_.begin(), starts_.end(), s);
    std::size_t seg = it == starts_.begin() ? 0 : std::size_t(it - starts_.begin()) - 1;
    seg = std::min(seg, segments_.size() - 1);
    const double local = s - starts_[seg];
    const auto& table = tables_[seg];
    const auto jt = std::upper_bound(table.begin(), table.end(), local);
    int j = jt == table.begin() ? 0 : int(jt - table.begin()) - 1;
    j = std::clamp(j, 0, kSubdivisions - 1);

    const CubicSegment& cs = segments_[seg];
    double lo = double(j) / kSubdivisions;
    double hi = double(j + 1) / kSubdivisions;
    const double target = local - table[j];
    const double span = table[j + 1] - table[j];
    double u = span > 0.0 ? lo + (hi - lo) * std::clamp(target / span, 0.0, 1.0) : lo;
    const double base = lo;
    for (int iter = 0; iter < 50; ++iter) {
      const double f = segment_arc(cs, base, u) - target;
      if (std::abs(f) < 1e-13) break;
      if (f > 0.0) hi = u; else lo = u;
      const double sp = cs.speed(u);
      double next = sp > 0.0 ? u - f / sp : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      u = next;
    }
    return cs.eval(u);
  }

 private:
  std::vector<CubicSegment> segments_;
  std::vector<std::array<double, kSubdivisions + 1>> tables_;
  std::vector<double> starts_;
};

}  // namespace

CurvatureProfile curvature_profile(const Path& path) {
  require(path.size() >= 3, "curvature needs at least 3 points");
  CurvatureProfile profile;
  profile.kappa.resize(path.size());
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    profile.kappa[i] = menger_curvature(path[i - 1], path[i], path[i + 1]);
  }
  profile.kappa.front() = profile.kappa[1];
  profile.kappa.back() = profile.kappa[path.size() - 2];
  return profile;
}

double spline_length(const Path& path) { return ArcSpline(path.points()).length(); }

Path resample_spline(const Path& path, double spacing) {
  require(std::isfinite(spacing) && spacing > 0.0, "resample spacing must be positive");
  const ArcSpline spline(path.points());
  const double total = spline.length();
  if (spacing >= total) return Path({path.front(), path.back()});

  auto steps = static_cast<std::size_t>(std::floor(total / spacing));
  if (total - double(steps) * spacing < 0.5 * spacing) --steps;

  std::vector<Point2> out;
  out.reserve(steps + 2);
  out.push_back(path.front());
  for (std::size_t k = 1; k <= steps; ++k) out.push_back(spline.at_arc_length(double(k) * spacing));
  out.push_back(path.back());
  return Path(std::move(out));
}

}  // namespace rvp
