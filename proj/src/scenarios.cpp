#include "rvp/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rvp/error.hpp"

namespace rvp {

std::string to_string(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::Circle: return "circle";
    case ObjectKind::Rectangle: return "rectangle";
    case ObjectKind::Blob: return "blob";
  }
  return "circle";
}

std::string to_string(PathKind kind) {
  switch (kind) {
    case PathKind::Straight: return "straight";
    case PathKind::Arc: return "arc";
    case PathKind::SCurve: return "s_curve";
  }
  return "straight";
}

void GeneratorConfig::validate() const {
  auto check = [](bool ok, const char* field, const char* rule) {
    if (!ok) fail(ErrorKind::Validation, std::string(field) + ": " + rule);
  };
  check(grid_width >= 1, "grid_width", "must be at least 1");
  check(grid_height >= 1, "grid_height", "must be at least 1");
  check(std::isfinite(resolution) && resolution > 0.0, "resolution", "must be positive");
  check(object_count_min >= 0 && object_count_min <= object_count_max, "object_count_range",
        "must be a non-negative ordered range");
  check(!object_kinds.empty(), "object_kinds", "must not be empty");
  check(std::isfinite(object_size_min) && object_size_min > 0.0 &&
            object_size_min <= object_size_max && std::isfinite(object_size_max),
        "object_size_range", "must be a positive ordered range");
  double total = 0.0;
  for (double w : path_kind_weights) {
    check(std::isfinite(w) && w >= 0.0, "path_kind_weights", "must be non-negative");
    total += w;
  }
  check(std::abs(total - 1.0) < 1e-9, "path_kind_weights", "must sum to 1");
  check(path_point_count >= 3, "path_point_count", "must be at least 3");
  check(std::isfinite(clearance_from_endpoints) && clearance_from_endpoints >= 0.0,
        "clearance_from_endpoints", "must be non-negative");
  check(std::isfinite(min_endpoint_separation) && min_endpoint_separation >= 0.0,
        "min_endpoint_separation", "must be non-negative");
}

namespace {

struct Rasterizer {
  const GeneratorConfig& config;
  std::vector<std::uint8_t>& mask;

  template <typename Inside>
  void fill(double cx, double cy, double reach, Inside&& inside) {
    const double res = config.resolution;
    const int c0 = std::max(0, int(std::floor((cx - reach) / res)));
    const int c1 = std::min(config.grid_width - 1, int(std::ceil((cx + reach) / res)));
    const int r0 = std::max(0, int(std::floor((cy - reach) / res)));
    const int r1 = std::min(config.grid_height - 1, int(std::ceil((cy + reach) / res)));
    for (int row = r0; row <= r1; ++row) {
      for (int col = c0; col <= c1; ++col) {
        const Point2 c{(col + 0.5) * res, (row + 0.5) * res};
        if (inside(c)) mask[std::size_t(row) * config.grid_width + col] = 1;
      }
    }
  }
};

// Circle through a and b bulging by sagitta `ratio * |b - a|` to the left
// of a->b (negative ratio bulges right). |ratio| <= 0.5.
struct ArcGeometry {
  Point2 center;
  double radius = 0.0;
  Vec2 chord_dir;
  Vec2 bulge_dir;
  double half_angle = 0.0;

  static ArcGeometry through(const Point2& a, const Point2& b, double ratio) {
    ArcGeometry g;
    const double chord = distance(a, b);
    g.chord_dir = (b - a) / chord;
    const Vec2 left{-g.chord_dir.y, g.chord_dir.x};
    const double sign = ratio >= 0.0 ? 1.0 : -1.0;
    g.bulge_dir = sign * left;
    g.half_angle = 2.0 * std::atan(2.0 * std::abs(ratio));
    g.radius = chord / (2.0 * std::sin(g.half_angle));
    g.center = 0.5 * (a + b) - g.bulge_dir * (g.radius * std::cos(g.half_angle));
    return g;
  }

  double length() const { return 2.0 * half_angle * radius; }

  // f in [0, 1] from a to b
  Point2 at(double f) const {
    const double phi = -half_angle + 2.0 * half_angle * f;
    return center + radius * (std::cos(phi) * bulge_dir + std::sin(phi) * chord_dir);
  }
};

std::vector<Point2> sample_straight(const Point2& a, const Point2& b, int n) {
  std::vector<Point2> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pts[i] = a + (double(i) / (n - 1)) * (b - a);
  pts.front() = a;
  pts.back() = b;
  return pts;
}

std::vector<Point2> sample_arc(const Point2& a, const Point2& b, double ratio, int n) {
  const ArcGeometry arc = ArcGeometry::through(a, b, ratio);
  std::vector<Point2> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pts[i] = arc.at(double(i) / (n - 1));
  pts.front() = a;
  pts.back() = b;
  return pts;
}

// Two mirrored arcs meeting tangentially at the chord midpoint.
std::vector<Point2> sample_s_curve(const Point2& a, const Point2& b, double ratio, int n) {
  const Point2 mid = 0.5 * (a + b);
  const ArcGeometry first = ArcGeometry::through(a, mid, ratio);
  const ArcGeometry second = ArcGeometry::through(mid, b, -ratio);
  std::vector<Point2> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double f = double(i) / (n - 1);
    pts[i] = f <= 0.5 ? first.at(2.0 * f) : second.at(2.0 * f - 1.0);
  }
  pts.front() = a;
  pts.back() = b;
  return pts;
}

}  // namespace

OccupancyGrid generate_environment(const GeneratorConfig& config, Rng& rng) {
  config.validate();
  std::vector<std::uint8_t> mask(std::size_t(config.grid_width) * config.grid_height, 0);
  Rasterizer raster{config, mask};
  const double width_m = config.grid_width * config.resolution;
  const double height_m = config.grid_height * config.resolution;

  const auto count = rng.uniform_int(config.object_count_min, config.object_count_max);
  for (std::int64_t k = 0; k < count; ++k) {
    const auto kind = config.object_kinds[std::size_t(
        rng.uniform_int(0, std::int64_t(config.object_kinds.size()) - 1))];
    const double size = rng.uniform(config.object_size_min, config.object_size_max);
    const double cx = rng.uniform(0.0, width_m);
    const double cy = rng.uniform(0.0, height_m);
    switch (kind) {
      case ObjectKind::Circle: {
        const double r = 0.5 * size;
        raster.fill(cx, cy, r, [&](const Point2& c) {
          return (c.x - cx) * (c.x - cx) + (c.y - cy) * (c.y - cy) <= r * r;
        });
        break;
      }
      case ObjectKind::Rectangle: {
        const double hw = 0.5 * size;
        const double hh = 0.5 * rng.uniform(config.object_size_min, size);
        const double angle = rng.uniform(0.0, std::numbers::pi);
        const double ca = std::cos(angle), sa = std::sin(angle);
        raster.fill(cx, cy, std::hypot(hw, hh), [&](const Point2& c) {
          const double dx = c.x - cx, dy = c.y - cy;
          const double u = ca * dx + sa * dy;
          const double v = -sa * dx + ca * dy;
          return std::abs(u) <= hw && std::abs(v) <= hh;
        });
        break;
      }
      case ObjectKind::Blob: {
        // 2-4 circles, each containing the blob center, so the union is connected
        const auto parts = rng.uniform_int(2, 4);
        for (std::int64_t j = 0; j < parts; ++j) {
          const double r = rng.uniform(0.25 * size, 0.5 * size);
          const double off = rng.uniform(0.0, 0.5 * size - r);
          const double dir = rng.uniform(0.0, 2.0 * std::numbers::pi);
          const double px = cx + off * std::cos(dir);
          const double py = cy + off * std::sin(dir);
          raster.fill(px, py, r, [&](const Point2& c) {
            return (c.x - px) * (c.x - px) + (c.y - py) * (c.y - py) <= r * r;
          });
        }
        break;
      }
    }
  }
  return OccupancyGrid(config.resolution, Point2{0.0, 0.0}, config.grid_width,
                       config.grid_height, std::move(mask));
}

Path generate_global_path(const GeneratorConfig& config, const OccupancyGrid& grid, Rng& rng) {
  config.validate();
  const double width_m = grid.extent_x();
  const double height_m = grid.extent_y();
  const double margin = std::min({config.clearance_from_endpoints, 0.25 * width_m,
                                  0.25 * height_m});
  auto clear = [&](const Point2& p) {
    const auto d = nearest_obstacle_distance(grid, p);
    return !d || *d >= config.clearance_from_endpoints;
  };
  auto inside = [&](const std::vector<Point2>& pts) {
    return std::all_of(pts.begin(), pts.end(), [&](const Point2& p) {
      return p.x >= grid.origin().x && p.y >= grid.origin().y &&
             p.x <= grid.origin().x + width_m && p.y <= grid.origin().y + height_m;
    });
  };

  const auto& w = config.path_kind_weights;
  const double pick = rng.uniform();
  const PathKind kind = pick < w[0]          ? PathKind::Straight
                        : pick < w[0] + w[1] ? PathKind::Arc
                                             : PathKind::SCurve;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Point2 start = grid.origin() + Vec2{rng.uniform(margin, width_m - margin),
                                              rng.uniform(margin, height_m - margin)};
    const Point2 end = grid.origin() + Vec2{rng.uniform(margin, width_m - margin),
                                            rng.uniform(margin, height_m - margin)};
    const double ratio = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.1, 0.5);
    if (distance(start, end) < std::max(config.min_endpoint_separation, 1e-6)) continue;
    if (!clear(start) || !clear(end)) continue;

    std::vector<Point2> pts;
    switch (kind) {
      case PathKind::Straight: pts = sample_straight(start, end, config.path_point_count); break;
      case PathKind::Arc: pts = sample_arc(start, end, ratio, config.path_point_count); break;
      case PathKind::SCurve: pts = sample_s_curve(start, end, ratio, config.path_point_count); break;
    }
    if (!inside(pts)) continue;
    return Path(std::move(pts));
  }
  fail(ErrorKind::Generation, "no valid " + to_string(kind) +
                                  " path endpoints found after 1000 attempts (grid too crowded?)");
}

Scenario generate_from_seed(const GeneratorConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  OccupancyGrid grid = generate_environment(config, rng);
  Path path = generate_global_path(config, grid, rng);
  return Scenario{seed, std::move(grid), std::move(path), config};
}

Scenario generate_scenario(const GeneratorConfig& config, std::uint64_t index) {
  constexpr int kMaxRetries = 16;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    try {
      return generate_from_seed(config, derive_seed(config.seed, index, std::uint64_t(attempt)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Generation) throw;
    }
  }
  fail(ErrorKind::Generation, "scenario " + std::to_string(index) + " failed after " +
                                  std::to_string(kMaxRetries) + " derived seeds");
}

std::vector<Scenario> generate_dataset(const GeneratorConfig& config, std::size_t count) {
  require(count >= 1, "dataset count must be at least 1");
  std::vector<Scenario> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(generate_scenario(config, i));
  return out;
}

}  // namespace rvp
