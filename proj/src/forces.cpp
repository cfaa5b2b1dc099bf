#include "rvp/forces.hpp"

#include <array>
#include <cmath>
#include <string>

#include "rvp/error.hpp"

namespace rvp {

SpringParams derive_constants(double mass, double omega, double zeta, double c_scale,
                              RestLengthMode rest_mode) {
  require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
  require(std::isfinite(omega) && omega > 0.0, "omega must be positive");
  require(std::isfinite(zeta) && zeta >= 0.0, "zeta must be non-negative");
  require(std::isfinite(c_scale) && c_scale > 0.0, "c_scale must be positive");
  SpringParams p;
  p.mass = mass;
  p.omega = omega;
  p.zeta = zeta;
  p.c_scale = c_scale;
  p.k_p = mass * omega * omega;
  p.k_a = c_scale * p.k_p;
  p.b = 2.0 * mass * zeta * omega;
  p.rest_mode = rest_mode;
  return p;
}

ObstacleForceParams ObstacleForceParams::with_defaults(double a1, double a2, double resolution) {
  ObstacleForceParams p;
  p.a1 = a1;
  p.a2 = a2;
  p.a3 = a1 / 2.0;
  p.n_exp = 2.0;
  p.r_max = a1 + 5.0 * p.a3;
  p.r_floor = resolution / 2.0;
  return p;
}

void ObstacleForceParams::validate() const {
  auto check = [](bool ok, const char* field, const char* rule) {
    if (!ok) fail(ErrorKind::Validation, std::string(field) + ": " + rule);
  };
  check(std::isfinite(a1) && a1 > 0.0, "a1", "must be positive");
  check(std::isfinite(a2) && a2 > 0.0, "a2", "must be positive");
  check(std::isfinite(a3) && a3 > 0.0, "a3", "must be positive");
  check(std::isfinite(n_exp) && n_exp >= 1.0, "n_exp", "must be at least 1");
  check(std::isfinite(r_floor) && r_floor > 0.0 && r_floor < a1, "r_floor", "must lie in (0, a1)");
  check(std::isfinite(r_max) && r_max >= a1, "r_max", "must be at least a1");
}

RestLengths make_rest_lengths(std::span<const Point2> points, RestLengthMode mode) {
  RestLengths rest;
  rest.lengths.resize(points.size() > 0 ? points.size() - 1 : 0, 0.0);
  if (mode == RestLengthMode::Initial) {
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
      rest.lengths[i] = distance(points[i], points[i + 1]);
    }
  }
  return rest;
}

Vec2 spring_force(const Point2& from, const Point2& to, double k, double rest) noexcept {
  const Vec2 d = to - from;
  const double len = norm(d);
  if (len == 0.0) return {};
  return (k * (len - rest) / len) * d;
}

namespace {

Vec2 neighbor_force(std::size_t i, std::span<const Point2> x, const RestLengths& rest, double k_p) {
  return spring_force(x[i], x[i - 1], k_p, rest.lengths[i - 1]) +
         spring_force(x[i], x[i + 1], k_p, rest.lengths[i]);
}

}  // namespace

AnchorSet compute_anchor_points(std::span<const Point2> points, const SpringParams& params,
                                const RestLengths& rest) {
  require(points.size() >= 3, "anchor computation needs at least 3 points");
  require(rest.lengths.size() + 1 == points.size(), "rest length count must match segments");
  require(params.k_a > 0.0, "k_a must be positive");
  AnchorSet set;
  set.anchors.reserve(points.size() - 2);
  set.rest_lengths.reserve(points.size() - 2);
  for (std::size_t i = 1; i + 1 < points.size(); ++i) {
    const Vec2 f = neighbor_force(i, points, rest, params.k_p);
    const Point2 anchor = points[i] - f / params.k_a;
    set.anchors.push_back(anchor);
    set.rest_lengths.push_back(distance(anchor, points[i]));
  }
  return set;
}

Vec2 path_force(std::size_t i, std::span<const Point2> positions, const AnchorSet& anchors,
                const RestLengths& rest, const SpringParams& params) {
  require(i > 0 && i + 1 < positions.size(), "path_force needs an interior index");
  return neighbor_force(i, positions, rest, params.k_p) +
         spring_force(positions[i], anchors.anchors[i - 1], params.k_a,
                      anchors.rest_lengths[i - 1]);
}

double obstacle_force_magnitude(double r, const ObstacleForceParams& p) noexcept {
  if (r > p.r_max) return 0.0;
  const double rc = std::max(r, p.r_floor);
  const double base = p.a2 / (p.n_exp == 2.0 ? rc * rc : std::pow(rc, p.n_exp));
  if (rc <= p.a1) return base;
  return base * std::exp(-(rc - p.a1) / p.a3);
}

namespace {

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kNodes = {-0.9602898564975363, -0.7966664774136267,
                                          -0.5255324099163290, -0.1834346424956498,
                                          0.1834346424956498,  0.5255324099163290,
                                          0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kWeights = {0.1012285362903763, 0.2223810344533745,
                                            0.3137066238877632, 0.3626837833783620,
                                            0.3626837833783620, 0.3137066238877632,
                                            0.2223810344533745, 0.1012285362903763};

double integrate_decay_branch(double lo, double hi, const ObstacleForceParams& p) {
  constexpr int panels = 16;
  const double h = (hi - lo) / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = lo + (k + 0.5) * h;
    for (std::size_t j = 0; j < kNodes.size(); ++j) {
      const double s = mid + 0.5 * h * kNodes[j];
      sum += kWeights[j] * p.a2 * std::exp(-(s - p.a1) / p.a3) / std::pow(s, p.n_exp);
    }
  }
  return 0.5 * h * sum;
}

double integrate_power_branch(double lo, double hi, const ObstacleForceParams& p) {
  if (p.n_exp == 1.0) return p.a2 * std::log(hi / lo);
  const double e = 1.0 - p.n_exp;
  return p.a2 * (std::pow(hi, e) - std::pow(lo, e)) / e;
}

}  // namespace

double obstacle_potential(double r, const ObstacleForceParams& p) {
  if (r >= p.r_max) return 0.0;
  double u = 0.0;
  double lo = r;
  if (lo < p.r_floor) {
    const double upto = std::min(p.r_floor, p.r_max);
    u += (upto - lo) * obstacle_force_magnitude(p.r_floor, p);
    lo = upto;
  }
  if (lo < p.a1 && lo < p.r_max) {
    const double upto = std::min(p.a1, p.r_max);
    u += integrate_power_branch(lo, upto, p);
    lo = upto;
  }
  if (lo < p.r_max) u += integrate_decay_branch(lo, p.r_max, p);
  return u;
}

Vec2 total_obstacle_force(const Point2& p, const OccupancyGrid& grid,
                          const ObstacleForceParams& params) {
  Vec2 total;
  const double area = grid.resolution() * grid.resolution();
  grid.for_each_occupied_within(p, params.r_max, [&](const Point2& c, double d) {
    const Vec2 dir = d > 0.0 ? (p - c) / d : Vec2{1.0, 0.0};
    total += (obstacle_force_magnitude(d, params) * area) * dir;
  });
  return total;
}

double obstacle_potential_energy(const Point2& p, const OccupancyGrid& grid,
                                 const ObstacleForceParams& params) {
  double u = 0.0;
  const double area = grid.resolution() * grid.resolution();
  grid.for_each_occupied_within(p, params.r_max, [&](const Point2&, double d) {
    u += obstacle_potential(d, params) * area;
  });
  return u;
}

double spring_potential_energy(std::span<const Point2> positions, const AnchorSet& anchors,
                               const RestLengths& rest, const SpringParams& params) {
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
    const double s = distance(positions[i], positions[i + 1]) - rest.lengths[i];
    e += 0.5 * params.k_p * s * s;
  }
  for (std::size_t i = 1; i + 1 < positions.size(); ++i) {
    const double s = distance(positions[i], anchors.anchors[i - 1]) - anchors.rest_lengths[i - 1];
    e += 0.5 * params.k_a * s * s;
  }
  return e;
}

}  // namespace rvp
