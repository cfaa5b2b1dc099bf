#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rvp/geometry.hpp"
#include "rvp/grid.hpp"

namespace rvp {

/// How the inter-point spring rest lengths are chosen at initialization.
enum class RestLengthMode {
  Initial,  // rest length = initial distance; the initial path is an equilibrium
  Zero,     // elastic-band style contraction; anchors are offset from the path
};

/// Mass-spring-damper constants. Build through derive_constants() unless a
/// test needs raw stiffness values (for instance k_p = 0 to isolate an anchor).
struct SpringParams {
  double mass = 1.0;
  double omega = 0.0;
  double zeta = 0.0;
  double c_scale = 0.0;
  double k_p = 0.0;  // between neighboring path points
  double k_a = 0.0;  // between a path point and its anchor
  double b = 0.0;    // viscous damping
  RestLengthMode rest_mode = RestLengthMode::Initial;
};

/// k_p = m w^2, k_a = c k_p, b = 2 m zeta w.
SpringParams derive_constants(double mass, double omega, double zeta, double c_scale,
                              RestLengthMode rest_mode = RestLengthMode::Initial);

/// Radial obstacle force profile: a2 / r^n inside the cutoff a1, with an extra
/// exp(-(r - a1) / a3) decay beyond it, zero past r_max and clamped below r_floor.
struct ObstacleForceParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double n_exp = 2.0;
  double r_max = 0.0;
  double r_floor = 0.0;

  /// n = 2, a3 = a1 / 2, r_max = a1 + 5 a3, r_floor = resolution / 2.
  static ObstacleForceParams with_defaults(double a1, double a2, double resolution);

  /// Throws Error(Validation) naming the offending field.
  void validate() const;
};

struct RestLengths {
  std::vector<double> lengths;  // one per segment
};

struct AnchorSet {
  std::vector<Point2> anchors;      // one per interior point
  std::vector<double> rest_lengths;
};

RestLengths make_rest_lengths(std::span<const Point2> points, RestLengthMode mode);

/// Hooke spring acting on `from`: k (|to - from| - rest) along unit(to - from).
/// Zero when the points coincide.
Vec2 spring_force(const Point2& from, const Point2& to, double k, double rest) noexcept;

/// Places each interior anchor so the neighbor springs and a zero-length
/// anchor spring balance; the anchor rest length is the resulting offset.
AnchorSet compute_anchor_points(std::span<const Point2> points, const SpringParams& params,
                                const RestLengths& rest);

/// Net spring force on interior point i (neighbors plus anchor).
Vec2 path_force(std::size_t i, std::span<const Point2> positions, const AnchorSet& anchors,
                const RestLengths& rest, const SpringParams& params);

double obstacle_force_magnitude(double r, const ObstacleForceParams& p) noexcept;

/// Potential U(r) with U' = -obstacle_force_magnitude and U(r_max) = 0.
double obstacle_potential(double r, const ObstacleForceParams& p);

/// Repulsive force on `p` summed over occupied cells within r_max, each
/// weighted by the cell area. A point exactly on a cell center is pushed +x.
Vec2 total_obstacle_force(const Point2& p, const OccupancyGrid& grid,
                          const ObstacleForceParams& params);

/// Obstacle potential energy of a single point (cell-area weighted).
double obstacle_potential_energy(const Point2& p, const OccupancyGrid& grid,
                                 const ObstacleForceParams& params);

/// Sum of 1/2 k (|d| - l)^2 over every neighbor and anchor spring.
double spring_potential_energy(std::span<const Point2> positions, const AnchorSet& anchors,
                               const RestLengths& rest, const SpringParams& params);

}  // namespace rvp
