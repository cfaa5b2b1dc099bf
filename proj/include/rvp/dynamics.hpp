#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rvp/forces.hpp"
#include "rvp/geometry.hpp"
#include "rvp/grid.hpp"
#include "rvp/rng.hpp"

namespace rvp {

struct SimConfig {
  double dt = 0.01;
  int max_steps = 2000;
  double p_min = 0.25;         // fraction of max_steps before a steady exit is allowed
  double a_t = 1e-2;           // steady-state acceleration threshold, m/s^2
  double v_stag = 1e-3;        // stagnation speed threshold, m/s
  int stag_window = 25;        // consecutive slow steps before a perturbation
  double perturb_mag = 0.2;    // m
  std::uint64_t rng_seed = 0;

  /// Throws Error(Validation) naming the offending field.
  void validate() const;
};

/// Mass chain state. Endpoints are pinned: their velocity and acceleration stay zero.
struct SimState {
  std::vector<Point2> positions;
  std::vector<Vec2> velocities;
  std::vector<Vec2> accelerations;
  int step = 0;
  std::vector<int> stagnation_counters;

  static SimState at_rest(std::vector<Point2> positions);
};

struct PlanDiagnostics {
  int steps_taken = 0;
  bool steady_exit = false;
  int perturbations = 0;
  double final_max_accel = 0.0;
  friend bool operator==(const PlanDiagnostics&, const PlanDiagnostics&) = default;
};

/// Everything that stays fixed while one chain is integrated.
struct ChainModel {
  const OccupancyGrid& grid;
  const AnchorSet& anchors;
  const RestLengths& rest;
  const SpringParams& springs;
  const ObstacleForceParams& obstacles;
};

/// One semi-implicit Euler step: a = (F_p + F_o - b v) / m, v += dt a, x += dt v.
/// Throws Error(NumericFailure) on a non-finite force.
SimState step_dynamics(const SimState& state, const ChainModel& model, double dt);

/// Max interior acceleration magnitude strictly below a_t.
bool is_steady(const SimState& state, double a_t);

double max_interior_accel(const SimState& state);

/// Updates the per-point counters (interior point within d_c of an obstacle
/// and slower than v_stag) and returns indices whose counter reached stag_window.
std::vector<std::size_t> path_stagnated(SimState& state, const OccupancyGrid& grid, double d_c,
                                        double v_stag, int stag_window);

/// Moves each listed interior point by perturb_mag in a random direction,
/// zeroing its velocity and stagnation counter.
SimState perturb_path(const SimState& state, const std::vector<std::size_t>& indices,
                      double perturb_mag, Rng& rng);

/// Kinetic plus spring plus obstacle potential energy of the chain.
double mechanical_energy(const SimState& state, const ChainModel& model);

struct PlanOutput {
  Path path;
  PlanDiagnostics diagnostics;
};

/// Called after every completed step (after any perturbation).
using StepObserver = std::function<void(const SimState&, const ChainModel&)>;

/// Reshapes `global_path` by integrating the viscoelastic chain until steady
/// state (after p_min * max_steps) or max_steps, then spline-resamples the
/// final positions at the mean input spacing, rounded so the spline splits
/// into whole segments. `d_c` gates stagnation detection only.
PlanOutput rvp_plan(const Path& global_path, const OccupancyGrid& grid,
                    const SpringParams& springs, const ObstacleForceParams& obstacles,
                    const SimConfig& config, double d_c, const StepObserver& observer = {});

}  // namespace rvp
