#pragma once

#include <utility>
#include <vector>

#include "rvp/dynamics.hpp"
#include "rvp/forces.hpp"
#include "rvp/geometry.hpp"
#include "rvp/grid.hpp"

namespace rvp {

struct IterativeConfig {
  double lambda_decay = 0.8;
  double d_c = 0.2;
  int max_iters = 5;
  double eval_spacing = 0.1;

  /// Throws Error(Validation) naming the offending field.
  void validate() const;
};

struct IterativeResult {
  Path path;
  bool safe = false;
  int iterations_used = 0;
  std::vector<PlanDiagnostics> per_iteration;  // one entry per planner run
  std::vector<std::pair<double, double>> effective_a1_a2;  // per planner run
};

/// (a1, a2) scaled by lambda^(iteration - 1); iteration counts from 1.
std::pair<double, double> decay_schedule(double a1, double a2, double lambda_decay, int iteration);

/// Inserts each unsafe point at its position along the segment it lies on.
/// Points that coincide with an existing vertex are skipped.
Path densify_path(const Path& path, const std::vector<Point2>& unsafe_points);

/// Evaluates the path; while it collides, densifies it at the unsafe points,
/// decays (a1, a2) and re-runs the planner on the current path. The flag is
/// safe only when the returned path passes collision_check. iterations_used
/// counts planner runs, and is 1 when the global path is already safe.
IterativeResult iterative_rvp(const Path& global_path, const OccupancyGrid& grid,
                              const SpringParams& springs, const ObstacleForceParams& obstacles,
                              const SimConfig& sim, const IterativeConfig& config,
                              const StepObserver& observer = {});

}  // namespace rvp
