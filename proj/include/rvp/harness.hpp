#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rvp/dynamics.hpp"
#include "rvp/forces.hpp"
#include "rvp/iterative.hpp"
#include "rvp/rng.hpp"
#include "rvp/scenarios.hpp"

namespace rvp {

/// Every planner tunable in one place.
struct PlannerParams {
  SpringParams springs;
  ObstacleForceParams obstacles;
  SimConfig sim;
  IterativeConfig iterative;

  /// Tuned defaults for 0.1 m grids.
  static PlannerParams defaults();

  void validate() const;
};

/// Published success rate of the reference experiment (10,000 scenarios),
/// reported next to ours for context.
inline constexpr double kReferenceSuccessRate = 0.943;

struct ScenarioRecord {
  std::size_t index = 0;
  std::uint64_t scenario_seed = 0;
  bool success = false;  // planner flag and an independent re-check agree on safe
  bool planner_flag = false;
  int iterations_used = 0;
  double path_deviation = 0.0;  // Delta P(local, global), m^2
  double wall_time = 0.0;       // s, not covered by determinism guarantees
  std::string failure_reason;   // empty, "unsafe", or an error kind
  std::optional<Path> local_path;
};

struct SummaryStats {
  double mean = 0.0;
  double median = 0.0;
  double p95 = 0.0;
};

struct EvalReport {
  std::size_t total = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  SummaryStats deviation;  // over successful scenarios
  SummaryStats timing;     // over all scenarios
  double total_wall_time = 0.0;
  std::vector<ScenarioRecord> records;  // in dataset order
};

/// Perturbation seed used for `scenario`, so `plan` and `evaluate` agree.
constexpr std::uint64_t scenario_sim_seed(std::uint64_t base, const Scenario& scenario) noexcept {
  return mix64(base ^ scenario.seed);
}

/// Runs the iterative planner on one scenario; never throws for planner
/// failures (they are recorded with a reason).
ScenarioRecord evaluate_scenario(const Scenario& scenario, const PlannerParams& params,
                                 std::size_t index = 0);

/// Sample statistics (median averages the middle pair; p95 is nearest rank).
SummaryStats summarize(std::vector<double> values);

/// Evaluates every scenario on `worker_count` threads. Records are merged
/// by index, so the report (timing aside) does not depend on worker_count.
EvalReport run_batch(std::span<const Scenario> dataset, const PlannerParams& params,
                     int worker_count, bool keep_paths = false);

}  // namespace rvp
