#include "rvp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rvp/error.hpp"

namespace rvp {

void SimConfig::validate() const {
  auto check = [](bool ok, const char* field, const char* rule) {
    if (!ok) fail(ErrorKind::Validation, std::string(field) + ": " + rule);
  };
  check(std::isfinite(dt) && dt > 0.0, "dt", "must be positive");
  check(max_steps >= 1, "max_steps", "must be at least 1");
  check(std::isfinite(p_min) && p_min > 0.0 && p_min <= 1.0, "p_min", "must lie in (0, 1]");
  check(std::isfinite(a_t) && a_t > 0.0, "a_t", "must be positive");
  check(std::isfinite(v_stag) && v_stag >= 0.0, "v_stag", "must be non-negative");
  check(stag_window >= 1, "stag_window", "must be at least 1");
  check(std::isfinite(perturb_mag) && perturb_mag > 0.0, "perturb_mag", "must be positive");
}

SimState SimState::at_rest(std::vector<Point2> positions) {
  SimState s;
  const std::size_t n = positions.size();
  s.positions = std::move(positions);
  s.velocities.assign(n, Vec2{});
  s.accelerations.assign(n, Vec2{});
  s.stagnation_counters.assign(n, 0);
  return s;
}

namespace {

void advance(SimState& state, const ChainModel& model, double dt, std::vector<Vec2>& accel) {
  const std::size_t n = state.positions.size();
  const SpringParams& sp = model.springs;
  accel.assign(n, Vec2{});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Vec2 f = path_force(i, state.positions, model.anchors, model.rest, sp) +
                   total_obstacle_force(state.positions[i], model.grid, model.obstacles) -
                   sp.b * state.velocities[i];
    if (!is_finite(f)) {
      fail(ErrorKind::NumericFailure, "non-finite force on point " + std::to_string(i) +
                                          " at step " + std::to_string(state.step + 1));
    }
    accel[i] = f / sp.mass;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    state.velocities[i] += dt * accel[i];
    state.positions[i] += dt * state.velocities[i];
  }
  state.accelerations.swap(accel);
  ++state.step;
}

}  // namespace

SimState step_dynamics(const SimState& state, const ChainModel& model, double dt) {
  SimState next = state;
  std::vector<Vec2> scratch;
  advance(next, model, dt, scratch);
  return next;
}

double max_interior_accel(const SimState& state) {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < state.accelerations.size(); ++i) {
    worst = std::max(worst, norm(state.accelerations[i]));
  }
  return worst;
}

bool is_steady(const SimState& state, double a_t) { return max_interior_accel(state) < a_t; }

std::vector<std::size_t> path_stagnated(SimState& state, const OccupancyGrid& grid, double d_c,
                                        double v_stag, int stag_window) {
  std::vector<std::size_t> out;
  const std::size_t n = state.positions.size();
  if (state.stagnation_counters.size() != n) state.stagnation_counters.assign(n, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    int& counter = state.stagnation_counters[i];
    if (norm(state.velocities[i]) < v_stag && grid.any_occupied_within(state.positions[i], d_c)) {
      ++counter;
    } else {
      counter = 0;
    }
    if (counter >= stag_window) out.push_back(i);
  }
  return out;
}

SimState perturb_path(const SimState& state, const std::vector<std::size_t>& indices,
                      double perturb_mag, Rng& rng) {
  SimState out = state;
  for (std::size_t i : indices) {
    require(i > 0 && i + 1 < out.positions.size(), "only interior points can be perturbed");
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    out.positions[i] += perturb_mag * Vec2{std::cos(theta), std::sin(theta)};
    out.velocities[i] = Vec2{};
    out.stagnation_counters[i] = 0;
  }
  return out;
}

double mechanical_energy(const SimState& state, const ChainModel& model) {
  double kinetic = 0.0;
  double obstacle = 0.0;
  for (std::size_t i = 1; i + 1 < state.positions.size(); ++i) {
    kinetic += 0.5 * model.springs.mass * dot(state.velocities[i], state.velocities[i]);
    obstacle += obstacle_potential_energy(state.positions[i], model.grid, model.obstacles);
  }
  return kinetic + obstacle +
         spring_potential_energy(state.positions, model.anchors, model.rest, model.springs);
}

PlanOutput rvp_plan(const Path& global_path, const OccupancyGrid& grid,
                    const SpringParams& springs, const ObstacleForceParams& obstacles,
                    const SimConfig& config, double d_c, const StepObserver& observer) {
  require(global_path.size() >= 3, "global path needs at least 3 points");
  config.validate();

  const auto& initial = global_path.points();
  const RestLengths rest = make_rest_lengths(initial, springs.rest_mode);
  const AnchorSet anchors = compute_anchor_points(initial, springs, rest);
  const ChainModel model{grid, anchors, rest, springs, obstacles};

  SimState state = SimState::at_rest(initial);
  Rng rng(config.rng_seed);
  PlanDiagnostics diag;
  std::vector<Vec2> scratch;
  const double min_steps = config.p_min * config.max_steps;

  for (int step = 1; step <= config.max_steps; ++step) {
    advance(state, model, config.dt, scratch);
    diag.steps_taken = step;

    bool perturbed = false;
    const auto stuck = path_stagnated(state, grid, d_c, config.v_stag, config.stag_window);
    if (!stuck.empty()) {
      state = perturb_path(state, stuck, config.perturb_mag, rng);
      diag.perturbations += int(stuck.size());
      perturbed = true;
    }
    if (observer) observer(state, model);

    if (!perturbed && step > min_steps && is_steady(state, config.a_t)) {
      diag.steady_exit = true;
      break;
    }
  }
  diag.final_max_accel = max_interior_accel(state);

  std::vector<Point2> final_points;
  final_points.reserve(state.positions.size());
  for (const auto& p : state.positions) {
    if (final_points.empty() || !(final_points.back() == p)) final_points.push_back(p);
  }
  if (final_points.size() < 2) final_points = {global_path.front(), global_path.back()};
  // Whole number of segments closest to the mean input spacing.
  const Path chain(std::move(final_points));
  const double target = global_path.length() / double(global_path.size() - 1);
  const double arc = spline_length(chain);
  const double segments = std::max(1.0, std::round(arc / target));
  return {resample_spline(chain, arc / segments), diag};
}

}  // namespace rvp
