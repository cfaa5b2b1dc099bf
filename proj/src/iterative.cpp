#include "rvp/iterative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rvp/error.hpp"
#include "rvp/rng.hpp"

namespace rvp {

void IterativeConfig::validate() const {
  auto check = [](bool ok, const char* field, const char* rule) {
    if (!ok) fail(ErrorKind::Validation, std::string(field) + ": " + rule);
  };
  check(std::isfinite(lambda_decay) && lambda_decay > 0.0 && lambda_decay <= 1.0, "lambda_decay",
        "must lie in (0, 1]");
  check(std::isfinite(d_c) && d_c >= 0.0, "d_c", "must be non-negative");
  check(max_iters >= 1, "max_iters", "must be at least 1");
  check(std::isfinite(eval_spacing) && eval_spacing > 0.0, "eval_spacing", "must be positive");
}

std::pair<double, double> decay_schedule(double a1, double a2, double lambda_decay, int iteration) {
  require(iteration >= 1, "iteration counts from 1");
  const double f = std::pow(lambda_decay, iteration - 1);
  return {a1 * f, a2 * f};
}

Path densify_path(const Path& path, const std::vector<Point2>& unsafe_points) {
  if (unsafe_points.empty()) return path;
  struct Insert {
    std::size_t segment;
    double t;
    Point2 p;
  };
  std::vector<Insert> inserts;
  for (const auto& p : unsafe_points) {
    std::size_t best_seg = 0;
    double best_d = std::numeric_limits<double>::infinity();
    double best_t = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const Vec2 ab = path[i + 1] - path[i];
      const double t = std::clamp(dot(p - path[i], ab) / dot(ab, ab), 0.0, 1.0);
      const double d = distance(p, path[i] + t * ab);
      if (d < best_d) {
        best_d = d;
        best_seg = i;
        best_t = t;
      }
    }
    const Point2& a = path[best_seg];
    const Point2& b = path[best_seg + 1];
    const double tol = 1e-9 * std::max(1.0, distance(a, b));
    if (distance(p, a) <= tol || distance(p, b) <= tol) continue;
    inserts.push_back({best_seg, best_t, p});
  }
  std::sort(inserts.begin(), inserts.end(), [](const Insert& l, const Insert& r) {
    return l.segment != r.segment ? l.segment < r.segment : l.t < r.t;
  });

  std::vector<Point2> out;
  out.reserve(path.size() + inserts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    out.push_back(path[i]);
    for (; k < inserts.size() && inserts[k].segment == i; ++k) {
      if (!(out.back() == inserts[k].p)) out.push_back(inserts[k].p);
    }
  }
  return Path(std::move(out));
}

IterativeResult iterative_rvp(const Path& global_path, const OccupancyGrid& grid,
                              const SpringParams& springs, const ObstacleForceParams& obstacles,
                              const SimConfig& sim, const IterativeConfig& config,
                              const StepObserver& observer) {
  config.validate();
  sim.validate();

  IterativeResult result{global_path, false, 0, {}, {}};
  Path current = global_path;
  for (int iteration = 1;; ++iteration) {
    const CollisionReport report = collision_check(current, grid, config.d_c, config.eval_spacing);
    if (!report.colliding) {
      result.path = std::move(current);
      result.safe = true;
      result.iterations_used = std::max(1, iteration - 1);
      return result;
    }
    if (iteration > config.max_iters) {
      result.path = std::move(current);
      result.safe = false;
      result.iterations_used = config.max_iters;
      return result;
    }

    const Path initial = densify_path(current, report.unsafe_points);
    const auto [a1, a2] = decay_schedule(obstacles.a1, obstacles.a2, config.lambda_decay, iteration);
    ObstacleForceParams decayed = obstacles;
    decayed.a1 = a1;
    decayed.a2 = a2;
    SimConfig run = sim;
    run.rng_seed = derive_seed(sim.rng_seed, std::uint64_t(iteration));

    PlanOutput out = rvp_plan(initial, grid, springs, decayed, run, config.d_c, observer);
    result.per_iteration.push_back(out.diagnostics);
    result.effective_a1_a2.emplace_back(a1, a2);
    current = std::move(out.path);
  }
}

}  // namespace rvp
