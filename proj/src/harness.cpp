#include "rvp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "rvp/error.hpp"
#include "rvp/rng.hpp"

namespace rvp {

PlannerParams PlannerParams::defaults() {
  PlannerParams p;
  p.springs = derive_constants(1.0, 2.0, 0.9, 1.0);
  p.obstacles = ObstacleForceParams::with_defaults(0.4, 4.0, 0.1);
  p.sim = SimConfig{};
  p.iterative = IterativeConfig{};
  return p;
}

void PlannerParams::validate() const {
  auto check = [](bool ok, const char* field, const char* rule) {
    if (!ok) fail(ErrorKind::Validation, std::string(field) + ": " + rule);
  };
  check(std::isfinite(springs.mass) && springs.mass > 0.0, "mass", "must be positive");
  check(std::isfinite(springs.omega) && springs.omega > 0.0, "omega", "must be positive");
  check(std::isfinite(springs.zeta) && springs.zeta >= 0.0, "zeta", "must be non-negative");
  check(std::isfinite(springs.c_scale) && springs.c_scale > 0.0, "c_scale", "must be positive");
  obstacles.validate();
  sim.validate();
  iterative.validate();
}

ScenarioRecord evaluate_scenario(const Scenario& scenario, const PlannerParams& params,
                                 std::size_t index) {
  ScenarioRecord rec;
  rec.index = index;
  rec.scenario_seed = scenario.seed;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    SimConfig sim = params.sim;
    sim.rng_seed = scenario_sim_seed(params.sim.rng_seed, scenario);
    const IterativeResult res = iterative_rvp(scenario.global_path, scenario.grid, params.springs,
                                              params.obstacles, sim, params.iterative);
    rec.planner_flag = res.safe;
    rec.iterations_used = res.iterations_used;
    rec.path_deviation = path_deviation(res.path, scenario.global_path);
    const bool recheck_clear = !collision_check(res.path, scenario.grid, params.iterative.d_c,
                                                params.iterative.eval_spacing)
                                    .colliding;
    rec.success = res.safe && recheck_clear;
    if (!rec.success) rec.failure_reason = res.safe ? "flag_contradicted" : "unsafe";
    rec.local_path = res.path;
  } catch (const Error& e) {
    rec.success = false;
    rec.failure_reason = std::string(to_string(e.kind()));
  }
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

SummaryStats summarize(std::vector<double> values) {
  SummaryStats s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / double(n);
  s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  const auto rank = std::size_t(std::ceil(0.95 * double(n)));
  s.p95 = values[std::clamp<std::size_t>(rank, 1, n) - 1];
  return s;
}

EvalReport run_batch(std::span<const Scenario> dataset, const PlannerParams& params,
                     int worker_count, bool keep_paths) {
  require(worker_count >= 1, "worker_count must be at least 1");
  params.validate();
  EvalReport report;
  report.total = dataset.size();
  report.records.resize(dataset.size());

  const auto t0 = std::chrono::steady_clock::now();
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < dataset.size(); i = next++) {
      ScenarioRecord rec = evaluate_scenario(dataset[i], params, i);
      if (!keep_paths) rec.local_path.reset();
      report.records[i] = std::move(rec);
    }
  };
  const auto workers = std::min<std::size_t>(std::size_t(worker_count),
                                             std::max<std::size_t>(1, dataset.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  report.total_wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::vector<double> deviations;
  std::vector<double> times;
  for (const auto& r : report.records) {
    times.push_back(r.wall_time);
    if (r.success) {
      ++report.successes;
      deviations.push_back(r.path_deviation);
    }
  }
  report.success_rate =
      report.total == 0 ? 0.0 : double(report.successes) / double(report.total);
  report.deviation = summarize(std::move(deviations));
  report.timing = summarize(std::move(times));
  return report;
}

}  // namespace rvp
