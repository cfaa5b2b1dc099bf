// Acceptance suite: prints one PASS/FAIL line per criterion.
//
//   acceptance [--jobs N] [--count N] [--rvp PATH] [--update-golden] [--only LIST]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rvp/cli.hpp"
#include "rvp/harness.hpp"
#include "rvp/io.hpp"
#include "rvp/svg.hpp"
#include "constructed.hpp"
#include "oscillator.hpp"
#include "support.hpp"
#include "temp_dir.hpp"

namespace rvp {
namespace {

struct Options {
  int jobs = 8;
  std::size_t count = 1000;
  std::string rvp_binary;
  bool update_golden = false;
  std::vector<int> only;
};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Collision oracle that shares no code with collision_check: its own
// sampling of each segment and a direct scan of the cells around each sample.
bool oracle_collides(const Path& path, const OccupancyGrid& g, double d_c, double spacing) {
  const int reach = int(std::ceil(d_c / g.resolution())) + 1;
  auto close = [&](const Point2& q) {
    const int r0 = int(std::floor((q.y - g.origin().y) / g.resolution()));
    const int c0 = int(std::floor((q.x - g.origin().x) / g.resolution()));
    for (int r = r0 - reach; r <= r0 + reach; ++r)
      for (int c = c0 - reach; c <= c0 + reach; ++c) {
        if (!g.occupied(r, c)) continue;
        const double cx = g.origin().x + (c + 0.5) * g.resolution();
        const double cy = g.origin().y + (r + 0.5) * g.resolution();
        if (std::hypot(q.x - cx, q.y - cy) <= d_c) return true;
      }
    return false;
  };
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Point2 a = path[i], b = path[i + 1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    for (int k = 0; k * spacing < len; ++k) {
      const double t = k * spacing / len;
      if (close({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)})) return true;
    }
  }
  return close(path.back());
}

// Batch shared by criteria 1 and 7.
struct BatchRun {
  std::vector<Scenario> data;
  EvalReport report;
  double seconds = 0;
};

const BatchRun& default_batch(const Options& opt) {
  static BatchRun run = [&] {
    BatchRun b;
    const auto t0 = std::chrono::steady_clock::now();
    b.data = generate_dataset(GeneratorConfig{}, opt.count);
    b.report = run_batch(b.data, PlannerParams::defaults(), opt.jobs, true);
    b.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return b;
  }();
  return run;
}

Outcome ac1_success_rate(const Options& opt) {
  const auto& b = default_batch(opt);
  const bool ok = b.report.success_rate >= 0.85 && b.seconds <= 900.0 && opt.count >= 1000;
  return {ok, fmt("success rate %.4f (%zu/%zu, threshold 0.85; reference 94.3%% on 10,000) "
                  "in %.1f s with %d jobs (limit 900 s)",
                  b.report.success_rate, b.report.successes, b.report.total, b.seconds, opt.jobs)};
}

Outcome ac2_integrator(const Options&) {
  const double exact = 2.0 * std::exp(-1.0);
  const double e1 = std::abs(test::oscillator_position(1, 1, 1, 1, 1e-3, 1) - exact);
  const double e2 = std::abs(test::oscillator_position(1, 1, 1, 1, 5e-4, 1) - exact);
  const double ratio = e1 / e2;
  return {e1 <= 1e-3 && ratio >= 1.6 && ratio <= 2.4,
          fmt("error %.3e at dt=1e-3, %.3e at dt=5e-4, ratio %.3f (want 2 +/- 20%%)", e1, e2,
              ratio)};
}

Outcome ac3_force_law(const Options&) {
  Rng rng(303);
  double worst_jump = 0, worst_grad = 0;
  int monotone_violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto p = ObstacleForceParams::with_defaults(rng.uniform(0.1, 3), rng.uniform(0.1, 20),
                                                rng.uniform(0.01, 0.1));
    p.n_exp = rng.uniform(1, 4);
    const double exact = p.a2 / std::pow(p.a1, p.n_exp);
    for (double r : {std::nextafter(p.a1, 0.0), p.a1, std::nextafter(p.a1, 1e9)})
      worst_jump = std::max(worst_jump, std::abs(obstacle_force_magnitude(r, p) - exact));
    double prev = obstacle_force_magnitude(p.r_floor, p);
    for (int k = 1; k <= 1000; ++k) {
      const double f = obstacle_force_magnitude(p.r_floor + (p.r_max - p.r_floor) * k / 1000, p);
      if (!(f < prev)) ++monotone_violations;
      prev = f;
    }

    const auto mode = trial % 2 ? RestLengthMode::Zero : RestLengthMode::Initial;
    const Path path = test::random_path(rng, 3 + int(rng.uniform_int(0, 20)));
    const auto sp = derive_constants(rng.uniform(0.5, 2), rng.uniform(0.5, 4), 0.9,
                                     rng.uniform(0.2, 3), mode);
    const auto rest = make_rest_lengths(path.points(), mode);
    const auto anchors = compute_anchor_points(path.points(), sp, rest);
    std::vector<Point2> x = path.points();
    for (std::size_t i = 1; i + 1 < x.size(); ++i)
      x[i] += Vec2{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
      const double h = 1e-6;
      Vec2 grad;
      for (int axis = 0; axis < 2; ++axis) {
        auto plus = x, minus = x;
        (axis ? plus[i].y : plus[i].x) += h;
        (axis ? minus[i].y : minus[i].x) -= h;
        (axis ? grad.y : grad.x) = (spring_potential_energy(plus, anchors, rest, sp) -
                                    spring_potential_energy(minus, anchors, rest, sp)) / (2 * h);
      }
      const Vec2 f = path_force(i, x, anchors, rest, sp);
      worst_grad = std::max(worst_grad, norm(f + grad) / std::max(1.0, norm(f)));
    }
  }
  return {worst_jump <= 1e-9 && monotone_violations == 0 && worst_grad <= 1e-5,
          fmt("cutoff jump %.2e, monotonicity violations %d, gradient rel. error %.2e "
              "(100 configurations)",
              worst_jump, monotone_violations, worst_grad)};
}

Outcome ac4_equilibrium(const Options&) {
  const auto params = PlannerParams::defaults();
  GeneratorConfig cfg;
  cfg.seed = 404;
  const OccupancyGrid empty(cfg.resolution, {0, 0}, cfg.grid_width, cfg.grid_height);
  double worst = 0;
  int bad = 0;
  const auto data = generate_dataset(cfg, 100);
  for (const auto& s : data) {
    const auto out = rvp_plan(s.global_path, empty, params.springs, params.obstacles, params.sim,
                              params.iterative.d_c);
    const double dev = path_deviation(out.path, s.global_path);
    worst = std::max(worst, dev);
    if (!(dev < 1e-6) || !out.diagnostics.steady_exit || out.diagnostics.perturbations != 0) ++bad;
  }
  return {bad == 0, fmt("%zu generated paths on an empty grid: max deviation %.3e m^2, "
                        "%d without steady exit or with perturbations",
                        data.size(), worst, bad)};
}

Outcome ac5_anchor_residual(const Options&) {
  Rng rng(505);
  double worst = 0;
  for (auto mode : {RestLengthMode::Initial, RestLengthMode::Zero})
    for (int trial = 0; trial < 100; ++trial) {
      const Path p = test::random_path(rng, 3 + int(rng.uniform_int(0, 60)));
      const auto sp = derive_constants(rng.uniform(0.5, 2), rng.uniform(0.5, 5), 0.9,
                                       rng.uniform(0.2, 3), mode);
      const auto rest = make_rest_lengths(p.points(), mode);
      const auto a = compute_anchor_points(p.points(), sp, rest);
      for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        const Vec2 r = spring_force(p[i], p[i - 1], sp.k_p, rest.lengths[i - 1]) +
                       spring_force(p[i], p[i + 1], sp.k_p, rest.lengths[i]) +
                       sp.k_a * (a.anchors[i - 1] - p[i]);
        worst = std::max(worst, norm(r));
      }
    }
  return {worst < 1e-9, fmt("max residual %.3e over 100 paths x 2 rest-length modes", worst)};
}

Outcome ac6_energy(const Options&) {
  auto params = PlannerParams::defaults();
  params.sim.v_stag = 0.0;  // no stagnation, so no perturbation events
  GeneratorConfig cfg;
  cfg.seed = 606;
  cfg.object_count_min = cfg.object_count_max = 0;
  Rng rng(606);
  int increases = 0, perturbed = 0, runs = 0;
  double worst = 0;
  for (std::size_t k = 0; k < 20; ++k) {
    const Scenario base = generate_scenario(cfg, k);
    const Path& path = base.global_path;
    const Point2 on = path[std::size_t(rng.uniform_int(10, std::int64_t(path.size()) - 11))];
    test::GridBuilder b;
    b.disc(on.x + rng.uniform(-0.3, 0.3), on.y + rng.uniform(-0.3, 0.3), rng.uniform(0.2, 0.7));
    const OccupancyGrid grid = b.build();
    for (double zeta : {0.5, 0.9, 1.2}) {
      const auto sp = derive_constants(params.springs.mass, params.springs.omega, zeta,
                                       params.springs.c_scale, params.springs.rest_mode);
      double e0 = -1, prev = 0;
      const auto out = rvp_plan(path, grid, sp, params.obstacles, params.sim, params.iterative.d_c,
                                [&](const SimState& s, const ChainModel& m) {
                                  const double e = mechanical_energy(s, m);
                                  if (e0 < 0) {
                                    SimState start = SimState::at_rest(path.points());
                                    e0 = mechanical_energy(start, m);
                                    prev = e0;
                                  }
                                  const double rise = (e - prev) / e0;
                                  if (rise > 1e-9) ++increases;
                                  worst = std::max(worst, rise);
                                  prev = e;
                                });
      perturbed += out.diagnostics.perturbations;
      ++runs;
    }
  }
  return {increases == 0 && perturbed == 0,
          fmt("%d runs (20 scenarios x zeta 0.5/0.9/1.2): %d step-to-step increases above "
              "1e-9 E0 (largest relative change %.2e), %d perturbations",
              runs, increases, worst, perturbed)};
}

Outcome ac7_iterative(const Options& opt) {
  const auto params = PlannerParams::defaults();
  const auto& it = params.iterative;
  std::string detail;
  bool ok = true;

  const Scenario corridor = test::corridor_scenario();
  const auto c = iterative_rvp(corridor.global_path, corridor.grid, params.springs,
                               params.obstacles, params.sim, it);
  bool decaying = true;
  for (std::size_t i = 1; i < c.effective_a1_a2.size(); ++i)
    decaying &= c.effective_a1_a2[i].first < c.effective_a1_a2[i - 1].first &&
                c.effective_a1_a2[i].second < c.effective_a1_a2[i - 1].second;
  const bool corridor_ok = c.safe && c.iterations_used >= 2 &&
                           c.iterations_used <= it.max_iters && decaying &&
                           !oracle_collides(c.path, corridor.grid, it.d_c, it.eval_spacing);
  ok &= corridor_ok;
  detail += fmt("corridor safe=%d after %d iterations%s; ", int(c.safe), c.iterations_used,
                decaying ? " with decaying (a1, a2)" : " WITHOUT decay");

  const Scenario walled = test::walled_off_scenario();
  const auto w = iterative_rvp(walled.global_path, walled.grid, params.springs, params.obstacles,
                               params.sim, it);
  ok &= !w.safe && w.iterations_used == it.max_iters &&
        int(w.per_iteration.size()) == it.max_iters;
  detail += fmt("walled-off safe=%d after %zu runs; ", int(w.safe), w.per_iteration.size());

  const auto& b = default_batch(opt);
  int contradictions = 0, mismatched = 0;
  for (std::size_t i = 0; i < b.data.size(); ++i) {
    const auto& rec = b.report.records[i];
    if (!rec.local_path) continue;
    const bool oracle_safe = !oracle_collides(*rec.local_path, b.data[i].grid, it.d_c,
                                              it.eval_spacing);
    if (rec.planner_flag && !oracle_safe) ++contradictions;
    if (rec.success != (rec.planner_flag && oracle_safe)) ++mismatched;
  }
  ok &= contradictions == 0 && mismatched == 0;
  detail += fmt("flag contradicts the oracle on %d of %zu batch scenarios (%d success mismatches)",
                contradictions, b.data.size(), mismatched);
  return {ok, detail};
}

int run_tool(const Options& opt, const std::vector<std::string>& args) {
  if (opt.rvp_binary.empty()) {
    std::ostringstream out, err;
    return run_cli(args, out, err);
  }
  std::string cmd = "\"" + opt.rvp_binary + "\"";
  for (const auto& a : args) cmd += " \"" + a + "\"";
  cmd += " > /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome ac8_determinism(const Options& opt) {
  test::TempDir dir;
  const auto params = dir.file("params.json");
  write_file_atomic(params, save_params(ParamsFile{}));
  const auto ds = dir.file("ds");
  const int n = 50;
  if (run_tool(opt, {"generate", "--count", std::to_string(n), "--params", params, "--out-dir", ds}))
    return {false, "generate failed"};
  std::vector<std::string> reports;
  for (const char* jobs : {"1", "8", "1"}) {
    const auto rep = dir.file(std::string("report_") + jobs + "_" +
                              std::to_string(reports.size()) + ".json");
    if (run_tool(opt, {"evaluate", "--dataset", ds, "--params", params, "--report", rep, "--jobs", jobs}))
      return {false, "evaluate failed"};
    reports.push_back(read_text_file(rep));
  }
  const bool reports_equal = reports[0] == reports[1] && reports[1] == reports[2];
  int differing = 0;
  for (int i = 0; i < n; ++i) {
    const auto scen = (std::filesystem::path(ds) / fmt("scenario_%05d.json", i)).string();
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      const auto out = dir.file(fmt("plan_%d_%d.json", i, rep));
      if (run_tool(opt, {"plan", "--scenario", scen, "--params", params, "--out", out}))
        return {false, "plan failed on " + scen};
      const std::string text = read_text_file(out);
      if (rep == 0) first = text;
      else if (text != first) ++differing;
    }
  }
  return {reports_equal && differing == 0,
          fmt("%d-scenario reports %s across runs and --jobs 1/8; %d of %d plan results differ "
              "between repeated runs%s",
              n, reports_equal ? "identical" : "DIFFER", differing, n,
              opt.rvp_binary.empty() ? " (in-process)" : "")};
}

Outcome ac9_golden(const Options& opt) {
  const auto params = PlannerParams::defaults();
  const std::filesystem::path golden = RVP_GOLDEN_DIR;
  const std::vector<std::pair<std::string, Scenario>> scenes = {
      {"fig_a_no_proximity", test::golden_no_proximity()},
      {"fig_b_single_obstacle", test::golden_single_obstacle()},
      {"fig_c_two_gap", test::golden_two_gap()},
      {"fig_d_blob", test::golden_blob()}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, s] : scenes) {
    const auto r = iterative_rvp(s.global_path, s.grid, params.springs, params.obstacles,
                                 params.sim, params.iterative);
    const bool clear = r.safe && !oracle_collides(r.path, s.grid, params.iterative.d_c,
                                                  params.iterative.eval_spacing);
    const std::string svg = render_svg(s, &r.path);
    const auto file = golden / (name + ".svg");
    if (opt.update_golden) {
      std::filesystem::create_directories(golden);
      write_file_atomic(golden / (name + ".json"), save_scenario(s));
      write_file_atomic(file, svg);
    }
    bool same = false;
    if (std::filesystem::exists(file)) same = read_text_file(file) == svg;
    ok &= clear && same;
    detail += fmt("%s %s/%s; ", name.c_str(), clear ? "clear" : "COLLIDES",
                  same ? "matches" : "DIFFERS");
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

}  // namespace
}  // namespace rvp

int main(int argc, char** argv) {
  using namespace rvp;
  Options opt;
  CLI::App app{"Acceptance criteria"};
  app.add_option("--jobs", opt.jobs, "Worker threads for batch runs")->check(CLI::PositiveNumber);
  app.add_option("--count", opt.count, "Scenarios in the success-rate batch");
  app.add_option("--rvp", opt.rvp_binary, "rvp executable for the CLI criteria");
  app.add_flag("--update-golden", opt.update_golden, "Rewrite golden SVGs before comparing");
  app.add_option("--only", opt.only, "Criterion numbers to run");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome(const Options&)>>> criteria = {
      {"success rate", ac1_success_rate},  {"integrator oracle", ac2_integrator},
      {"force law", ac3_force_law},         {"equilibrium fixed point", ac4_equilibrium},
      {"anchor residual", ac5_anchor_residual}, {"energy decay", ac6_energy},
      {"iterative behavior", ac7_iterative},  {"determinism", ac8_determinism},
      {"figure regressions", ac9_golden}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = int(i) + 1;
    if (!opt.only.empty() &&
        std::find(opt.only.begin(), opt.only.end(), number) == opt.only.end())
      continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second(opt);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("AC%d %s  %s: %s [%.1f s]\n", number, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), s);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
