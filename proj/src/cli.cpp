#include "rvp/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "rvp/error.hpp"
#include "rvp/harness.hpp"
#include "rvp/io.hpp"
#include "rvp/iterative.hpp"
#include "rvp/svg.hpp"

namespace rvp {

namespace fs = std::filesystem;

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NumericFailure:
    case ErrorKind::Generation:
      return kExitPlannerFailure;
    default:
      return kExitValidation;
  }
}

std::string snapshot_name(const fs::path& svg, int iteration, int step) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "_iter%d_step%05d.svg", iteration, step);
  fs::path out = svg;
  out.replace_filename(svg.stem().string() + buf);
  return out.string();
}

struct PlanArgs {
  std::string scenario, params, out, svg;
  std::optional<std::uint64_t> seed;
  int snapshot_every = 0;
};

int cmd_plan(const PlanArgs& a, std::ostream& out) {
  const Scenario scenario = read_scenario_file(a.scenario);
  ParamsFile params = read_params_file(a.params);
  if (a.seed) params.planner.sim.rng_seed = *a.seed;
  PlannerParams& p = params.planner;
  p.sim.rng_seed = scenario_sim_seed(p.sim.rng_seed, scenario);

  StepObserver observer;
  int iteration = 0;
  int last_step = 0;
  if (a.snapshot_every > 0 && !a.svg.empty()) {
    observer = [&](const SimState& s, const ChainModel&) {
      if (s.step <= last_step || iteration == 0) ++iteration;
      last_step = s.step;
      if (s.step % a.snapshot_every != 0) return;
      std::vector<Point2> pts;
      for (const auto& q : s.positions) {
        if (pts.empty() || !(pts.back() == q)) pts.push_back(q);
      }
      if (pts.size() < 2) return;
      const Path chain(std::move(pts));
      write_file_atomic(snapshot_name(a.svg, iteration, s.step), render_svg(scenario, &chain));
    };
  }

  const IterativeResult res = iterative_rvp(scenario.global_path, scenario.grid, p.springs,
                                            p.obstacles, p.sim, p.iterative, observer);
  ResultFile result{res.path, res.safe, res.iterations_used,
                    path_deviation(res.path, scenario.global_path), res.per_iteration};
  write_file_atomic(a.out, save_result(result));
  if (!a.svg.empty()) write_file_atomic(a.svg, render_svg(scenario, &result.local_path));
  out << "safe=" << (res.safe ? 1 : 0) << " iterations=" << res.iterations_used
      << " deviation=" << result.path_deviation << "\n";
  return kExitOk;
}

int cmd_generate(std::size_t count, const std::string& params_path, const std::string& dir,
                 std::ostream& out) {
  const ParamsFile params = read_params_file(params_path);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create " + dir);
  for (std::size_t i = 0; i < count; ++i) {
    const Scenario s = generate_scenario(params.generator, i);
    char name[48];
    std::snprintf(name, sizeof name, "scenario_%05zu.json", i);
    write_file_atomic(fs::path(dir) / name, save_scenario(s));
  }
  out << "wrote " << count << " scenarios to " << dir << "\n";
  return kExitOk;
}

int cmd_evaluate(const std::string& dataset_dir, const std::string& params_path,
                 const std::string& report_path, int jobs, bool timing, std::ostream& out) {
  const ParamsFile params = read_params_file(params_path);
  if (!fs::is_directory(dataset_dir)) fail(ErrorKind::Io, dataset_dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dataset_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) fail(ErrorKind::Validation, "dataset: no .json scenarios in " + dataset_dir);
  std::vector<Scenario> dataset;
  dataset.reserve(files.size());
  for (const auto& f : files) dataset.push_back(read_scenario_file(f));

  const EvalReport report = run_batch(dataset, params.planner, jobs);
  write_file_atomic(report_path, save_report(report, params.planner, timing));
  char line[160];
  std::snprintf(line, sizeof line,
                "success_rate=%.4f (%zu/%zu)  reference=%.1f%%  wall=%.1fs\n",
                report.success_rate, report.successes, report.total,
                100.0 * kReferenceSuccessRate, report.total_wall_time);
  out << line;
  return kExitOk;
}

int cmd_render(const std::string& scenario_path, const std::string& result_path,
               const std::string& out_path) {
  const Scenario scenario = read_scenario_file(scenario_path);
  std::optional<ResultFile> result;
  if (!result_path.empty()) result = read_result_file(result_path);
  write_file_atomic(out_path, render_svg(scenario, result ? &result->local_path : nullptr));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Viscoelastic-string local path planner"};
  app.name("rvp");
  app.require_subcommand(1);

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Reshape one scenario's global path");
  plan_cmd->add_option("--scenario", plan.scenario, "Scenario file")->required();
  plan_cmd->add_option("--params", plan.params, "Params file")->required();
  plan_cmd->add_option("--out", plan.out, "Result file")->required();
  plan_cmd->add_option("--svg", plan.svg, "Also render the result");
  plan_cmd->add_option("--seed", plan.seed, "Override sim.rng_seed");
  plan_cmd->add_option("--snapshot-every", plan.snapshot_every,
                       "With --svg, render the chain every N integration steps")
      ->check(CLI::NonNegativeNumber);

  std::size_t count = 0;
  std::string gen_params, out_dir;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a random scenario dataset");
  gen_cmd->add_option("--count", count, "Number of scenarios")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--params", gen_params, "Params file (generator section)")->required();
  gen_cmd->add_option("--out-dir", out_dir, "Output directory")->required();

  std::string dataset, eval_params, report;
  int jobs = 1;
  bool timing = false;
  auto* eval_cmd = app.add_subcommand("evaluate", "Run the planner over a dataset");
  eval_cmd->add_option("--dataset", dataset, "Directory of scenario files")->required();
  eval_cmd->add_option("--params", eval_params, "Params file")->required();
  eval_cmd->add_option("--report", report, "Report file")->required();
  eval_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  eval_cmd->add_flag("--timing", timing, "Include wall-clock statistics in the report");

  std::string render_scenario, render_result, render_out;
  auto* render_cmd = app.add_subcommand("render", "Render a scenario (and result) to SVG");
  render_cmd->add_option("--scenario", render_scenario, "Scenario file")->required();
  render_cmd->add_option("--result", render_result, "Result file");
  render_cmd->add_option("--out", render_out, "SVG file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*plan_cmd) return cmd_plan(plan, out);
    if (*gen_cmd) return cmd_generate(count, gen_params, out_dir, out);
    if (*eval_cmd) return cmd_evaluate(dataset, eval_params, report, jobs, timing, out);
    if (*render_cmd) return cmd_render(render_scenario, render_result, render_out);
  } catch (const Error& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace rvp
