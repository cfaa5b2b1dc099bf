#include "rvp/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "rvp/error.hpp"

#if defined(__unix__) || defined(__APPLE__)
#include <unistd.h>
#endif

namespace rvp {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  fail(ErrorKind::Validation, field + ": " + why);
}

json parse_document(std::string_view text, std::string_view source, std::string_view kind) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // count lines up to the failing byte for a readable location
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < pos; ++i) {
      if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
    }
    fail(ErrorKind::Parse, std::string(source) + ":" + std::to_string(line) + ":" +
                               std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::Parse, std::string(source) + ": expected a JSON object");
  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer() ||
      doc["format_version"].get<int>() != kFormatVersion) {
    invalid("format_version", "expected " + std::to_string(kFormatVersion));
  }
  if (!doc.contains("kind") || doc["kind"] != kind) invalid("kind", "expected \"" + std::string(kind) + "\"");
  return doc;
}

const json& field(const json& obj, const std::string& name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name)) invalid(where + name, "missing");
  return obj.at(name);
}

double as_double(const json& v, const std::string& name) {
  if (!v.is_number()) invalid(name, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& name) {
  if (!v.is_number_integer()) invalid(name, "expected an integer");
  const auto x = v.get<long long>();
  if (x < INT32_MIN || x > INT32_MAX) invalid(name, "out of range");
  return int(x);
}

std::uint64_t as_u64(const json& v, const std::string& name) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return std::uint64_t(v.get<long long>());
  invalid(name, "expected an unsigned integer");
}

bool as_bool(const json& v, const std::string& name) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1)) return v.get<int>() == 1;
  invalid(name, "expected a boolean or 0/1");
}

json points_to_json(const std::vector<Point2>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(json::array({p.x, p.y}));
  return arr;
}

std::vector<Point2> points_from_json(const json& v, const std::string& name) {
  if (!v.is_array()) invalid(name, "expected an array of [x, y] pairs");
  std::vector<Point2> pts;
  pts.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const std::string at = name + "[" + std::to_string(i) + "]";
    if (!p.is_array() || p.size() != 2) invalid(at, "expected [x, y]");
    pts.push_back({as_double(p[0], at), as_double(p[1], at)});
  }
  return pts;
}

Path path_from_json(const json& v, const std::string& name) {
  try {
    return Path(points_from_json(v, name));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Validation) throw;
    invalid(name, e.what());
  }
}

// Reads optional members of `obj` into typed slots; rejects unknown keys.
class Reader {
 public:
  Reader(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) invalid(prefix_.empty() ? "document" : prefix_, "expected an object");
  }

  template <typename T, typename Conv>
  void opt(const char* key, T& slot, Conv conv) {
    seen_.insert(key);
    if (obj_.contains(key)) slot = conv(obj_.at(key), prefix_ + key);
  }
  void num(const char* key, double& slot) { opt(key, slot, as_double); }
  void integer(const char* key, int& slot) { opt(key, slot, as_int); }
  void u64(const char* key, std::uint64_t& slot) { opt(key, slot, as_u64); }
  bool has(const char* key) const { return obj_.contains(key); }
  void allow(const char* key) { seen_.insert(key); }

  void finish() const {
    for (const auto& [k, v] : obj_.items()) {
      if (!seen_.count(k)) invalid(prefix_ + k, "unknown field");
    }
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::set<std::string> seen_;
};

json generator_to_json(const GeneratorConfig& g) {
  json kinds = json::array();
  for (auto k : g.object_kinds) kinds.push_back(to_string(k));
  return json{{"grid_width", g.grid_width},
              {"grid_height", g.grid_height},
              {"resolution", g.resolution},
              {"object_count_range", json::array({g.object_count_min, g.object_count_max})},
              {"object_kinds", kinds},
              {"object_size_range", json::array({g.object_size_min, g.object_size_max})},
              {"path_kind_weights",
               json{{"straight", g.path_kind_weights[0]},
                    {"arc", g.path_kind_weights[1]},
                    {"s_curve", g.path_kind_weights[2]}}},
              {"path_point_count", g.path_point_count},
              {"clearance_from_endpoints", g.clearance_from_endpoints},
              {"min_endpoint_separation", g.min_endpoint_separation},
              {"seed", g.seed}};
}

GeneratorConfig generator_from_json(const json& v, const std::string& prefix) {
  GeneratorConfig g;
  Reader r(v, prefix);
  r.integer("grid_width", g.grid_width);
  r.integer("grid_height", g.grid_height);
  r.num("resolution", g.resolution);
  r.opt("object_count_range", g.object_count_min, [&](const json& a, const std::string& name) {
    if (!a.is_array() || a.size() != 2) invalid(name, "expected [min, max]");
    g.object_count_max = as_int(a[1], name);
    return as_int(a[0], name);
  });
  r.opt("object_kinds", g.object_kinds, [](const json& a, const std::string& name) {
    if (!a.is_array()) invalid(name, "expected an array of kinds");
    std::vector<ObjectKind> kinds;
    for (const auto& k : a) {
      if (k == "circle") kinds.push_back(ObjectKind::Circle);
      else if (k == "rectangle") kinds.push_back(ObjectKind::Rectangle);
      else if (k == "blob") kinds.push_back(ObjectKind::Blob);
      else invalid(name, "unknown object kind " + k.dump());
    }
    return kinds;
  });
  r.opt("object_size_range", g.object_size_min, [&](const json& a, const std::string& name) {
    if (!a.is_array() || a.size() != 2) invalid(name, "expected [min, max]");
    g.object_size_max = as_double(a[1], name);
    return as_double(a[0], name);
  });
  r.opt("path_kind_weights", g.path_kind_weights, [](const json& w, const std::string& name) {
    Reader wr(w, name + ".");
    std::array<double, 3> out{0.0, 0.0, 0.0};
    wr.num("straight", out[0]);
    wr.num("arc", out[1]);
    wr.num("s_curve", out[2]);
    wr.finish();
    return out;
  });
  r.integer("path_point_count", g.path_point_count);
  r.num("clearance_from_endpoints", g.clearance_from_endpoints);
  r.num("min_endpoint_separation", g.min_endpoint_separation);
  r.u64("seed", g.seed);
  r.finish();
  g.validate();
  return g;
}

json planner_to_json(const PlannerParams& p) {
  return json{
      {"spring",
       {{"mass", p.springs.mass},
        {"omega", p.springs.omega},
        {"zeta", p.springs.zeta},
        {"c_scale", p.springs.c_scale},
        {"rest_lengths", p.springs.rest_mode == RestLengthMode::Initial ? "initial" : "zero"}}},
      {"obstacle",
       {{"a1", p.obstacles.a1},
        {"a2", p.obstacles.a2},
        {"a3", p.obstacles.a3},
        {"n_exp", p.obstacles.n_exp},
        {"r_max", p.obstacles.r_max},
        {"r_floor", p.obstacles.r_floor}}},
      {"sim",
       {{"dt", p.sim.dt},
        {"max_steps", p.sim.max_steps},
        {"p_min", p.sim.p_min},
        {"a_t", p.sim.a_t},
        {"v_stag", p.sim.v_stag},
        {"stag_window", p.sim.stag_window},
        {"perturb_mag", p.sim.perturb_mag},
        {"rng_seed", p.sim.rng_seed}}},
      {"iterative",
       {{"lambda_decay", p.iterative.lambda_decay},
        {"d_c", p.iterative.d_c},
        {"max_iters", p.iterative.max_iters},
        {"eval_spacing", p.iterative.eval_spacing}}}};
}

PlannerParams planner_from_json(const json& doc) {
  PlannerParams p = PlannerParams::defaults();
  if (doc.contains("spring")) {
    Reader r(doc["spring"], "spring.");
    double mass = p.springs.mass, omega = p.springs.omega, zeta = p.springs.zeta,
           c = p.springs.c_scale;
    RestLengthMode mode = p.springs.rest_mode;
    r.num("mass", mass);
    r.num("omega", omega);
    r.num("zeta", zeta);
    r.num("c_scale", c);
    r.opt("rest_lengths", mode, [](const json& v, const std::string& name) {
      if (v == "initial") return RestLengthMode::Initial;
      if (v == "zero") return RestLengthMode::Zero;
      invalid(name, "expected \"initial\" or \"zero\"");
    });
    r.finish();
    try {
      p.springs = derive_constants(mass, omega, zeta, c, mode);
    } catch (const Error& e) {
      invalid("spring", e.what());
    }
  }
  if (doc.contains("obstacle")) {
    Reader r(doc["obstacle"], "obstacle.");
    ObstacleForceParams& o = p.obstacles;
    r.num("a1", o.a1);
    r.num("a2", o.a2);
    // a3 and r_max follow a1 unless given explicitly
    o.a3 = o.a1 / 2.0;
    r.num("a3", o.a3);
    o.r_max = o.a1 + 5.0 * o.a3;
    r.num("r_max", o.r_max);
    r.num("n_exp", o.n_exp);
    r.num("r_floor", o.r_floor);
    r.finish();
  }
  if (doc.contains("sim")) {
    Reader r(doc["sim"], "sim.");
    r.num("dt", p.sim.dt);
    r.integer("max_steps", p.sim.max_steps);
    r.num("p_min", p.sim.p_min);
    r.num("a_t", p.sim.a_t);
    r.num("v_stag", p.sim.v_stag);
    r.integer("stag_window", p.sim.stag_window);
    r.num("perturb_mag", p.sim.perturb_mag);
    r.u64("rng_seed", p.sim.rng_seed);
    r.finish();
  }
  if (doc.contains("iterative")) {
    Reader r(doc["iterative"], "iterative.");
    r.num("lambda_decay", p.iterative.lambda_decay);
    r.num("d_c", p.iterative.d_c);
    r.integer("max_iters", p.iterative.max_iters);
    r.num("eval_spacing", p.iterative.eval_spacing);
    r.finish();
  }
  p.validate();
  return p;
}

json diagnostics_to_json(const PlanDiagnostics& d) {
  return json{{"steps_taken", d.steps_taken},
              {"steady_exit", d.steady_exit},
              {"perturbations", d.perturbations},
              {"final_max_accel", d.final_max_accel}};
}

json stats_to_json(const SummaryStats& s) {
  return json{{"mean", s.mean}, {"median", s.median}, {"p95", s.p95}};
}

}  // namespace

std::string save_scenario(const Scenario& s) {
  json occupied = json::array();
  for (const auto& c : s.grid.occupied_cells()) occupied.push_back(json::array({c.row, c.col}));
  json doc{{"format_version", kFormatVersion},
           {"kind", "scenario"},
           {"seed", s.seed},
           {"grid",
            {{"resolution", s.grid.resolution()},
             {"origin", json::array({s.grid.origin().x, s.grid.origin().y})},
             {"width", s.grid.width()},
             {"height", s.grid.height()},
             {"occupied", occupied}}},
           {"global_path", points_to_json(s.global_path.points())},
           {"metadata", generator_to_json(s.metadata)}};
  return doc.dump(1) + "\n";
}

Scenario load_scenario(std::string_view text, std::string_view source) {
  const json doc = parse_document(text, source, "scenario");
  Reader top(doc, "");
  top.allow("format_version");
  top.allow("kind");
  top.allow("grid");
  top.allow("global_path");
  top.allow("metadata");
  std::uint64_t seed = 0;
  top.u64("seed", seed);
  top.finish();

  const json& g = field(doc, "grid", "");
  Reader gr(g, "grid.");
  double resolution = 0.0;
  int width = 0, height = 0;
  Point2 origin;
  gr.num("resolution", resolution);
  gr.integer("width", width);
  gr.integer("height", height);
  gr.opt("origin", origin, [](const json& v, const std::string& name) {
    if (!v.is_array() || v.size() != 2) invalid(name, "expected [x, y]");
    return Point2{as_double(v[0], name), as_double(v[1], name)};
  });
  gr.allow("occupied");
  gr.finish();
  if (!(resolution > 0.0)) invalid("grid.resolution", "must be positive");
  if (width < 1) invalid("grid.width", "must be at least 1");
  if (height < 1) invalid("grid.height", "must be at least 1");

  const json& occ = field(g, "occupied", "grid.");
  if (!occ.is_array()) invalid("grid.occupied", "expected an array of [row, col]");
  std::vector<CellIndex> cells;
  cells.reserve(occ.size());
  for (std::size_t i = 0; i < occ.size(); ++i) {
    const std::string at = "grid.occupied[" + std::to_string(i) + "]";
    if (!occ[i].is_array() || occ[i].size() != 2) invalid(at, "expected [row, col]");
    const CellIndex c{as_int(occ[i][0], at), as_int(occ[i][1], at)};
    if (c.row < 0 || c.col < 0 || c.row >= height || c.col >= width) {
      invalid(at, "cell out of grid bounds");
    }
    cells.push_back(c);
  }
  OccupancyGrid grid(resolution, origin, width, height, cells);
  Path path = path_from_json(field(doc, "global_path", ""), "global_path");
  GeneratorConfig meta;
  if (doc.contains("metadata")) meta = generator_from_json(doc["metadata"], "metadata.");
  return Scenario{seed, std::move(grid), std::move(path), meta};
}

std::string save_params(const ParamsFile& params) {
  json doc = planner_to_json(params.planner);
  doc["format_version"] = kFormatVersion;
  doc["kind"] = "params";
  doc["generator"] = generator_to_json(params.generator);
  return doc.dump(2) + "\n";
}

ParamsFile load_params(std::string_view text, std::string_view source) {
  const json doc = parse_document(text, source, "params");
  Reader top(doc, "");
  for (const char* k : {"format_version", "kind", "spring", "obstacle", "sim", "iterative",
                        "generator"}) {
    top.allow(k);
  }
  top.finish();
  ParamsFile out;
  out.planner = planner_from_json(doc);
  if (doc.contains("generator")) out.generator = generator_from_json(doc["generator"], "generator.");
  return out;
}

std::string save_result(const ResultFile& r) {
  json diags = json::array();
  for (const auto& d : r.diagnostics) diags.push_back(diagnostics_to_json(d));
  json doc{{"format_version", kFormatVersion},
           {"kind", "result"},
           {"local_path", points_to_json(r.local_path.points())},
           {"safe", r.safe ? 1 : 0},
           {"iterations_used", r.iterations_used},
           {"path_deviation", r.path_deviation},
           {"diagnostics", diags}};
  return doc.dump(1) + "\n";
}

ResultFile load_result(std::string_view text, std::string_view source) {
  const json doc = parse_document(text, source, "result");
  Reader top(doc, "");
  top.allow("format_version");
  top.allow("kind");
  top.allow("local_path");
  top.allow("diagnostics");
  bool safe = false;
  int iterations = 0;
  double deviation = 0.0;
  top.opt("safe", safe, as_bool);
  top.integer("iterations_used", iterations);
  top.num("path_deviation", deviation);
  top.finish();
  ResultFile r{path_from_json(field(doc, "local_path", ""), "local_path"), safe, iterations,
               deviation, {}};
  if (doc.contains("diagnostics")) {
    const json& arr = doc["diagnostics"];
    if (!arr.is_array()) invalid("diagnostics", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Reader dr(arr[i], "diagnostics[" + std::to_string(i) + "].");
      PlanDiagnostics d;
      dr.integer("steps_taken", d.steps_taken);
      dr.opt("steady_exit", d.steady_exit, as_bool);
      dr.integer("perturbations", d.perturbations);
      dr.num("final_max_accel", d.final_max_accel);
      dr.finish();
      r.diagnostics.push_back(d);
    }
  }
  return r;
}

std::string save_report(const EvalReport& report, const PlannerParams& params,
                        bool include_timing) {
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back(json{{"index", r.index},
                           {"scenario_seed", r.scenario_seed},
                           {"success", r.success},
                           {"planner_flag", r.planner_flag},
                           {"iterations_used", r.iterations_used},
                           {"path_deviation", r.path_deviation},
                           {"failure_reason", r.failure_reason}});
  }
  json doc{{"format_version", kFormatVersion},
           {"kind", "report"},
           {"total", report.total},
           {"successes", report.successes},
           {"success_rate", report.success_rate},
           {"reference_success_rate", kReferenceSuccessRate},
           {"deviation_stats", stats_to_json(report.deviation)},
           {"params", planner_to_json(params)},
           {"records", records}};
  if (include_timing) {
    doc["timing_stats"] = stats_to_json(report.timing);
    doc["total_wall_time"] = report.total_wall_time;
  }
  return doc.dump(1) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
#if defined(__unix__) || defined(__APPLE__)
  tmp += ".tmp." + std::to_string(::getpid());
#else
  tmp += ".tmp";
#endif
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write " + tmp.string());
    out.write(contents.data(), std::streamsize(contents.size()));
    out.flush();
    if (!out) fail(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorKind::Io, "cannot move " + tmp.string() + " into place");
  }
}

Scenario read_scenario_file(const std::filesystem::path& path) {
  return load_scenario(read_text_file(path), path.string());
}

ParamsFile read_params_file(const std::filesystem::path& path) {
  return load_params(read_text_file(path), path.string());
}

ResultFile read_result_file(const std::filesystem::path& path) {
  return load_result(read_text_file(path), path.string());
}

}  // namespace rvp
