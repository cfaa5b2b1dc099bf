#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rvp/harness.hpp"
#include "rvp/scenarios.hpp"

namespace rvp {

inline constexpr int kFormatVersion = 1;

/// Everything a params document can set. Missing fields take defaults.
struct ParamsFile {
  PlannerParams planner = PlannerParams::defaults();
  GeneratorConfig generator;
};

/// Serialized planner output.
struct ResultFile {
  Path local_path;
  bool safe = false;
  int iterations_used = 0;
  double path_deviation = 0.0;
  std::vector<PlanDiagnostics> diagnostics;

  friend bool operator==(const ResultFile&, const ResultFile&) = default;
};

// All loaders throw Error(Parse) for malformed text (with line/column) and
// Error(Validation) naming the offending field.

std::string save_scenario(const Scenario& scenario);
Scenario load_scenario(std::string_view text, std::string_view source = "<memory>");

std::string save_params(const ParamsFile& params);
ParamsFile load_params(std::string_view text, std::string_view source = "<memory>");

std::string save_result(const ResultFile& result);
ResultFile load_result(std::string_view text, std::string_view source = "<memory>");

/// Report document. Wall-clock timing is omitted unless requested so that
/// reports are reproducible byte for byte.
std::string save_report(const EvalReport& report, const PlannerParams& params,
                        bool include_timing = false);

std::string read_text_file(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

Scenario read_scenario_file(const std::filesystem::path& path);
ParamsFile read_params_file(const std::filesystem::path& path);
ResultFile read_result_file(const std::filesystem::path& path);

}  // namespace rvp
