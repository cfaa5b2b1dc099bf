#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rvp/geometry.hpp"
#include "rvp/grid.hpp"
#include "rvp/rng.hpp"

namespace rvp {

enum class ObjectKind { Circle, Rectangle, Blob };
enum class PathKind { Straight, Arc, SCurve };

std::string to_string(ObjectKind kind);
std::string to_string(PathKind kind);

struct GeneratorConfig {
  int grid_width = 100;
  int grid_height = 100;
  double resolution = 0.1;
  int object_count_min = 5;
  int object_count_max = 20;
  std::vector<ObjectKind> object_kinds = {ObjectKind::Circle, ObjectKind::Rectangle,
                                          ObjectKind::Blob};
  double object_size_min = 0.2;  // characteristic diameter, m
  double object_size_max = 1.5;
  std::array<double, 3> path_kind_weights = {0.3, 0.4, 0.3};  // straight, arc, s_curve
  int path_point_count = 50;
  double clearance_from_endpoints = 0.5;
  double min_endpoint_separation = 5.0;
  std::uint64_t seed = 1;

  /// Throws Error(Validation) naming the offending field.
  void validate() const;
  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

struct Scenario {
  std::uint64_t seed = 0;  // seed the scenario was generated from
  OccupancyGrid grid;
  Path global_path;
  GeneratorConfig metadata;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

OccupancyGrid generate_environment(const GeneratorConfig& config, Rng& rng);

/// Throws Error(Generation) when 1000 attempts find no valid endpoints and geometry.
Path generate_global_path(const GeneratorConfig& config, const OccupancyGrid& grid, Rng& rng);

/// Environment and path from one seed.
Scenario generate_from_seed(const GeneratorConfig& config, std::uint64_t seed);

/// Scenario `index` of the dataset for `config.seed`; retries on generation
/// errors with the next derived seed.
Scenario generate_scenario(const GeneratorConfig& config, std::uint64_t index);

std::vector<Scenario> generate_dataset(const GeneratorConfig& config, std::size_t count);

}  // namespace rvp
