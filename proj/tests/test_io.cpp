#include <gtest/gtest.h>

#include <fstream>
#include <regex>

#include "rvp/error.hpp"
#include "rvp/io.hpp"
#include "rvp/svg.hpp"
#include "constructed.hpp"
#include "temp_dir.hpp"

namespace rvp {
namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(ScenarioFile, RoundTripIsExact) {
  GeneratorConfig cfg;
  cfg.seed = 4;
  for (const auto& s : generate_dataset(cfg, 5)) {
    const std::string text = save_scenario(s);
    const Scenario back = load_scenario(text);
    EXPECT_EQ(back, s);
    EXPECT_EQ(save_scenario(back), text);
  }
}

TEST(ScenarioFile, TruncatedIsParseError) {
  const std::string text = save_scenario(test::golden_blob());
  EXPECT_EQ(kind_of([&] { load_scenario(text.substr(0, text.size() / 2)); }), ErrorKind::Parse);
  const std::string msg = message_of([&] { load_scenario("{\n \"a\": ", "x.json"); });
  EXPECT_NE(msg.find("x.json:"), std::string::npos);
}

TEST(ScenarioFile, OutOfBoundsCellNamesOccupied) {
  std::string text = save_scenario(test::golden_single_obstacle());
  text = std::regex_replace(text, std::regex("\"width\": 100"), "\"width\": 10");
  EXPECT_EQ(kind_of([&] { load_scenario(text); }), ErrorKind::Validation);
  EXPECT_NE(message_of([&] { load_scenario(text); }).find("occupied"), std::string::npos);
}

TEST(ScenarioFile, WrongKindOrVersionRejected) {
  std::string text = save_scenario(test::golden_no_proximity());
  EXPECT_EQ(kind_of([&] { load_result(text); }), ErrorKind::Validation);
  const std::string v2 = std::regex_replace(text, std::regex("\"format_version\": 1"),
                                            "\"format_version\": 2");
  EXPECT_EQ(kind_of([&] { load_scenario(v2); }), ErrorKind::Validation);
}

TEST(ParamsFile, DefaultsAndRoundTrip) {
  const ParamsFile d = load_params(R"({"format_version": 1, "kind": "params"})");
  const ParamsFile def;
  EXPECT_EQ(save_params(d), save_params(def));
  EXPECT_EQ(save_params(load_params(save_params(def))), save_params(def));
}

TEST(ParamsFile, PartialOverridesAndValidation) {
  const ParamsFile p = load_params(
      R"({"format_version": 1, "kind": "params", "obstacle": {"a1": 1.0}, "sim": {"dt": 0.005}})");
  EXPECT_EQ(p.planner.obstacles.a1, 1.0);
  EXPECT_EQ(p.planner.obstacles.a3, 0.5);
  EXPECT_EQ(p.planner.obstacles.r_max, 3.5);
  EXPECT_EQ(p.planner.sim.dt, 0.005);

  const auto bad_dt = [] {
    load_params(R"({"format_version": 1, "kind": "params", "sim": {"dt": -1}})");
  };
  EXPECT_EQ(kind_of(bad_dt), ErrorKind::Validation);
  EXPECT_NE(message_of(bad_dt).find("dt"), std::string::npos);

  const auto unknown = [] {
    load_params(R"({"format_version": 1, "kind": "params", "sim": {"dtt": 0.1}})");
  };
  EXPECT_NE(message_of(unknown).find("dtt"), std::string::npos);
}

TEST(ResultFile, RoundTrip) {
  ResultFile r{test::line_path({0.1, 0.2}, {3.3, 4.4}, 7), true, 2, 0.125,
               {PlanDiagnostics{501, true, 0, 0.001}, PlanDiagnostics{2000, false, 3, 0.5}}};
  const std::string text = save_result(r);
  EXPECT_EQ(load_result(text), r);
  EXPECT_NE(text.find("\"safe\": 1"), std::string::npos);
}

TEST(Files, AtomicWriteLeavesNoTemporaries) {
  test::TempDir dir;
  const auto f = dir.file("a.json");
  write_file_atomic(f, "one");
  write_file_atomic(f, "two");
  EXPECT_EQ(read_text_file(f), "two");
  std::size_t n = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) n += e.is_regular_file();
  EXPECT_EQ(n, 1u);
  EXPECT_EQ(kind_of([&] { read_text_file(dir.file("missing.json")); }), ErrorKind::Io);
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TEST(Svg, EmptyGridHasOnePolyline) {
  const Scenario s = test::make_scenario(1, OccupancyGrid(0.1, {0, 0}, 100, 100),
                                         test::line_path({1, 1}, {9, 9}));
  const std::string svg = render_svg(s);
  EXPECT_EQ(count(svg, "<polyline"), 1u);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Svg, ResultAddsDistinctPolyline) {
  const Scenario s = test::golden_single_obstacle();
  const Path local = test::line_path({1, 5}, {9, 5.5});
  const std::string svg = render_svg(s, &local);
  EXPECT_EQ(count(svg, "<polyline"), 2u);
  EXPECT_NE(svg.find("stroke=\"blue\""), std::string::npos);
  EXPECT_NE(svg.find("stroke=\"magenta\""), std::string::npos);
}

TEST(Svg, CornerCellsMapToCanvasCorners) {
  const OccupancyGrid g(0.1, {2, 3}, 50, 25,
                        std::vector<CellIndex>{{0, 0}, {24, 49}});
  const Scenario s = test::make_scenario(1, g, Path({{2.5, 3.5}, {6.5, 5.0}}));
  const std::string svg = render_svg(s);
  // 50 x 25 cells on a 600 x 300 canvas, 12 px per cell, y flipped.
  EXPECT_NE(svg.find("<rect x=\"0.000\" y=\"288.000\" width=\"12.000\" height=\"12.000\"/>"),
            std::string::npos);
  EXPECT_NE(svg.find("<rect x=\"588.000\" y=\"0.000\" width=\"12.000\" height=\"12.000\"/>"),
            std::string::npos);
}

}  // namespace
}  // namespace rvp
