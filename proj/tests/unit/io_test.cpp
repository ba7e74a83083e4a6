#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <set>
#include <regex>

#include "dcpack/errors.hpp"
#include "dcpack/io.hpp"

namespace dcpack {
namespace {

namespace fs = std::filesystem;

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

TEST(InstanceJson, ParsesCircleAndStrip) {
  const auto a = parse_instance_json(
      R"({"name": "Zimm-3", "container": "circle", "radii": [1, 2, 3], "best_known": 5})",
      "x");
  EXPECT_EQ(a.name, "Zimm-3");
  EXPECT_FALSE(is_strip(a.container));
  EXPECT_EQ(a.radii, (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(a.best_known, 5.0);

  const auto b = parse_instance_json(
      R"({"container": {"type": "strip", "width": 4}, "radii": [1, 1]})", "fallback");
  EXPECT_EQ(b.name, "fallback");
  ASSERT_TRUE(is_strip(b.container));
  EXPECT_EQ(std::get<StripContainer>(b.container).width, 4.0);
}

TEST(InstanceJson, ErrorsNameTheField) {
  EXPECT_NE(error_of([] { parse_instance_json(R"({"radii": [1, 0, 2]})", "x"); })
                .find("radii[1]"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_instance_json(R"({"radii": []})", "x"); }).find("radii"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_instance_json("{\n\"radii\": [1,\n2,,]}", "x"); })
                .find("line 3"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              parse_instance_json(R"({"container": "strip", "radii": [1]})", "x");
            }).find("container"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              parse_instance_json(
                  R"({"container": {"type": "strip", "width": 1}, "radii": [1]})", "x");
            }).size(),
            0u);
}

TEST(InstanceText, ParsesAndValidates) {
  const auto a = parse_instance_text("3\n1 2.5 3\n", "t");
  EXPECT_EQ(a.radii, (std::vector<double>{1, 2.5, 3}));
  EXPECT_NE(error_of([] { parse_instance_text("3 1 0 2", "t"); }).find("radius #2"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_instance_text("3 1 2", "t"); }).find("radius #3"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_instance_text("2 1 x", "t"); }).find("radius #2"),
            std::string::npos);
  EXPECT_FALSE(error_of([] { parse_instance_text("0", "t"); }).empty());
}

TEST(InstanceFiles, ReadByExtension) {
  const fs::path dir = fs::temp_directory_path() / "dcpack_io_test";
  fs::create_directories(dir);
  write_text(dir / "a.json", R"({"radii": [1, 2]})");
  write_text(dir / "b.txt", "2 1 2");
  EXPECT_EQ(read_instance(dir / "a.json").name, "a");
  EXPECT_EQ(read_instance(dir / "b.txt").radii, (std::vector<double>{1, 2}));
  EXPECT_THROW(read_instance(dir / "missing.json"), InputError);
  const auto round = parse_instance_json(instance_to_json(read_instance(dir / "a.json")), "z");
  EXPECT_EQ(round.name, "a");
  fs::remove_all(dir);
}

ResultFile sample_result(bool with_placement) {
  InstanceFile file{"tri", CircleContainer{}, {1.0, 1.0, 1.0}, std::nullopt};
  RunResult run;
  run.lower = 2.1;
  run.upper = 2.2;
  run.gap = 0.1 / 2.2;
  run.status = RunStatus::kTimeLimit;
  if (with_placement) {
    const double s = 2.2 - 1.0;
    run.incumbent = Placement{{{0.0, s}, {s * 0.866, -s * 0.5}, {-s * 0.866, -s * 0.5}}, 2.2};
  }
  IterationRecord rec;
  rec.trial = 1;
  rec.R = 2.15;
  rec.model = "relaxed";
  rec.outcome = "unknown-time";
  run.log.push_back(rec);
  return make_result(file, run, 0.01);
}

TEST(ResultJson, RoundTrip) {
  const ResultFile a = sample_result(true);
  const std::string text = result_to_json(a);
  EXPECT_NE(text.find("\"format_version\": 1"), std::string::npos);
  EXPECT_NE(text.find("\"tool_version\""), std::string::npos);
  const ResultFile b = parse_result_json(text);
  EXPECT_EQ(b.instance_name, "tri");
  EXPECT_EQ(b.lower, a.lower);
  EXPECT_EQ(b.upper, a.upper);
  EXPECT_EQ(b.status, "TimeLimit");
  ASSERT_TRUE(b.placement);
  EXPECT_EQ(b.placement->centers, a.placement->centers);
  ASSERT_EQ(b.log.size(), 1u);
  EXPECT_EQ(b.log[0].outcome, "unknown-time");
  EXPECT_EQ(result_to_json(b), text);
}

TEST(Render, CircleCountsAndDeterminism) {
  const std::string svg = render_svg(sample_result(true));
  EXPECT_EQ(count(svg, "<circle"), 4);
  EXPECT_EQ(svg, render_svg(sample_result(true)));
  std::regex fill("fill=\"(hsl[^\"]+)\"");
  std::set<std::string> fills;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), fill);
       it != std::sregex_iterator(); ++it) {
    fills.insert((*it)[1]);
  }
  EXPECT_EQ(fills.size(), 3u);

  EXPECT_EQ(count(render_svg(sample_result(false)), "<circle"), 1);

  ResultFile strip = sample_result(true);
  strip.container = StripContainer{3.0};
  const std::string s = render_svg(strip);
  EXPECT_EQ(count(s, "<rect"), 1);
  EXPECT_EQ(count(s, "<circle"), 3);
}

TEST(BestKnown, ParsesTable) {
  const auto table = parse_best_known("# comment\nZimm-5 9.001\n\n  Eq-7 3 # hex\n");
  EXPECT_EQ(table.size(), 2u);
  EXPECT_EQ(table.at("Zimm-5"), 9.001);
  EXPECT_EQ(table.at("Eq-7"), 3.0);
  EXPECT_THROW(parse_best_known("Zimm-5\n"), InputError);
}

TEST(Audit, BracketsWithRoundingSlack) {
  EXPECT_TRUE(audit_bounds(9.0, 9.05, 9.001).empty());
  EXPECT_TRUE(audit_bounds(9.0, 9.0008, 9.001).empty());
  EXPECT_FALSE(audit_bounds(9.01, 9.05, 9.001).empty());
  EXPECT_FALSE(audit_bounds(8.0, 8.99, 9.001).empty());
}

TEST(Bench, RunsADirectory) {
  const fs::path dir = fs::temp_directory_path() / "dcpack_bench_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  EXPECT_THROW(run_bench(dir, {}), InputError);
  write_text(dir / "Zimm-5.json", R"({"name": "Zimm-5", "radii": [1,2,3,4,5], "best_known": 9.001})");
  write_text(dir / "Zimm-6.json", R"({"name": "Zimm-6", "radii": [1,2,3,4,5,6]})");
  write_text(dir / "Strip-2.json",
             R"({"name": "Strip-2", "container": {"type": "strip", "width": 2}, "radii": [1,1]})");
  DriverOptions o;
  o.time_limit = 60.0;
  const auto report = run_bench(dir, o, {{"Zimm-6", 11.057}});
  ASSERT_EQ(report.rows.size(), 3u);
  EXPECT_TRUE(report.audit_ok);
  EXPECT_EQ(report.rows[0].name, "Strip-2");
  EXPECT_TRUE(report.rows[0].strip);
  EXPECT_EQ(report.rows[2].best_known, 11.057);
  const std::string table = bench_table(report);
  EXPECT_NE(table.find("width"), std::string::npos);
  EXPECT_NE(table.find("audit: ok"), std::string::npos);
  EXPECT_NE(bench_to_json(report).find("\"strip_width\""), std::string::npos);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace dcpack
