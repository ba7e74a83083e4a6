#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcpack/bounds.hpp"
#include "dcpack/driver.hpp"
#include "dcpack/geometry.hpp"

namespace dcpack {

inline constexpr int kResultFormatVersion = 1;
const char* tool_version();

struct InstanceFile {
  std::string name;
  ContainerKind container;
  std::vector<double> radii;  // as given (the Instance sorts them)
  std::optional<double> best_known;

  Instance instance() const { return Instance(radii, container); }
};

// JSON:
//   {"name": "Zimm-5", "container": "circle", "radii": [1, 2, 3, 4, 5],
//    "best_known": 9.001}
//   container may also be {"type": "strip", "width": 10}.
// Text: whitespace-separated "n r_1 ... r_n" (circle container).
// Files ending in .json are read as JSON, anything else as text. Errors are
// InputError naming the offending field or entry.
InstanceFile parse_instance_json(const std::string& text,
                                 const std::string& fallback_name);
InstanceFile parse_instance_text(const std::string& text,
                                 const std::string& name);
InstanceFile read_instance(const std::filesystem::path& path);
std::string instance_to_json(const InstanceFile& file);

struct ResultFile {
  std::string instance_name;
  ContainerKind container;
  std::vector<double> radii;  // sorted, matching placement order
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;
  double epsilon = 0.0;
  std::string status;
  std::optional<Placement> placement;
  std::vector<IterationRecord> log;
  double seconds = 0.0;
  double bounds_seconds = 0.0;
  std::string version;
};

ResultFile make_result(const InstanceFile& instance, const RunResult& run,
                       double epsilon);
std::string result_to_json(const ResultFile& result);
ResultFile parse_result_json(const std::string& text);
ResultFile read_result(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

std::string bounds_to_json(const BoundReport& report);

// "name value" per line, '#' comments.
std::map<std::string, double> parse_best_known(const std::string& text);
std::map<std::string, double> read_best_known(const std::filesystem::path& path);

// Deterministic SVG of a result: container outline plus one filled circle
// per placed item, y axis pointing up.
std::string render_svg(const ResultFile& result);

struct BenchRow {
  std::string name;
  std::size_t circles = 0;
  bool strip = false;
  double strip_width = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;
  double seconds = 0.0;
  double bounds_seconds = 0.0;
  std::string status;
  std::optional<double> best_known;
  bool audit_ok = true;
  std::string audit_note;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  bool audit_ok = true;
};

// Absolute slack allowed when auditing against best-known values that are
// published rounded to three decimals.
inline constexpr double kBestKnownRounding = 5e-4;

// Certified bounds must bracket the best-known value (within the rounding
// slack). Returns an empty string when they do.
std::string audit_bounds(double lower, double upper, double best_known);

// Runs every instance file of `directory` (sorted by file name). Throws
// InputError when the directory holds no instances.
BenchReport run_bench(const std::filesystem::path& directory,
                      const DriverOptions& options,
                      const std::map<std::string, double>& best_known = {});
std::string bench_table(const BenchReport& report);
std::string bench_to_json(const BenchReport& report);

}  // namespace dcpack
