#include <algorithm>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "dcpack/errors.hpp"
#include "dcpack/io.hpp"

namespace dcpack {

namespace {

bool is_instance_file(const std::filesystem::path& path) {
  const auto ext = path.extension();
  return ext == ".json" || ext == ".txt";
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::string audit_bounds(double lower, double upper, double best_known) {
  std::string note;
  if (lower > best_known + kBestKnownRounding) {
    note = "L " + fmt("%.6f", lower) + " exceeds best-known " +
           fmt("%.6f", best_known);
  }
  if (upper < best_known - kBestKnownRounding) {
    if (!note.empty()) note += "; ";
    note += "U " + fmt("%.6f", upper) + " below best-known " +
            fmt("%.6f", best_known);
  }
  return note;
}

BenchReport run_bench(const std::filesystem::path& directory,
                      const DriverOptions& options,
                      const std::map<std::string, double>& best_known) {
  if (!std::filesystem::is_directory(directory)) {
    throw InputError(directory.string() + ": not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (entry.is_regular_file() && is_instance_file(entry.path())) {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) {
    throw InputError(directory.string() + ": no instance files");
  }
  std::sort(files.begin(), files.end());

  BenchReport report;
  for (const auto& path : files) {
    const InstanceFile file = read_instance(path);
    const Instance instance = file.instance();
    std::optional<double> reference = file.best_known;
    if (auto it = best_known.find(file.name); it != best_known.end()) {
      reference = it->second;
    }
    const RunResult run = dcpack::run(instance, options);

    BenchRow row;
    row.name = file.name;
    row.circles = instance.size();
    row.strip = instance.strip();
    row.strip_width = row.strip ? instance.strip_width() : 0.0;
    row.lower = run.lower;
    row.upper = run.upper;
    row.gap = run.gap;
    row.seconds = run.seconds;
    row.bounds_seconds = run.bounds_seconds;
    row.status = to_string(run.status);
    row.best_known = reference;
    if (reference) {
      std::string note = audit_bounds(run.lower, run.upper, *reference);
      // Every individual lower bound must respect the reference as well.
      const BoundReport& b = run.bounds;
      auto check = [&](const char* label, std::optional<double> v) {
        if (v && *v > *reference + kBestKnownRounding) {
          if (!note.empty()) note += "; ";
          note += std::string(label) + " " + fmt("%.6f", *v) +
                  " exceeds best-known";
        }
      };
      check("LB1", b.lb1);
      check("LB2", b.lb2);
      check("LB3", b.lb3);
      check("LB4", b.lb4);
      row.audit_ok = note.empty();
      row.audit_note = note;
    }
    report.audit_ok = report.audit_ok && row.audit_ok;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string bench_table(const BenchReport& report) {
  const bool any_strip = std::any_of(report.rows.begin(), report.rows.end(),
                                     [](const BenchRow& r) { return r.strip; });
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %4s %s%11s %11s %8s %10s %10s %11s %9s  %s\n",
                "instance", "n", any_strip ? "     width " : "", "L", "U",
                "gap(%)", "time(s)", "pre(s)", "best-known", "dU(%)",
                "status");
  out += line;
  for (const BenchRow& r : report.rows) {
    const std::string width =
        any_strip ? (r.strip ? fmt("%10.4f ", r.strip_width) : "         - ")
                  : "";
    const std::string bk = r.best_known ? fmt("%11.4f", *r.best_known)
                                        : std::string(10, ' ') + "-";
    const std::string delta =
        r.best_known ? fmt("%9.3f", 100.0 * (r.upper - *r.best_known) /
                                        *r.best_known)
                     : std::string(8, ' ') + "-";
    std::snprintf(line, sizeof line,
                  "%-12s %4zu %s%11.4f %11.4f %8.3f %10.2f %10.2f %s %s  %s%s\n",
                  r.name.c_str(), r.circles, width.c_str(), r.lower, r.upper,
                  100.0 * r.gap, r.seconds, r.bounds_seconds, bk.c_str(),
                  delta.c_str(), r.status.c_str(),
                  r.audit_ok ? "" : "  AUDIT FAILED");
    out += line;
    if (!r.audit_ok) out += "    " + r.audit_note + "\n";
  }
  out += report.audit_ok ? "audit: ok\n" : "audit: FAILED\n";
  return out;
}

std::string bench_to_json(const BenchReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const BenchRow& r : report.rows) {
    nlohmann::json row{{"instance", r.name},
                       {"circles", r.circles},
                       {"container", r.strip ? "strip" : "circle"},
                       {"lower", r.lower},
                       {"upper", r.upper},
                       {"gap", r.gap},
                       {"seconds", r.seconds},
                       {"bounds_seconds", r.bounds_seconds},
                       {"status", r.status},
                       {"audit_ok", r.audit_ok}};
    if (r.strip) row["strip_width"] = r.strip_width;
    if (r.best_known) {
      row["best_known"] = *r.best_known;
      row["upper_vs_best_known"] = (r.upper - *r.best_known) / *r.best_known;
    } else {
      row["best_known"] = nullptr;
    }
    if (!r.audit_note.empty()) row["audit_note"] = r.audit_note;
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"rows", rows}, {"audit_ok", report.audit_ok}}.dump(2) +
         "\n";
}

}  // namespace dcpack
