#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dcpack/bounds.hpp"
#include "dcpack/driver.hpp"
#include "dcpack/errors.hpp"
#include "dcpack/grid.hpp"
#include "dcpack/io.hpp"
#include "dcpack/milp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitTimeLimit = 2;
constexpr int kExitRefinementCap = 3;

struct SolveFlags {
  double epsilon = 0.01;
  double delta0 = 0.0;
  double time_limit = 0.0;
  double model_time_limit = 0.0;
  int threads = 1;
  bool no_lb3 = false;
  bool no_lb4 = false;
  bool no_reduction = false;
  bool no_prune_area = false;
  bool no_prune_farthest = false;
  bool no_prune_conditional = false;
  std::string best_known;
  unsigned seed = 1;
  bool quiet = false;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--epsilon", f.epsilon, "relative optimality gap")
      ->check(CLI::Range(1e-9, 0.999));
  cmd->add_option("--delta0", f.delta0, "initial cell size (0 = automatic)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--time-limit", f.time_limit, "seconds, 0 = none")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--model-time-limit", f.model_time_limit,
                  "seconds per model solve, 0 = none")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--threads", f.threads, "solver threads")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--no-lb3", f.no_lb3, "skip the LB3 bound");
  cmd->add_flag("--no-lb4", f.no_lb4, "skip the LB4 bound");
  cmd->add_flag("--no-reduction", f.no_reduction, "skip region reduction");
  cmd->add_flag("--no-prune-area", f.no_prune_area, "disable area pruning");
  cmd->add_flag("--no-prune-farthest", f.no_prune_farthest,
                "disable farthest-point pruning");
  cmd->add_flag("--no-prune-conditional", f.no_prune_conditional,
                "disable forward checking");
  cmd->add_option("--best-known", f.best_known, "best-known table file");
  cmd->add_option("--seed", f.seed, "seed for the randomized heuristic");
  cmd->add_flag("-q,--quiet", f.quiet, "no progress lines on stderr");
}

std::map<std::string, double> load_table(const SolveFlags& f) {
  if (f.best_known.empty()) return {};
  return dcpack::read_best_known(f.best_known);
}

dcpack::DriverOptions driver_options(const SolveFlags& f) {
  dcpack::DriverOptions o;
  o.epsilon = f.epsilon;
  o.delta0 = f.delta0;
  o.time_limit = f.time_limit;
  o.model_time_limit = f.model_time_limit;
  o.threads = f.threads;
  o.use_reduction = !f.no_reduction;
  o.prune.area = !f.no_prune_area;
  o.prune.farthest = !f.no_prune_farthest;
  o.prune.conditional = !f.no_prune_conditional;
  o.bounds.use_lb3 = !f.no_lb3;
  o.bounds.use_lb4 = !f.no_lb4;
  o.bounds.seed = f.seed;
  if (!f.quiet) {
    o.on_event = [](const dcpack::IterationRecord& r) {
      std::fprintf(stderr,
                   "trial %3d  R %.6f  delta %.5f  %-10s %-22s  [%.6f, %.6f]  "
                   "%.2fs\n",
                   r.trial, r.R, r.delta, r.model.c_str(), r.outcome.c_str(),
                   r.lower, r.upper, r.seconds);
    };
  }
  return o;
}

std::optional<double> lookup(const std::map<std::string, double>& table,
                             const dcpack::InstanceFile& file) {
  // Only an explicit table seeds U; best_known inside the instance file is
  // kept for auditing.
  if (auto it = table.find(file.name); it != table.end()) return it->second;
  return std::nullopt;
}

int exit_for(dcpack::RunStatus status) {
  switch (status) {
    case dcpack::RunStatus::kEpsOptimal:
      return kExitOk;
    case dcpack::RunStatus::kTimeLimit:
      return kExitTimeLimit;
    case dcpack::RunStatus::kRefinementCap:
      return kExitRefinementCap;
  }
  return kExitError;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    dcpack::write_text(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-based certified circle packing"};
  app.set_version_flag("--version", dcpack::tool_version());
  app.require_subcommand(1);

  SolveFlags solve_flags;
  std::string instance_path;
  std::string output_path;
  auto* solve = app.add_subcommand("solve", "solve an instance to eps-optimality");
  solve->add_option("instance", instance_path, "instance file")->required();
  solve->add_option("-o,--output", output_path, "result JSON (default stdout)");
  add_solve_flags(solve, solve_flags);

  SolveFlags bounds_flags;
  auto* bounds = app.add_subcommand("bounds", "report the initial bounds");
  bounds->add_option("instance", instance_path, "instance file")->required();
  bounds->add_option("-o,--output", output_path, "bounds JSON (default stdout)");
  add_solve_flags(bounds, bounds_flags);

  std::string result_path;
  double tolerance = dcpack::kDefaultVerifyTolerance;
  auto* verify = app.add_subcommand("verify", "check a result against its instance");
  verify->add_option("instance", instance_path, "instance file")->required();
  verify->add_option("result", result_path, "result JSON")->required();
  verify->add_option("--tolerance", tolerance, "verification tolerance")
      ->check(CLI::NonNegativeNumber);

  std::string svg_path;
  auto* render = app.add_subcommand("render", "draw a result as SVG");
  render->add_option("result", result_path, "result JSON")->required();
  render->add_option("svg", svg_path, "output SVG")->required();

  double size = 0.0;
  double delta = 0.0;
  std::string mode_name = "restricted";
  auto* lp = app.add_subcommand("export-milp", "write the grid model as an LP file");
  lp->add_option("instance", instance_path, "instance file")->required();
  lp->add_option("--size,-R", size, "container size R (or strip length)")
      ->required()
      ->check(CLI::PositiveNumber);
  lp->add_option("--delta", delta, "cell size")->required()->check(
      CLI::PositiveNumber);
  lp->add_option("--mode", mode_name, "restricted or relaxed")
      ->check(CLI::IsMember({"restricted", "relaxed"}));
  lp->add_option("-o,--output", output_path, "LP file")->required();

  SolveFlags bench_flags;
  std::string suite;
  std::string json_path;
  auto* bench = app.add_subcommand("bench", "run a directory of instances");
  bench->add_option("suite", suite, "directory of instance files")->required();
  bench->add_option("--json", json_path, "also write the table as JSON");
  add_solve_flags(bench, bench_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) {
      const auto file = dcpack::read_instance(instance_path);
      auto options = driver_options(solve_flags);
      options.bounds.best_known = lookup(load_table(solve_flags), file);
      const auto run = dcpack::run(file.instance(), options);
      emit(output_path, dcpack::result_to_json(
                            dcpack::make_result(file, run, options.epsilon)));
      std::fprintf(stderr, "%s: %s  L %.6f  U %.6f  gap %.3f%%  %.2fs\n",
                   file.name.c_str(), dcpack::to_string(run.status), run.lower,
                   run.upper, 100.0 * run.gap, run.seconds);
      return exit_for(run.status);
    }
    if (*bounds) {
      const auto file = dcpack::read_instance(instance_path);
      auto options = driver_options(bounds_flags).bounds;
      options.best_known = lookup(load_table(bounds_flags), file);
      const auto report = dcpack::compute_bounds(file.instance(), options);
      emit(output_path, dcpack::bounds_to_json(report));
      return kExitOk;
    }
    if (*verify) {
      const auto file = dcpack::read_instance(instance_path);
      const auto result = dcpack::read_result(result_path);
      const auto instance = file.instance();
      if (!result.placement) {
        std::cerr << "result has no placement\n";
        return kExitError;
      }
      bool ok = true;
      if (result.radii != instance.radii()) {
        std::cerr << "result radii do not match the instance\n";
        ok = false;
      }
      const double R = result.placement->container_size;
      if (R < result.lower) {
        std::cerr << "container size " << R << " is below the certified lower bound "
                  << result.lower << "\n";
        ok = false;
      }
      if (ok) {
        const auto report =
            dcpack::verify_placement(instance, *result.placement, tolerance);
        for (const auto& [a, b] : report.violating_pairs) {
          std::cerr << "overlap: circles " << a << " and " << b << "\n";
        }
        for (int id : report.uncontained) {
          std::cerr << "outside container: circle " << id << "\n";
        }
        ok = report.feasible;
      }
      std::cout << (ok ? "valid" : "invalid") << "\n";
      return ok ? kExitOk : kExitError;
    }
    if (*render) {
      dcpack::write_text(svg_path,
                         dcpack::render_svg(dcpack::read_result(result_path)));
      return kExitOk;
    }
    if (*lp) {
      const auto file = dcpack::read_instance(instance_path);
      const auto instance = file.instance();
      const auto mode = mode_name == "relaxed" ? dcpack::ModelMode::kRelaxed
                                               : dcpack::ModelMode::kRestricted;
      const auto grid = dcpack::build_grid(instance.container(), size, delta,
                                           instance.min_radius());
      const auto problem = dcpack::build_problem(instance, grid, mode);
      dcpack::export_milp(problem, std::filesystem::path(output_path));
      return kExitOk;
    }
    if (*bench) {
      const auto report = dcpack::run_bench(suite, driver_options(bench_flags),
                                            load_table(bench_flags));
      std::cout << dcpack::bench_table(report);
      if (!json_path.empty()) {
        dcpack::write_text(json_path, dcpack::bench_to_json(report));
      }
      return report.audit_ok ? kExitOk : kExitError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
