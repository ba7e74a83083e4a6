#include "dcpack/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "dcpack/errors.hpp"
#include "dcpack/grid.hpp"
#include "dcpack/reduction.hpp"

namespace dcpack {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

bool converged(double lower, double upper, double epsilon) {
  return upper - lower <= epsilon * upper;
}

}  // namespace

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kEpsOptimal:
      return "EpsOptimal";
    case RunStatus::kTimeLimit:
      return "TimeLimit";
    case RunStatus::kRefinementCap:
      return "RefinementCap";
  }
  return "?";
}

int bisection_budget(double epsilon, double upper0, double lower0) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  const double width = upper0 - lower0;
  const double scale = epsilon * std::max(lower0, 1e-12 * upper0);
  if (!(width > 0.0) || !(scale > 0.0)) return 1;
  const double steps = std::ceil(std::log2(width / scale) - 1e-12);
  return static_cast<int>(std::max(0.0, steps)) + 1;
}

double default_delta0(double min_radius, double upper0, double lower0) {
  const double cap = 0.5 * min_radius / std::numbers::sqrt2;
  double delta = cap;
  if (upper0 > lower0) delta = std::min(delta, (upper0 - lower0) / 8.0);
  return delta;
}

RunResult run(const Instance& instance, const DriverOptions& options) {
  if (!(options.epsilon > 0.0) || !(options.epsilon < 1.0)) {
    throw ConfigError("epsilon must lie in (0, 1)");
  }
  const auto start = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (options.time_limit > 0.0) {
    deadline = start + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(options.time_limit));
  }

  RunResult result;
  result.bounds = compute_bounds(instance, options.bounds);
  result.bounds_seconds = elapsed(start);

  SolverState state;
  state.lower = result.bounds.chosen_lb;
  state.upper = result.bounds.ub;
  state.incumbent = result.bounds.ub_placement;
  result.initial_lower = state.lower;
  result.initial_upper = state.upper;

  auto finish = [&](RunStatus status) {
    result.status = status;
    result.lower = state.lower;
    result.upper = state.upper;
    result.gap = state.upper > 0.0 ? (state.upper - state.lower) / state.upper
                                   : 0.0;
    result.incumbent = state.incumbent;
    result.log = std::move(state.log);
    result.seconds = elapsed(start);
    return result;
  };

  if (converged(state.lower, state.upper, options.epsilon)) {
    return finish(RunStatus::kEpsOptimal);
  }

  const double r_min = instance.min_radius();
  const double diag_cap = r_min / std::numbers::sqrt2 * (1.0 - 1e-9);
  double delta_target = options.delta0 > 0.0
                            ? options.delta0
                            : default_delta0(r_min, state.upper, state.lower);
  delta_target = std::min(delta_target, diag_cap);

  auto time_up = [&] { return deadline && Clock::now() >= *deadline; };
  auto model_limits = [&] {
    SolveLimits limits;
    limits.node_limit = options.node_limit;
    limits.threads = options.threads;
    std::optional<Clock::time_point> until = deadline;
    if (options.model_time_limit > 0.0) {
      const auto local =
          Clock::now() + std::chrono::duration_cast<Clock::duration>(
                             std::chrono::duration<double>(
                                 options.model_time_limit));
      until = until ? std::min(*until, local) : local;
    }
    limits.deadline = until;
    return limits;
  };

  state.R = 0.5 * (state.upper + state.lower);
  bool new_trial = true;
  while (true) {
    if (converged(state.lower, state.upper, options.epsilon)) {
      return finish(RunStatus::kEpsOptimal);
    }
    if (time_up()) return finish(RunStatus::kTimeLimit);
    if (new_trial) {
      ++result.trials;
      state.refinement_count = 0;
      new_trial = false;
    }
    const double R = state.R;
    const Grid grid = build_grid(instance.container(), R, delta_target, r_min);
    state.delta = grid.delta;

    auto log = [&](const char* model, const std::string& outcome,
                   Clock::time_point since, std::uint64_t nodes) {
      IterationRecord rec;
      rec.trial = result.trials;
      rec.R = R;
      rec.delta = grid.delta;
      rec.theta = grid.theta;
      rec.model = model;
      rec.outcome = outcome;
      rec.lower = state.lower;
      rec.upper = state.upper;
      rec.seconds = elapsed(since);
      rec.nodes = nodes;
      state.log.push_back(rec);
      if (options.on_event) options.on_event(rec);
    };

    auto next_trial = [&] {
      state.R = 0.5 * (state.upper + state.lower);
      new_trial = true;
    };

    std::optional<RegionMap> regions;
    if (options.use_reduction) {
      const auto t0 = Clock::now();
      const Grid rgrid = region_grid(instance.container(), R, grid.delta);
      RegionMap initial = initial_regions(instance, rgrid, true);
      regions = initial.any_empty()
                    ? std::nullopt
                    : propagate(std::move(initial), instance.radii());
      if (!regions) {
        state.lower = R;
        log("reduction", "empty", t0, 0);
        next_trial();
        continue;
      }
      log("reduction", "nonempty", t0, 0);
    }

    const RegionMap* reduced = regions ? &*regions : nullptr;
    {
      const auto t0 = Clock::now();
      const FeasibilityProblem problem =
          build_problem(instance, grid, ModelMode::kRestricted, reduced);
      const SolveResult solved = solve(problem, model_limits(), options.prune);
      bool accepted = false;
      if (const auto* sol = std::get_if<Feasible>(&solved.outcome)) {
        Placement placement = to_placement(problem, *sol);
        if (verify_placement(instance, placement, 0.0).feasible) {
          state.upper = R;
          state.incumbent = std::move(placement);
          accepted = true;
        }
      }
      log("restricted", outcome_name(solved.outcome), t0, solved.stats.nodes);
      if (accepted) {
        next_trial();
        continue;
      }
    }
    if (time_up()) return finish(RunStatus::kTimeLimit);
    {
      const auto t0 = Clock::now();
      const FeasibilityProblem problem =
          build_problem(instance, grid, ModelMode::kRelaxed, reduced);
      const SolveResult solved = solve(problem, model_limits(), options.prune);
      if (solved.infeasible()) state.lower = R;
      log("relaxed", outcome_name(solved.outcome), t0, solved.stats.nodes);
      if (solved.infeasible()) {
        next_trial();
        continue;
      }
    }

    // Both models inconclusive: refine, or perturb R upward.
    const double halved = delta_target / 2.0;
    const bool can_refine =
        state.refinement_count < options.max_refinements &&
        std::ceil(R / halved) <= options.max_theta;
    if (can_refine) {
      delta_target = halved;
      ++state.refinement_count;
      continue;
    }
    const double perturbed = R + 0.25 * (state.upper - R);
    if (!(perturbed > R) || state.upper - perturbed <= 1e-12 * state.upper) {
      return finish(RunStatus::kRefinementCap);
    }
    ++result.perturbations;
    state.R = perturbed;
    new_trial = true;
  }
}

}  // namespace dcpack
