#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dcpack/bounds.hpp"
#include "dcpack/feasibility.hpp"
#include "dcpack/geometry.hpp"

namespace dcpack {

enum class RunStatus { kEpsOptimal, kTimeLimit, kRefinementCap };

const char* to_string(RunStatus status);

// One model solve (or reduction test) of the bisection loop.
struct IterationRecord {
  int trial = 0;  // index of the distinct R value
  double R = 0.0;
  double delta = 0.0;
  int theta = 0;
  std::string model;    // "reduction", "restricted", "relaxed"
  std::string outcome;  // "empty", "feasible", "infeasible", "unknown-..."
  double lower = 0.0;   // bracket after the step
  double upper = 0.0;
  double seconds = 0.0;
  std::uint64_t nodes = 0;
};

struct DriverOptions {
  double epsilon = 0.01;
  double delta0 = 0.0;  // 0 selects the default initial cell size
  double time_limit = 0.0;        // seconds for the whole run, 0 = none
  double model_time_limit = 0.0;  // seconds per model solve, 0 = none
  int threads = 1;
  bool use_reduction = true;
  PruneOptions prune;
  BoundOptions bounds;
  int max_refinements = 6;  // K: refinements at one R before perturbing
  int max_theta = 2048;
  std::uint64_t node_limit = 100'000'000;
  std::function<void(const IterationRecord&)> on_event;
};

// Evolving state of the bisection.
struct SolverState {
  double lower = 0.0;
  double upper = 0.0;
  double R = 0.0;
  double delta = 0.0;
  std::optional<Placement> incumbent;
  std::vector<IterationRecord> log;
  int refinement_count = 0;
};

struct RunResult {
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;  // (U - L) / U
  std::optional<Placement> incumbent;
  RunStatus status = RunStatus::kEpsOptimal;
  std::vector<IterationRecord> log;
  BoundReport bounds;
  double initial_lower = 0.0;  // bracket handed to the bisection loop
  double initial_upper = 0.0;
  int trials = 0;
  int perturbations = 0;
  double seconds = 0.0;
  double bounds_seconds = 0.0;
};

// Algorithm 1: bisection on the container size with restricted-model upper
// certificates, relaxed-model / reduction lower certificates and grid
// refinement when both models are inconclusive.
RunResult run(const Instance& instance, const DriverOptions& options = {});

// Upper bound on the distinct R trials of a run without perturbations:
// ceil(log2((U0 - L0) / (eps * max(L0, 1e-12 U0)))) + 1, at least 1.
int bisection_budget(double epsilon, double upper0, double lower0);

// Default initial cell size: min(0.5 rmin / sqrt2, (U0 - L0) / 8), kept
// strictly inside the grid precondition.
double default_delta0(double min_radius, double upper0, double lower0);

}  // namespace dcpack
