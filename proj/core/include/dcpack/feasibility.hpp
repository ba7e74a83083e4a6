#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dcpack/bitmap.hpp"
#include "dcpack/geometry.hpp"
#include "dcpack/grid.hpp"
#include "dcpack/reduction.hpp"

namespace dcpack {

// Restricted or relaxed grid model in semantic form: one domain bitmap per
// circle (points for restricted, cells for relaxed) and the pairwise
// separation predicate of the mode.
struct FeasibilityProblem {
  Grid grid;
  ModelMode mode = ModelMode::kRestricted;
  std::vector<double> radii;  // non-increasing
  std::vector<Bitmap2D> domains;
  bool trivially_infeasible = false;

  std::size_t size() const { return radii.size(); }

  // Frontier of the pair (c, k), 0-based. Built on demand: at fine grids the
  // full set of frontiers is large and the solver does not need it.
  SeparationFrontier frontier(std::size_t c, std::size_t k) const;

  // Squared separation threshold in index units, (r_c + r_k)^2 / delta^2.
  double separation_sq(std::size_t c, std::size_t k) const;

  // Exact pair predicate for two domain values. Restricted mode compares grid
  // coordinates exactly as verify_placement does at tolerance 0.
  bool compatible(std::size_t c, int ic, int jc, std::size_t k, int ik,
                  int jk) const;
};

struct BuildOptions {
  bool symmetry = true;
};

// Domains = mode candidates, intersected with the projected reduced regions
// when given, and with the symmetry restriction on circles 1 and 2.
FeasibilityProblem build_problem(const Instance& instance, const Grid& grid,
                                 ModelMode mode,
                                 const RegionMap* reduced = nullptr,
                                 BuildOptions options = {});

struct PruneOptions {
  bool area = true;         // P1
  bool farthest = true;     // P2
  bool conditional = true;  // P3, forward checking
  bool equal_radius_order = true;
};

using SolveClock = std::chrono::steady_clock;

struct SolveLimits {
  std::optional<SolveClock::time_point> deadline;
  std::uint64_t node_limit = 100'000'000;
  int threads = 1;
  // Optional external stop request (checked with the time limit).
  const std::atomic<bool>* cancel = nullptr;
};

struct Feasible {
  std::vector<std::pair<int, int>> assignment;  // index per circle
};
struct Infeasible {};
enum class UnknownReason { kTimeLimit, kNodeLimit };
struct Unknown {
  UnknownReason reason = UnknownReason::kTimeLimit;
};
using SolveOutcome = std::variant<Feasible, Infeasible, Unknown>;

const char* outcome_name(const SolveOutcome& outcome);

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t area_prunes = 0;
  std::uint64_t farthest_prunes = 0;
  std::uint64_t wipeouts = 0;  // forward checking emptied a domain
  double seconds = 0.0;
};

struct SolveResult {
  SolveOutcome outcome;
  SolveStats stats;

  bool feasible() const { return std::holds_alternative<Feasible>(outcome); }
  bool infeasible() const {
    return std::holds_alternative<Infeasible>(outcome);
  }
};

// Depth-first branch-and-prune over the domains in decreasing-radius order.
// Infeasible is only reported after the tree is exhausted.
SolveResult solve(const FeasibilityProblem& problem,
                  const SolveLimits& limits = {},
                  const PruneOptions& prune = {});

// Grid coordinates of a restricted assignment.
Placement to_placement(const FeasibilityProblem& problem,
                       const Feasible& solution);

// True iff the assignment lies in the domains and satisfies every pair
// predicate (the oracle view of a Feasible outcome).
bool check_assignment(const FeasibilityProblem& problem,
                      const std::vector<std::pair<int, int>>& assignment);

}  // namespace dcpack
