#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dcpack/geometry.hpp"

namespace dcpack {

// Circle container: r1 + r2 (r1 alone for one circle).
// Strip: the largest pairwise length over all circle pairs, where a pair
// (a, b) needs r_a + r_b + sqrt((r_a + r_b)^2 - (W - r_a - r_b)^2) when the
// width cannot stack them.
double lb1(const Instance& instance);

// Circle container: sqrt(sum r^2). Strip: sum(pi r^2) / W.
double lb2(const Instance& instance);

struct Lb3Options {
  double delta_r = 0.0;      // region grid cell side; 0 picks one from rmin
  double rel_tolerance = 1e-3;  // bisection stops at rel_tolerance * seed
};

// Bisection on region_feasible between max(lb1, lb2) and `upper`. Returns
// the largest size certified infeasible (or the seed if none is).
double lb3(const Instance& instance, double upper, Lb3Options options = {});

// Idle area enclosed by three mutually tangent circles.
double idle_area_triple(double r_c, double r_k, double r_l);

// Idle area of the pocket between two tangent circles that both touch the
// container of radius R from inside; 0 when they cannot (R < r_c + r_k).
// Nonincreasing in R.
double idle_area_with_container(double r_c, double r_k, double R);

struct Lb4Options {
  double kappa_lo = 0.0;  // minimum neighbour triples per circle
  std::size_t max_circles = 12;
  std::uint64_t node_limit = 2'000'000;
};

struct Lb4Result {
  bool computed = false;
  double value = 0.0;     // max(lb1, lb2, IP bound) when computed
  double idle_min = 0.0;  // optimum of the idle-area program, clamped at 0
  std::uint64_t nodes = 0;
  std::string note;
};

// Idle-area integer program over triples of circles and the container,
// container-adjacent idle areas evaluated at `upper` (the area shrinks as
// the container grows). Skipped for strips and large instances.
Lb4Result lb4(const Instance& instance, double upper, Lb4Options options = {});

// Kissing-type bound on the number of neighbour triples of a circle of
// radius r_c when the smallest circle has radius r_min.
int kappa_hi(double r_c, double r_min);

struct UpperBound {
  double value = 0.0;
  std::optional<Placement> placement;
  bool from_table = false;
};

// Greedy constructive placement plus local refinement; the placement
// verifies at tolerance 0. A tabulated value, when smaller, replaces it
// (and then no placement is returned).
UpperBound initial_upper_bound(const Instance& instance,
                               std::optional<double> best_known = std::nullopt,
                               std::uint64_t seed = 1);

// Smallest container size holding the placement's circles without moving
// them relative to each other: recentres circle packings, shifts strips.
// Returns the adjusted placement.
Placement tighten_container(const Instance& instance, Placement placement);

struct BoundOptions {
  bool use_lb3 = true;
  bool use_lb4 = true;
  Lb3Options lb3;
  Lb4Options lb4;
  std::optional<double> best_known;
  std::uint64_t seed = 1;
};

struct BoundReport {
  double lb1 = 0.0;
  double lb2 = 0.0;
  std::optional<double> lb3;
  std::optional<double> lb4;
  std::string lb4_note;
  double chosen_lb = 0.0;
  double ub = 0.0;
  bool ub_from_table = false;
  std::optional<Placement> ub_placement;
  double seconds_lb1 = 0.0;
  double seconds_lb2 = 0.0;
  double seconds_lb3 = 0.0;
  double seconds_lb4 = 0.0;
  double seconds_ub = 0.0;
};

BoundReport compute_bounds(const Instance& instance,
                           const BoundOptions& options = {});

}  // namespace dcpack
