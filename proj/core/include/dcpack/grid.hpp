#pragma once

#include <utility>
#include <vector>

#include "dcpack/bitmap.hpp"
#include "dcpack/geometry.hpp"

namespace dcpack {

enum class ModelMode { kRestricted, kRelaxed };

const char* to_string(ModelMode mode);

// Relative slack applied to the one-sided (relaxed) geometric tests so that
// rounding can only keep a cell, never drop one that touches the feasible
// set.
inline constexpr double kRelaxSlack = 1e-9;

// Uniform square discretization of the container.
//
// Circle container of radius R: theta * delta = R, indices 0..2*theta on both
// axes, index (i, j) maps to ((i - theta) * delta, (j - theta) * delta).
// Strip of length L and width W: theta * delta = L, theta_y = ceil(W / delta),
// index (i, j) maps to (i * delta, j * delta).
//
// The same index also names the cell whose lower-left corner is that point.
struct Grid {
  ContainerKind container;
  double size = 0.0;  // R or L
  double width = 0.0;  // strip width W (circle: 2R)
  double delta = 0.0;
  int theta = 0;
  int theta_y = 0;
  int nx = 0;
  int ny = 0;
  int bit_width = 0;  // ceil(log2(largest index)), at least 1

  bool strip() const { return is_strip(container); }
  double x(int i) const {
    return strip() ? i * delta : (i - theta) * delta;
  }
  double y(int j) const {
    return strip() ? j * delta : (j - theta) * delta;
  }
  Point point(int i, int j) const { return {x(i), y(j)}; }
  int index_count() const { return nx; }
  Bitmap2D make_bitmap() const { return Bitmap2D(nx, ny); }
};

// Circle container. theta = ceil(R / delta_target), delta = R / theta.
// Throws ConfigError unless R > 0, delta_target > 0 and
// delta_target * sqrt(2) < min_radius.
Grid build_grid(double R, double delta_target, double min_radius);

// Either container kind; `size` is R or the strip length.
Grid build_grid(const ContainerKind& container, double size,
                double delta_target, double min_radius);

// Grid with an explicit cell side and theta (no precondition checks); used
// for cell maps whose extent theta * delta may exceed `size`.
Grid make_grid(const ContainerKind& container, double size, double delta,
               int theta);

// Same cell geometry (container kind, delta, index ranges).
bool same_geometry(const Grid& a, const Grid& b);

struct CandidateSet {
  int circle_id = 0;
  ModelMode mode = ModelMode::kRestricted;
  Bitmap2D cells;
};

// Grid points at which a circle of the given radius is fully contained.
CandidateSet restricted_candidates(const Grid& grid, const Circle& circle);

// Cells (by lower-left index) having at least one point at which the circle
// is fully contained: clamp-the-centre distance test against the disk of
// radius R - r, or overlap with the inset rectangle for strips.
CandidateSet relaxed_candidates(const Grid& grid, const Circle& circle);

CandidateSet candidates(const Grid& grid, const Circle& circle, ModelMode mode);

// Dominance-minimal offset pairs (u1, u2) >= 0 meeting the separation
// inequality of the mode, in units of delta:
//   restricted: u1^2 + u2^2 >= (r_sum / delta)^2
//   relaxed:    (u1 + 1)^2 + (u2 + 1)^2 >= (r_sum / delta)^2
struct SeparationFrontier {
  std::vector<std::pair<int, int>> pairs;
  ModelMode mode = ModelMode::kRestricted;
  double r_sum_over_delta = 0.0;
};

// Direct form of the inequality above for an index offset.
bool direct_separation(int di, int dj, double r_sum_over_delta, ModelMode mode);

// Requires bound >= ceil(r_sum / delta) + 1 (ConfigError otherwise).
SeparationFrontier separation_frontier(double r_sum, double delta,
                                       ModelMode mode, int bound);

// True iff some frontier pair is dominated by (|di|, |dj|).
bool sep_holds(int di, int dj, const SeparationFrontier& frontier);

}  // namespace dcpack
