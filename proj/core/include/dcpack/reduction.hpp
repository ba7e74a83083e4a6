#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "dcpack/bitmap.hpp"
#include "dcpack/geometry.hpp"
#include "dcpack/grid.hpp"

namespace dcpack {

inline constexpr int kMaxPropagationSweeps = 50;

// Per-circle cells (by lower-left index of `grid`) that may still host the
// circle's centre in some feasible placement at container size `grid.size`.
struct RegionMap {
  Grid grid;
  std::vector<Bitmap2D> cells;

  bool any_empty() const;
};

// Cell grid of side exactly delta_r anchored at the container origin. Unlike
// build_grid, theta * delta may exceed the container size, so maps at a fixed
// delta_r nest as the size shrinks.
Grid region_grid(const ContainerKind& container, double size, double delta_r);

// Cells meeting the annulus max(0, 2 r_ref + r - R) <= |p| <= R - r (circle
// container). For strips the ring becomes "inside the rectangle inset by r,
// and some point of the rectangle inset by r_ref lies at least r + r_ref
// away". Empty when the continuous annulus is empty.
Bitmap2D annulus_region(const Grid& grid, double radius, double r_ref);

// Annuli plus the symmetry restriction (first circle in the first quadrant,
// second circle in y >= x; strips: first circle in the upper-right quarter).
// Reference radius: r_2 for the largest circle, r_1 for every other.
RegionMap initial_regions(const Instance& instance, const Grid& grid,
                          bool symmetry = true);

struct PropagationStats {
  int sweeps = 0;
  bool converged = false;
};

// Pairwise arc consistency: a cell of circle k survives iff every other
// circle c keeps a cell whose farthest point lies at least r_c + r_k away.
// Jacobi sweeps until nothing changes or the sweep cap is hit. Returns
// nullopt (EMPTY) when a circle loses every cell.
std::optional<RegionMap> propagate(RegionMap map,
                                   const std::vector<double>& radii,
                                   int max_sweeps = kMaxPropagationSweeps,
                                   PropagationStats* stats = nullptr);

// Annuli + symmetry + propagation on the delta_r cell grid. False certifies
// that no feasible placement exists at size R.
bool region_feasible(const Instance& instance, double R, double delta_r);

// Same as region_feasible but returns the reduced map (nullopt when EMPTY).
std::optional<RegionMap> reduced_regions(const Instance& instance, double R,
                                         double delta_r);

// Projects surviving region cells onto the points / cells of a model grid.
// A point survives if a surviving cell contains it; a cell survives if it
// touches a surviving cell (identical grids map one-to-one).
Bitmap2D project_points(const RegionMap& map, std::size_t circle,
                        const Grid& model);
Bitmap2D project_cells(const RegionMap& map, std::size_t circle,
                       const Grid& model);

// Debug dump: one binary PGM per circle (white = surviving cell), row 0 at
// the top of the image. Returns the written paths.
std::vector<std::filesystem::path> write_region_pgm(
    const RegionMap& map, const std::filesystem::path& directory,
    const std::string& stem = "region");

}  // namespace dcpack
