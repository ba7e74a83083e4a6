#include "dcpack/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "dcpack/errors.hpp"
#include "dcpack/hull.hpp"

namespace dcpack {

namespace {

struct Box {
  double x0, x1, y0, y1;
};

Box cell_box(const Grid& grid, int i, int j) {
  return {grid.x(i), grid.x(i + 1), grid.y(j), grid.y(j + 1)};
}

double clamp_dist_sq(const Box& b) {
  const double cx = std::clamp(0.0, b.x0, b.x1);
  const double cy = std::clamp(0.0, b.y0, b.y1);
  return cx * cx + cy * cy;
}

double corner_dist_sq(const Box& b) {
  const double fx = std::max(std::abs(b.x0), std::abs(b.x1));
  const double fy = std::max(std::abs(b.y0), std::abs(b.y1));
  return fx * fx + fy * fy;
}

Bitmap2D circle_annulus(const Grid& grid, double radius, double r_ref) {
  Bitmap2D out = grid.make_bitmap();
  const double R = grid.size;
  const double outer = R - radius;
  const double inner = std::max(0.0, 2.0 * r_ref + radius - R);
  const double slack = kRelaxSlack * R;
  if (outer < -slack || inner > outer + slack) return out;
  const double outer_sq = std::max(0.0, outer) * std::max(0.0, outer) + slack * R;
  const double inner_sq = inner * inner - slack * R;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Box b = cell_box(grid, i, j);
      if (clamp_dist_sq(b) <= outer_sq && corner_dist_sq(b) >= inner_sq) {
        out.set(i, j);
      }
    }
  }
  return out;
}

Bitmap2D strip_annulus(const Grid& grid, double radius, double r_ref) {
  Bitmap2D out = grid.make_bitmap();
  const double L = grid.size;
  const double W = grid.width;
  const double slack = kRelaxSlack * std::max(L, W);
  if (L - radius < radius - slack) return out;
  const bool has_ref = r_ref > 0.0;
  if (has_ref && L - r_ref < r_ref - slack) return out;
  const Box inset{radius, L - radius, radius, W - radius};
  const Box ref{r_ref, L - r_ref, r_ref, W - r_ref};
  const double need = radius + r_ref;
  const double need_sq = need * need * (1.0 - kRelaxSlack);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Box c = cell_box(grid, i, j);
      const Box b{std::max(c.x0, inset.x0 - slack),
                  std::min(c.x1, inset.x1 + slack),
                  std::max(c.y0, inset.y0 - slack),
                  std::min(c.y1, inset.y1 + slack)};
      if (b.x0 > b.x1 || b.y0 > b.y1) continue;
      if (has_ref) {
        const double fx = std::max(b.x1 - ref.x0, ref.x1 - b.x0);
        const double fy = std::max(b.y1 - ref.y0, ref.y1 - b.y0);
        if (fx * fx + fy * fy < need_sq) continue;
      }
      out.set(i, j);
    }
  }
  return out;
}

int ceil_cells(double value) {
  return std::max(
      1, static_cast<int>(std::ceil(value - 1e-9 * std::max(1.0, value))));
}

// Farthest corner-to-hull test for one cell, remembering the last witness
// vertex since neighbouring cells usually share it.
bool has_far_support(int i, int j, const std::vector<IPoint>& hull,
                     double threshold, std::size_t& witness) {
  const IPoint corners[4] = {{i, j}, {i + 1, j}, {i, j + 1}, {i + 1, j + 1}};
  const std::size_t n = hull.size();
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t h = (witness + step) % n;
    for (const IPoint& p : corners) {
      if (static_cast<double>(dist_sq(p, hull[h])) >= threshold) {
        witness = h;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

bool RegionMap::any_empty() const {
  return std::any_of(cells.begin(), cells.end(),
                     [](const Bitmap2D& b) { return b.none(); });
}

Grid region_grid(const ContainerKind& container, double size, double delta_r) {
  if (!(size > 0.0) || !(delta_r > 0.0)) {
    throw ConfigError("region grid needs positive size and cell side");
  }
  return make_grid(container, size, delta_r, ceil_cells(size / delta_r));
}

Bitmap2D annulus_region(const Grid& grid, double radius, double r_ref) {
  return grid.strip() ? strip_annulus(grid, radius, r_ref)
                      : circle_annulus(grid, radius, r_ref);
}

RegionMap initial_regions(const Instance& instance, const Grid& grid,
                          bool symmetry) {
  RegionMap map{grid, {}};
  const std::size_t n = instance.size();
  map.cells.reserve(n);
  for (std::size_t c = 0; c < n; ++c) {
    const double r_ref =
        n == 1 ? 0.0 : (c == 0 ? instance.radius(1) : instance.radius(0));
    map.cells.push_back(annulus_region(grid, instance.radius(c), r_ref));
  }
  if (!symmetry) return map;

  auto restrict_cells = [&](Bitmap2D& bits, auto&& keep) {
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        if (bits.test(i, j) && !keep(cell_box(grid, i, j))) bits.reset(i, j);
      }
    }
  };
  if (grid.strip()) {
    const double hx = grid.size / 2.0;
    const double hy = grid.width / 2.0;
    restrict_cells(map.cells[0],
                   [&](const Box& b) { return b.x1 >= hx && b.y1 >= hy; });
  } else {
    restrict_cells(map.cells[0],
                   [](const Box& b) { return b.x1 >= 0.0 && b.y1 >= 0.0; });
    if (n >= 2) {
      restrict_cells(map.cells[1],
                     [](const Box& b) { return b.y1 >= b.x0; });
    }
  }
  return map;
}

std::optional<RegionMap> propagate(RegionMap map,
                                   const std::vector<double>& radii,
                                   int max_sweeps, PropagationStats* stats) {
  const std::size_t n = map.cells.size();
  if (radii.size() != n) throw InputError("radius count does not match map");
  PropagationStats local;
  if (map.any_empty()) {
    if (stats != nullptr) *stats = local;
    return std::nullopt;
  }
  const double delta = map.grid.delta;
  std::vector<std::vector<IPoint>> hulls(n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (std::size_t c = 0; c < n; ++c) {
      hulls[c] = bitmap_hull(map.cells[c], /*cell_corners=*/true);
    }
    std::vector<Bitmap2D> next = map.cells;
    bool changed = false;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t c = 0; c < n; ++c) {
        if (c == k) continue;
        const double ratio = (radii[c] + radii[k]) / delta;
        const double threshold = ratio * ratio * (1.0 - kRelaxSlack);
        std::size_t witness = 0;
        Bitmap2D& target = next[k];
        map.cells[k].for_each([&](int i, int j) {
          if (!target.test(i, j)) return;
          if (!has_far_support(i, j, hulls[c], threshold, witness)) {
            target.reset(i, j);
            changed = true;
          }
        });
      }
    }
    map.cells = std::move(next);
    local.sweeps = sweep + 1;
    if (map.any_empty()) {
      if (stats != nullptr) *stats = local;
      return std::nullopt;
    }
    if (!changed) {
      local.converged = true;
      break;
    }
  }
  if (stats != nullptr) *stats = local;
  return map;
}

std::optional<RegionMap> reduced_regions(const Instance& instance, double R,
                                         double delta_r) {
  const Grid grid = region_grid(instance.container(), R, delta_r);
  RegionMap map = initial_regions(instance, grid, /*symmetry=*/true);
  if (map.any_empty()) return std::nullopt;
  return propagate(std::move(map), instance.radii());
}

bool region_feasible(const Instance& instance, double R, double delta_r) {
  return reduced_regions(instance, R, delta_r).has_value();
}

Bitmap2D project_points(const RegionMap& map, std::size_t circle,
                        const Grid& model) {
  const Bitmap2D& cells = map.cells.at(circle);
  Bitmap2D out = model.make_bitmap();
  if (same_geometry(map.grid, model)) {
    for (int j = 0; j < model.ny; ++j) {
      for (int i = 0; i < model.nx; ++i) {
        bool hit = false;
        for (int b = j - 1; b <= j && !hit; ++b) {
          for (int a = i - 1; a <= i && !hit; ++a) {
            hit = cells.in_range(a, b) && cells.test(a, b);
          }
        }
        if (hit) out.set(i, j);
      }
    }
    return out;
  }
  const Grid& rg = map.grid;
  const double eps = 1e-9 * std::max(rg.size, rg.width);
  auto range = [&](double v, double origin) {
    const int lo = static_cast<int>(std::floor((v - eps - origin) / rg.delta));
    const int hi = static_cast<int>(std::floor((v + eps - origin) / rg.delta));
    return std::pair{lo, hi};
  };
  for (int j = 0; j < model.ny; ++j) {
    const auto [b0, b1] = range(model.y(j), rg.y(0));
    for (int i = 0; i < model.nx; ++i) {
      const auto [a0, a1] = range(model.x(i), rg.x(0));
      bool hit = false;
      for (int b = b0; b <= b1 && !hit; ++b) {
        for (int a = a0; a <= a1 && !hit; ++a) {
          hit = cells.in_range(a, b) && cells.test(a, b);
        }
      }
      if (hit) out.set(i, j);
    }
  }
  return out;
}

Bitmap2D project_cells(const RegionMap& map, std::size_t circle,
                       const Grid& model) {
  const Bitmap2D& cells = map.cells.at(circle);
  if (same_geometry(map.grid, model)) return cells;
  Bitmap2D out = model.make_bitmap();
  const Grid& rg = map.grid;
  const double eps = 1e-9 * std::max(rg.size, rg.width);
  auto range = [&](double lo_v, double hi_v, double origin) {
    const int lo =
        static_cast<int>(std::ceil((lo_v - eps - origin) / rg.delta - 1.0));
    const int hi = static_cast<int>(std::floor((hi_v + eps - origin) / rg.delta));
    return std::pair{lo, hi};
  };
  for (int j = 0; j < model.ny; ++j) {
    const auto [b0, b1] = range(model.y(j), model.y(j + 1), rg.y(0));
    for (int i = 0; i < model.nx; ++i) {
      const auto [a0, a1] = range(model.x(i), model.x(i + 1), rg.x(0));
      bool hit = false;
      for (int b = std::max(b0, 0); b <= std::min(b1, cells.ny() - 1) && !hit;
           ++b) {
        for (int a = std::max(a0, 0); a <= std::min(a1, cells.nx() - 1) && !hit;
             ++a) {
          hit = cells.test(a, b);
        }
      }
      if (hit) out.set(i, j);
    }
  }
  return out;
}

std::vector<std::filesystem::path> write_region_pgm(
    const RegionMap& map, const std::filesystem::path& directory,
    const std::string& stem) {
  std::filesystem::create_directories(directory);
  std::vector<std::filesystem::path> written;
  for (std::size_t c = 0; c < map.cells.size(); ++c) {
    const Bitmap2D& bits = map.cells[c];
    const auto path =
        directory / (stem + "_" + std::to_string(c + 1) + ".pgm");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << "P5\n" << bits.nx() << ' ' << bits.ny() << "\n255\n";
    std::string row(static_cast<std::size_t>(bits.nx()), '\0');
    for (int j = bits.ny() - 1; j >= 0; --j) {
      for (int i = 0; i < bits.nx(); ++i) {
        row[static_cast<std::size_t>(i)] = bits.test(i, j) ? '\xff' : '\0';
      }
      out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace dcpack
