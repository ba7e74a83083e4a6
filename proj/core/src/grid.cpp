#include "dcpack/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "dcpack/errors.hpp"

namespace dcpack {

namespace {

// ceil() that forgives the last-ulp noise of quotients such as 1.8 / 0.3.
int robust_ceil(double value) {
  return static_cast<int>(std::ceil(value - 1e-9 * std::max(1.0, value)));
}

int bits_for(int largest_index) {
  int bits = 1;
  while ((1LL << bits) < largest_index) ++bits;
  return bits;
}

}  // namespace

const char* to_string(ModelMode mode) {
  return mode == ModelMode::kRestricted ? "restricted" : "relaxed";
}

Grid build_grid(double R, double delta_target, double min_radius) {
  return build_grid(CircleContainer{}, R, delta_target, min_radius);
}

Grid build_grid(const ContainerKind& container, double size,
                double delta_target, double min_radius) {
  if (!(size > 0.0) || !std::isfinite(size)) {
    throw ConfigError("container size must be positive");
  }
  if (!(delta_target > 0.0)) {
    throw ConfigError("cell size must be positive");
  }
  if (!(delta_target * std::sqrt(2.0) < min_radius)) {
    throw ConfigError("cell diagonal " +
                      std::to_string(delta_target * std::sqrt(2.0)) +
                      " is not below the smallest radius " +
                      std::to_string(min_radius));
  }
  const int theta = std::max(1, robust_ceil(size / delta_target));
  return make_grid(container, size, size / theta, theta);
}

Grid make_grid(const ContainerKind& container, double size, double delta,
               int theta) {
  Grid grid;
  grid.container = container;
  grid.size = size;
  grid.theta = theta;
  grid.delta = delta;
  if (const auto* strip = std::get_if<StripContainer>(&container)) {
    grid.width = strip->width;
    grid.theta_y = std::max(1, robust_ceil(strip->width / grid.delta));
    grid.nx = grid.theta + 1;
    grid.ny = grid.theta_y + 1;
    grid.bit_width = bits_for(std::max(grid.theta, grid.theta_y));
  } else {
    grid.width = 2.0 * size;
    grid.theta_y = grid.theta;
    grid.nx = 2 * grid.theta + 1;
    grid.ny = grid.nx;
    grid.bit_width = bits_for(2 * grid.theta);
  }
  return grid;
}

bool same_geometry(const Grid& a, const Grid& b) {
  return a.strip() == b.strip() && a.delta == b.delta && a.theta == b.theta &&
         a.theta_y == b.theta_y && a.nx == b.nx && a.ny == b.ny;
}

CandidateSet restricted_candidates(const Grid& grid, const Circle& circle) {
  CandidateSet set{circle.id, ModelMode::kRestricted, grid.make_bitmap()};
  const double r = circle.radius;
  for (int j = 0; j < grid.ny; ++j) {
    const double y = grid.y(j);
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      const bool inside =
          grid.strip() ? inside_strip(x, y, grid.size, grid.width, r)
                       : inside_circle(x, y, grid.size, r);
      if (inside) set.cells.set(i, j);
    }
  }
  return set;
}

CandidateSet relaxed_candidates(const Grid& grid, const Circle& circle) {
  CandidateSet set{circle.id, ModelMode::kRelaxed, grid.make_bitmap()};
  const double r = circle.radius;
  const double slack = kRelaxSlack * std::max(grid.size, grid.width);
  if (r > grid.size + slack && !grid.strip()) return set;
  for (int j = 0; j < grid.ny; ++j) {
    const double y0 = grid.y(j);
    const double y1 = grid.y(j + 1);
    for (int i = 0; i < grid.nx; ++i) {
      const double x0 = grid.x(i);
      const double x1 = grid.x(i + 1);
      bool hit = false;
      if (grid.strip()) {
        hit = x0 <= grid.size - r + slack && x1 >= r - slack &&
              y0 <= grid.width - r + slack && y1 >= r - slack;
      } else {
        const double cx = std::clamp(0.0, x0, x1);
        const double cy = std::clamp(0.0, y0, y1);
        const double room = std::max(0.0, grid.size - r);
        hit = cx * cx + cy * cy <=
              room * room + kRelaxSlack * grid.size * grid.size;
      }
      if (hit) set.cells.set(i, j);
    }
  }
  return set;
}

CandidateSet candidates(const Grid& grid, const Circle& circle,
                        ModelMode mode) {
  return mode == ModelMode::kRestricted ? restricted_candidates(grid, circle)
                                        : relaxed_candidates(grid, circle);
}

bool direct_separation(int di, int dj, double r_sum_over_delta,
                       ModelMode mode) {
  const double need = r_sum_over_delta * r_sum_over_delta;
  const double a = std::abs(di) + (mode == ModelMode::kRelaxed ? 1.0 : 0.0);
  const double b = std::abs(dj) + (mode == ModelMode::kRelaxed ? 1.0 : 0.0);
  return a * a + b * b >= need;
}

SeparationFrontier separation_frontier(double r_sum, double delta,
                                       ModelMode mode, int bound) {
  if (!(r_sum > 0.0) || !(delta > 0.0)) {
    throw ConfigError("separation frontier needs positive r_sum and delta");
  }
  const double ratio = r_sum / delta;
  if (bound < robust_ceil(ratio) + 1) {
    throw ConfigError("frontier bound " + std::to_string(bound) +
                      " is below ceil(r_sum / delta) + 1");
  }
  SeparationFrontier frontier;
  frontier.mode = mode;
  frontier.r_sum_over_delta = ratio;
  // Staircase walk: the smallest admissible u2 is nonincreasing in u1, and a
  // pair is minimal iff that u2 is not admissible for u1 - 1 as well.
  int u2 = bound;
  for (int u1 = 0; u1 <= bound; ++u1) {
    if (!direct_separation(u1, u2, ratio, mode)) continue;
    while (u2 > 0 && direct_separation(u1, u2 - 1, ratio, mode)) --u2;
    if (u1 == 0 || !direct_separation(u1 - 1, u2, ratio, mode)) {
      frontier.pairs.emplace_back(u1, u2);
    }
  }
  return frontier;
}

bool sep_holds(int di, int dj, const SeparationFrontier& frontier) {
  const int a = std::abs(di);
  const int b = std::abs(dj);
  return std::any_of(frontier.pairs.begin(), frontier.pairs.end(),
                     [&](const std::pair<int, int>& u) {
                       return a >= u.first && b >= u.second;
                     });
}

}  // namespace dcpack
