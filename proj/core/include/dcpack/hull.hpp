#pragma once

#include <cstdint>
#include <vector>

#include "dcpack/bitmap.hpp"

namespace dcpack {

struct IPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const IPoint&, const IPoint&) = default;
};

inline std::int64_t dist_sq(const IPoint& a, const IPoint& b) {
  const std::int64_t dx = a.x - b.x;
  const std::int64_t dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Andrew's monotone chain; collinear points dropped, counter-clockwise.
std::vector<IPoint> convex_hull(std::vector<IPoint> points);

// Hull of the set bits of a bitmap, in index units. With `cell_corners` every
// bit (i, j) contributes the four corners of its unit cell instead of the
// point itself.
std::vector<IPoint> bitmap_hull(const Bitmap2D& bits, bool cell_corners);

// Largest squared distance between a point of `a` and a point of `b`
// (both hulls or plain point lists). Returns -1 if either is empty.
std::int64_t farthest_sq(const std::vector<IPoint>& a,
                         const std::vector<IPoint>& b);

}  // namespace dcpack
