#include "dcpack/hull.hpp"

#include <algorithm>

namespace dcpack {

namespace {

std::int64_t cross(const IPoint& o, const IPoint& a, const IPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::vector<IPoint> convex_hull(std::vector<IPoint> points) {
  std::sort(points.begin(), points.end(), [](const IPoint& a, const IPoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  std::vector<IPoint> hull(2 * points.size());
  std::size_t k = 0;
  for (const IPoint& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = points.rbegin() + 1; it != points.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<IPoint> bitmap_hull(const Bitmap2D& bits, bool cell_corners) {
  std::vector<IPoint> extremes;
  for (int j = 0; j < bits.ny(); ++j) {
    const auto extent = bits.row_extent(j);
    if (!extent) continue;
    const auto [lo, hi] = *extent;
    if (cell_corners) {
      extremes.push_back({lo, j});
      extremes.push_back({lo, j + 1});
      extremes.push_back({hi + 1, j});
      extremes.push_back({hi + 1, j + 1});
    } else {
      extremes.push_back({lo, j});
      if (hi != lo) extremes.push_back({hi, j});
    }
  }
  return convex_hull(std::move(extremes));
}

std::int64_t farthest_sq(const std::vector<IPoint>& a,
                         const std::vector<IPoint>& b) {
  std::int64_t best = -1;
  for (const IPoint& p : a) {
    for (const IPoint& q : b) best = std::max(best, dist_sq(p, q));
  }
  return best;
}

}  // namespace dcpack
