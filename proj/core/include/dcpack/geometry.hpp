#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace dcpack {

inline constexpr double kDefaultVerifyTolerance = 1e-9;

struct Circle {
  int id = 0;  // 1-based, position in the sorted instance
  double radius = 0.0;
};

// Circular container centred at the origin; the size variable is its radius.
struct CircleContainer {
  friend bool operator==(const CircleContainer&,
                         const CircleContainer&) = default;
};

// Rectangle [0, length] x [0, width] with fixed width; the size variable is
// the length.
struct StripContainer {
  double width = 0.0;
  friend bool operator==(const StripContainer&,
                         const StripContainer&) = default;
};

using ContainerKind = std::variant<CircleContainer, StripContainer>;

inline bool is_strip(const ContainerKind& kind) {
  return std::holds_alternative<StripContainer>(kind);
}

// The problem statement: radii sorted in non-increasing order plus the
// container. Construction validates and sorts; ids are assigned 1..n in the
// sorted order.
class Instance {
 public:
  Instance(std::vector<double> radii, ContainerKind container);

  std::size_t size() const { return circles_.size(); }
  const std::vector<Circle>& circles() const { return circles_; }
  // 0-based access; radius(0) is the largest circle.
  double radius(std::size_t index) const { return circles_[index].radius; }
  std::vector<double> radii() const;
  const ContainerKind& container() const { return container_; }
  bool strip() const { return is_strip(container_); }
  double strip_width() const;

  double max_radius() const { return circles_.front().radius; }
  double min_radius() const { return circles_.back().radius; }
  double radius_sum() const;
  double area_sum() const;  // sum of pi r^2

 private:
  std::vector<Circle> circles_;
  ContainerKind container_;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Circle centres indexed by circle position (id - 1) plus the container size
// (radius R or strip length L).
struct Placement {
  std::vector<Point> centers;
  double container_size = 0.0;
};

struct VerificationReport {
  bool feasible = false;
  double worst_overlap_violation = 0.0;      // max of (r_c+r_k)^2 - d^2
  double worst_containment_violation = 0.0;  // see verify_placement
  std::vector<std::pair<int, int>> violating_pairs;  // circle ids
  std::vector<int> uncontained;                      // circle ids
};

// Squared-distance non-overlap predicate shared by the verifier and the grid
// solver so that both agree bit-for-bit on grid coordinates.
inline bool separated(double dx, double dy, double radius_sum,
                      double tolerance = 0.0) {
  return dx * dx + dy * dy >= radius_sum * radius_sum - tolerance;
}

inline bool inside_circle(double x, double y, double container_radius,
                          double radius, double tolerance = 0.0) {
  const double room = container_radius - radius;
  return room >= 0.0 && x * x + y * y <= room * room + tolerance;
}

inline bool inside_strip(double x, double y, double length, double width,
                         double radius, double tolerance = 0.0) {
  return radius - tolerance <= x && x <= length - radius + tolerance &&
         radius - tolerance <= y && y <= width - radius + tolerance;
}

// Checks non-overlap and containment. Violations are reported as positive
// amounts: squared-distance shortfall for overlaps and for circular
// containment, coordinate overshoot for strip containment.
// Throws InputError when the placement does not cover every circle exactly
// once.
VerificationReport verify_placement(const Instance& instance,
                                    const Placement& placement,
                                    double tolerance = kDefaultVerifyTolerance);

struct SizeBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Deliberately weak seeds. Circle container: [r1 + r2, sum r] (r1 alone for a
// single circle). Strip: [2 r1, sum 2 r] (circles in a row).
SizeBounds trivial_bounds(const Instance& instance);

}  // namespace dcpack
