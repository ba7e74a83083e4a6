#include "dcpack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>

#include "dcpack/errors.hpp"

namespace dcpack {

Instance::Instance(std::vector<double> radii, ContainerKind container)
    : container_(container) {
  if (radii.empty()) throw InputError("instance has no circles");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) {
      throw InputError("radius #" + std::to_string(i + 1) +
                       " must be a positive finite number");
    }
  }
  std::sort(radii.begin(), radii.end(), std::greater<>());
  circles_.reserve(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    circles_.push_back({static_cast<int>(i) + 1, radii[i]});
  }
  if (const auto* strip = std::get_if<StripContainer>(&container_)) {
    if (!(strip->width > 0.0) || !std::isfinite(strip->width)) {
      throw InputError("strip width must be a positive finite number");
    }
    if (strip->width < 2.0 * radii.front()) {
      throw InputError("strip width is smaller than the largest diameter");
    }
  }
}

std::vector<double> Instance::radii() const {
  std::vector<double> out;
  out.reserve(circles_.size());
  for (const Circle& c : circles_) out.push_back(c.radius);
  return out;
}

double Instance::strip_width() const {
  const auto* strip = std::get_if<StripContainer>(&container_);
  return strip != nullptr ? strip->width : 0.0;
}

double Instance::radius_sum() const {
  return std::accumulate(
      circles_.begin(), circles_.end(), 0.0,
      [](double acc, const Circle& c) { return acc + c.radius; });
}

double Instance::area_sum() const {
  double sum = 0.0;
  for (const Circle& c : circles_) sum += c.radius * c.radius;
  return std::numbers::pi * sum;
}

VerificationReport verify_placement(const Instance& instance,
                                    const Placement& placement,
                                    double tolerance) {
  if (tolerance < 0.0) throw InputError("tolerance must be nonnegative");
  const std::size_t n = instance.size();
  if (placement.centers.size() != n) {
    throw InputError("placement has " +
                     std::to_string(placement.centers.size()) +
                     " centres for " + std::to_string(n) + " circles");
  }
  for (std::size_t c = 0; c < n; ++c) {
    const Point& p = placement.centers[c];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InputError("centre of circle " + std::to_string(c + 1) +
                       " is not finite");
    }
  }

  VerificationReport report;
  const double size = placement.container_size;
  for (std::size_t c = 0; c < n; ++c) {
    const double r = instance.radius(c);
    const Point& p = placement.centers[c];
    bool contained = false;
    double violation = 0.0;
    if (instance.strip()) {
      const double width = instance.strip_width();
      contained = inside_strip(p.x, p.y, size, width, r, tolerance);
      violation = std::max({r - p.x, p.x - (size - r), r - p.y,
                            p.y - (width - r), 0.0});
    } else {
      contained = inside_circle(p.x, p.y, size, r, tolerance);
      const double room = size - r;
      if (room < 0.0) {
        violation = std::max(-room, p.x * p.x + p.y * p.y);
      } else {
        violation = std::max(0.0, p.x * p.x + p.y * p.y - room * room);
      }
    }
    report.worst_containment_violation =
        std::max(report.worst_containment_violation, violation);
    if (!contained) report.uncontained.push_back(static_cast<int>(c) + 1);
  }

  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t k = c + 1; k < n; ++k) {
      const double dx = placement.centers[c].x - placement.centers[k].x;
      const double dy = placement.centers[c].y - placement.centers[k].y;
      const double rs = instance.radius(c) + instance.radius(k);
      const double shortfall = rs * rs - (dx * dx + dy * dy);
      report.worst_overlap_violation =
          std::max(report.worst_overlap_violation, shortfall);
      if (!separated(dx, dy, rs, tolerance)) {
        report.violating_pairs.emplace_back(static_cast<int>(c) + 1,
                                            static_cast<int>(k) + 1);
      }
    }
  }
  report.feasible = report.violating_pairs.empty() && report.uncontained.empty();
  return report;
}

SizeBounds trivial_bounds(const Instance& instance) {
  if (instance.strip()) {
    return {2.0 * instance.max_radius(), 2.0 * instance.radius_sum()};
  }
  const double lower = instance.size() == 1
                           ? instance.radius(0)
                           : instance.radius(0) + instance.radius(1);
  return {lower, instance.radius_sum()};
}

}  // namespace dcpack
