#include "dcpack/feasibility.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "dcpack/errors.hpp"
#include "dcpack/hull.hpp"

namespace dcpack {

namespace {

// Relative margin for pruning tests whose inputs carry rounding noise; a
// prune only fires when it holds by more than this.
constexpr double kPruneSlack = 1e-9;

}  // namespace

const char* outcome_name(const SolveOutcome& outcome) {
  if (std::holds_alternative<Feasible>(outcome)) return "feasible";
  if (std::holds_alternative<Infeasible>(outcome)) return "infeasible";
  return std::get<Unknown>(outcome).reason == UnknownReason::kTimeLimit
             ? "unknown-time"
             : "unknown-nodes";
}

SeparationFrontier FeasibilityProblem::frontier(std::size_t c,
                                                std::size_t k) const {
  const double r_sum = radii.at(c) + radii.at(k);
  const int bound =
      static_cast<int>(std::ceil(r_sum / grid.delta)) + 1;
  return separation_frontier(r_sum, grid.delta, mode, bound);
}

double FeasibilityProblem::separation_sq(std::size_t c, std::size_t k) const {
  const double ratio = (radii[c] + radii[k]) / grid.delta;
  return ratio * ratio;
}

bool FeasibilityProblem::compatible(std::size_t c, int ic, int jc,
                                    std::size_t k, int ik, int jk) const {
  if (mode == ModelMode::kRestricted) {
    return separated(grid.x(ic) - grid.x(ik), grid.y(jc) - grid.y(jk),
                     radii[c] + radii[k]);
  }
  const double a = std::abs(ic - ik) + 1.0;
  const double b = std::abs(jc - jk) + 1.0;
  return a * a + b * b >= separation_sq(c, k) * (1.0 - kRelaxSlack);
}

FeasibilityProblem build_problem(const Instance& instance, const Grid& grid,
                                 ModelMode mode, const RegionMap* reduced,
                                 BuildOptions options) {
  FeasibilityProblem problem;
  problem.grid = grid;
  problem.mode = mode;
  problem.radii = instance.radii();
  const std::size_t n = instance.size();
  problem.domains.reserve(n);
  if (reduced != nullptr && reduced->cells.size() != n) {
    throw InputError("reduced region map does not match the instance");
  }
  for (std::size_t c = 0; c < n; ++c) {
    Bitmap2D domain = candidates(grid, instance.circles()[c], mode).cells;
    if (reduced != nullptr) {
      domain &= mode == ModelMode::kRestricted
                    ? project_points(*reduced, c, grid)
                    : project_cells(*reduced, c, grid);
    }
    problem.domains.push_back(std::move(domain));
  }

  if (options.symmetry) {
    auto restrict_domain = [&](Bitmap2D& bits, auto&& keep) {
      for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
          if (bits.test(i, j) && !keep(i, j)) bits.reset(i, j);
        }
      }
    };
    const bool relaxed = mode == ModelMode::kRelaxed;
    const int t = grid.theta;
    if (grid.strip()) {
      // Mirror images in both axes: the largest circle goes to the
      // upper-right quarter (for cells: the cell meets that quarter).
      const double hx = grid.size / 2.0;
      const double hy = grid.width / 2.0;
      restrict_domain(problem.domains[0], [&](int i, int j) {
        const int a = relaxed ? i + 1 : i;
        const int b = relaxed ? j + 1 : j;
        return grid.x(a) >= hx && grid.y(b) >= hy;
      });
    } else {
      restrict_domain(problem.domains[0], [&](int i, int j) {
        return relaxed ? (i + 1 >= t && j + 1 >= t) : (i >= t && j >= t);
      });
      if (n >= 2) {
        restrict_domain(problem.domains[1], [&](int i, int j) {
          return relaxed ? j + 1 >= i : j >= i;
        });
      }
    }
  }

  problem.trivially_infeasible =
      std::any_of(problem.domains.begin(), problem.domains.end(),
                  [](const Bitmap2D& b) { return b.none(); });
  return problem;
}

namespace {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double angle_at(double adjacent1, double adjacent2, double opposite) {
  const double c = (adjacent1 * adjacent1 + adjacent2 * adjacent2 -
                    opposite * opposite) /
                   (2.0 * adjacent1 * adjacent2);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// Largest clearance min_i(|p - X_i| - r_i) over the triangle of centres:
// attained on an edge (at most half that edge's gap) or at an interior point
// equidistant from the three circles.
double max_clearance(const std::array<Vec2, 3>& p,
                     const std::array<double, 3>& r,
                     const std::array<double, 3>& gaps) {
  double best = std::max({gaps[0], gaps[1], gaps[2]}) / 2.0;
  // Linear system for the tangent centre as a function of rho.
  const double a11 = 2.0 * (p[1].x - p[0].x);
  const double a12 = 2.0 * (p[1].y - p[0].y);
  const double a21 = 2.0 * (p[2].x - p[0].x);
  const double a22 = 2.0 * (p[2].y - p[0].y);
  const double det = a11 * a22 - a12 * a21;
  if (std::abs(det) < 1e-300) return std::numeric_limits<double>::infinity();
  auto k = [&](int i) {
    return p[i].x * p[i].x + p[i].y * p[i].y - r[i] * r[i];
  };
  const double c1 = k(1) - k(0);
  const double c2 = k(2) - k(0);
  const double e1 = -2.0 * (r[1] - r[0]);
  const double e2 = -2.0 * (r[2] - r[0]);
  const double x0 = (c1 * a22 - a12 * c2) / det;
  const double x1 = (e1 * a22 - a12 * e2) / det;
  const double y0 = (a11 * c2 - c1 * a21) / det;
  const double y1 = (a11 * e2 - e1 * a21) / det;
  const double dx = x0 - p[0].x;
  const double dy = y0 - p[0].y;
  const double qa = x1 * x1 + y1 * y1 - 1.0;
  const double qb = 2.0 * (dx * x1 + dy * y1 - r[0]);
  const double qc = dx * dx + dy * dy - r[0] * r[0];
  std::array<double, 2> roots{};
  int count = 0;
  if (std::abs(qa) < 1e-14) {
    if (std::abs(qb) > 1e-300) roots[count++] = -qc / qb;
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      roots[count++] = (-qb + s) / (2.0 * qa);
      roots[count++] = (-qb - s) / (2.0 * qa);
    }
  }
  const double area2 = cross2(p[0], p[1], p[2]);
  const double scale = std::abs(area2);
  for (int m = 0; m < count; ++m) {
    const double rho = roots[m];
    const Vec2 q{x0 + x1 * rho, y0 + y1 * rho};
    // Barycentric sign test, generous at the boundary.
    const double w0 = cross2(p[1], p[2], q) / area2;
    const double w1 = cross2(p[2], p[0], q) / area2;
    const double w2 = cross2(p[0], p[1], q) / area2;
    const double eps = 1e-9 * (1.0 + 1.0 / std::max(scale, 1e-300));
    if (w0 >= -eps && w1 >= -eps && w2 >= -eps) best = std::max(best, rho);
  }
  return best;
}

// Area of the part of the centre triangle that no circle of radius at least
// r_min can use, or 0 when no such guarantee holds (see P1 in README).
double triple_idle(const std::array<Vec2, 3>& p,
                   const std::array<double, 3>& r, double r_min) {
  const double area = std::abs(cross2(p[0], p[1], p[2])) / 2.0;
  if (area <= 0.0) return 0.0;
  std::array<double, 3> side{};  // side[e] joins p[e] and p[(e+1)%3]
  std::array<double, 3> gaps{};
  for (int e = 0; e < 3; ++e) {
    const Vec2& a = p[e];
    const Vec2& b = p[(e + 1) % 3];
    side[e] = std::hypot(a.x - b.x, a.y - b.y);
    gaps[e] = std::max(0.0, side[e] - r[e] - r[(e + 1) % 3]);
    if (gaps[e] >= 2.0 * r_min) return 0.0;
  }
  if (max_clearance(p, r, gaps) >= r_min * (1.0 - kPruneSlack)) return 0.0;
  // Angle at vertex v lies between sides side[v] and side[(v+2)%3].
  double sectors = 0.0;
  for (int v = 0; v < 3; ++v) {
    const double ang = angle_at(side[v], side[(v + 2) % 3], side[(v + 1) % 3]);
    sectors += r[v] * r[v] * ang / 2.0;
  }
  double intrusion = 0.0;
  for (int e = 0; e < 3; ++e) {
    const double half = gaps[e] / 2.0;
    const double depth = r_min - std::sqrt(r_min * r_min - half * half);
    intrusion += gaps[e] * depth;
  }
  return std::max(0.0, (area - sectors - intrusion) * (1.0 - kPruneSlack));
}

bool triangles_overlap(const std::array<Vec2, 3>& a,
                       const std::array<Vec2, 3>& b) {
  auto separated_by = [](const std::array<Vec2, 3>& s,
                         const std::array<Vec2, 3>& t) {
    for (int e = 0; e < 3; ++e) {
      const Vec2& u = s[e];
      const Vec2& v = s[(e + 1) % 3];
      const Vec2 normal{v.y - u.y, u.x - v.x};
      double smin = std::numeric_limits<double>::infinity();
      double smax = -smin;
      double tmin = smin;
      double tmax = -smin;
      for (const Vec2& q : s) {
        const double d = normal.x * q.x + normal.y * q.y;
        smin = std::min(smin, d);
        smax = std::max(smax, d);
      }
      for (const Vec2& q : t) {
        const double d = normal.x * q.x + normal.y * q.y;
        tmin = std::min(tmin, d);
        tmax = std::max(tmax, d);
      }
      const double eps =
          1e-9 * (std::abs(smin) + std::abs(smax) + std::abs(tmin) +
                  std::abs(tmax) + 1e-300);
      if (smax <= tmin + eps || tmax <= smin + eps) return true;
    }
    return false;
  };
  return !separated_by(a, b) && !separated_by(b, a);
}

struct Value {
  double key1;
  double key2;
  int i;
  int j;
};

struct ValueLess {
  // Heap comparator: "greater" so the heap top is the smallest key.
  bool operator()(const Value& a, const Value& b) const {
    if (a.key1 != b.key1) return a.key1 > b.key1;
    if (a.key2 != b.key2) return a.key2 > b.key2;
    if (a.j != b.j) return a.j > b.j;
    return a.i > b.i;
  }
};

struct Shared {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> hit_time{false};
  std::atomic<bool> hit_nodes{false};
  std::atomic<std::size_t> next_root{0};
  std::mutex mutex;
  std::optional<Feasible> solution;
  std::atomic<std::uint64_t> area_prunes{0};
  std::atomic<std::uint64_t> farthest_prunes{0};
  std::atomic<std::uint64_t> wipeouts{0};
};

class Search {
 public:
  Search(const FeasibilityProblem& problem, const SolveLimits& limits,
         const PruneOptions& prune, Shared& shared)
      : p_(problem),
        limits_(limits),
        prune_(prune),
        shared_(shared),
        n_(problem.size()),
        domains_(problem.domains),
        counts_(n_),
        assigned_(n_) {
    for (std::size_t c = 0; c < n_; ++c) counts_[c] = domains_[c].count();
    const Grid& g = p_.grid;
    relaxed_ = p_.mode == ModelMode::kRelaxed;
    shrink_ = relaxed_ ? g.delta / std::numbers::sqrt2 : 0.0;
    centre_i_ = g.strip() ? g.theta / 2.0 : g.theta;
    centre_j_ = g.strip() ? g.theta_y / 2.0 : g.theta;
    container_area_ = g.strip() ? g.size * g.width
                                : std::numbers::pi * g.size * g.size;
    suffix_area_.assign(n_ + 1, 0.0);
    for (std::size_t c = n_; c-- > 0;) {
      const double r = p_.radii[c] - shrink_;
      suffix_area_[c] = suffix_area_[c + 1] + std::numbers::pi * r * r;
    }
    r_min_ = p_.radii.back() - shrink_;
  }

  // Candidate values for the first circle in search order.
  std::vector<Value> root_values() { return ordered_values(0); }

  // Explores the subtree with circle 0 fixed at `root`. Returns true when a
  // solution was recorded.
  bool explore_root(const Value& root) {
    if (!try_assign(0, root.i, root.j)) return false;
    const bool found = n_ == 1 ? record() : descend(1);
    undo_level();
    return found;
  }

 private:
  struct TrailEntry {
    std::uint32_t circle;
    std::uint32_t word;
    std::uint64_t old;
  };
  struct Level {
    std::size_t trail_mark;
    std::vector<std::size_t> counts;
    std::size_t triangles_mark;
    double idle;
  };
  using Triangle = std::array<Vec2, 3>;

  bool limit_hit() {
    const std::uint64_t count = shared_.nodes.fetch_add(1) + 1;
    if (count > limits_.node_limit) {
      shared_.hit_nodes = true;
      shared_.stop = true;
    }
    if ((count & 1023u) == 0) {
      if (limits_.deadline && SolveClock::now() >= *limits_.deadline) {
        shared_.hit_time = true;
        shared_.stop = true;
      }
      if (limits_.cancel != nullptr && limits_.cancel->load()) {
        shared_.hit_time = true;
        shared_.stop = true;
      }
    }
    return shared_.stop.load(std::memory_order_relaxed);
  }

  std::vector<Value> ordered_values(std::size_t depth) const {
    std::vector<Value> values;
    values.reserve(counts_[depth]);
    const bool has_prev = depth > 0;
    const auto prev = has_prev ? assigned_[depth - 1] : std::pair{0, 0};
    domains_[depth].for_each([&](int i, int j) {
      const double ci = i - centre_i_;
      const double cj = j - centre_j_;
      const double centre = ci * ci + cj * cj;
      if (has_prev) {
        const double di = i - prev.first;
        const double dj = j - prev.second;
        values.push_back({di * di + dj * dj, -centre, i, j});
      } else {
        values.push_back({centre, 0.0, i, j});
      }
    });
    std::sort(values.begin(), values.end(),
              [](const Value& a, const Value& b) { return ValueLess{}(b, a); });
    return values;
  }

  bool descend(std::size_t depth) {
    if (depth + 1 == n_) {
      // Last circle: every surviving value completes the assignment.
      bool found = false;
      domains_[depth].for_each([&](int i, int j) {
        if (found || shared_.stop) return;
        if (limit_hit()) return;
        if (!prune_.conditional && !consistent(depth, i, j)) return;
        assigned_[depth] = {i, j};
        found = record();
      });
      return found;
    }
    // Lazy ordering: a heap keeps the per-node cost linear in the domain.
    std::vector<Value> heap;
    heap.reserve(counts_[depth]);
    const auto prev = assigned_[depth - 1];
    domains_[depth].for_each([&](int i, int j) {
      const double ci = i - centre_i_;
      const double cj = j - centre_j_;
      const double di = i - prev.first;
      const double dj = j - prev.second;
      heap.push_back({di * di + dj * dj, -(ci * ci + cj * cj), i, j});
    });
    std::make_heap(heap.begin(), heap.end(), ValueLess{});
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), ValueLess{});
      const Value v = heap.back();
      heap.pop_back();
      if (shared_.stop || limit_hit()) return false;
      if (!try_assign(depth, v.i, v.j)) continue;
      const bool found = descend(depth + 1);
      undo_level();
      if (found) return true;
    }
    return false;
  }

  bool consistent(std::size_t depth, int i, int j) const {
    for (std::size_t a = 0; a < depth; ++a) {
      if (!p_.compatible(a, assigned_[a].first, assigned_[a].second, depth, i,
                         j)) {
        return false;
      }
    }
    return true;
  }

  bool record() {
    std::vector<std::pair<int, int>> solution(assigned_.begin(),
                                              assigned_.end());
    if (!check_assignment(p_, solution)) return false;
    std::lock_guard lock(shared_.mutex);
    if (!shared_.solution) shared_.solution = Feasible{std::move(solution)};
    shared_.stop = true;
    return true;
  }

  // Assigns circle `depth`, filters later domains and runs the node tests.
  // On failure the level is already undone.
  bool try_assign(std::size_t depth, int i, int j) {
    if (!prune_.conditional && !consistent(depth, i, j)) return false;
    levels_.push_back({trail_.size(), counts_, triangles_.size(), idle_});
    assigned_[depth] = {i, j};
    bool ok = true;
    if (prune_.conditional) {
      for (std::size_t k = depth + 1; k < n_ && ok; ++k) {
        clear_conflicts(depth, i, j, k);
        if (counts_[k] == 0) {
          ok = false;
          ++shared_.wipeouts;
        }
      }
    }
    if (ok && prune_.equal_radius_order && depth >= 2 && depth + 1 < n_ &&
        p_.radii[depth + 1] == p_.radii[depth]) {
      clear_lex_prefix(depth + 1, i, j);
      if (counts_[depth + 1] == 0) ok = false;
    }
    if (ok && depth + 1 < n_) {
      if (prune_.farthest && depth + 2 < n_ && farthest_prune(depth + 1)) {
        ++shared_.farthest_prunes;
        ok = false;
      }
      if (ok && prune_.area && area_prune(depth)) {
        ++shared_.area_prunes;
        ok = false;
      }
    }
    if (!ok) undo_level();
    return ok;
  }

  void undo_level() {
    Level& level = levels_.back();
    while (trail_.size() > level.trail_mark) {
      const TrailEntry& e = trail_.back();
      domains_[e.circle].words()[e.word] = e.old;
      trail_.pop_back();
    }
    counts_ = std::move(level.counts);
    triangles_.resize(level.triangles_mark);
    idle_ = level.idle;
    levels_.pop_back();
  }

  void clear_columns(std::size_t k, int j, int i0, int i1) {
    Bitmap2D& bits = domains_[k];
    i0 = std::max(i0, 0);
    i1 = std::min(i1, bits.nx() - 1);
    if (i0 > i1) return;
    auto row = bits.row(j);
    const std::size_t base =
        static_cast<std::size_t>(j) * bits.words_per_row();
    const int w0 = i0 >> 6;
    const int w1 = i1 >> 6;
    for (int w = w0; w <= w1; ++w) {
      const std::uint64_t mask =
          span_mask(w == w0 ? (i0 & 63) : 0, w == w1 ? (i1 & 63) : 63);
      const std::uint64_t old = row[w];
      if ((old & mask) == 0) continue;
      trail_.push_back({static_cast<std::uint32_t>(k),
                        static_cast<std::uint32_t>(base + w), old});
      row[w] = old & ~mask;
      counts_[k] -= std::popcount(old & mask);
    }
  }

  // Removes from domain k every value conflicting with circle c at (ic, jc).
  void clear_conflicts(std::size_t c, int ic, int jc, std::size_t k) {
    const Bitmap2D& bits = domains_[k];
    const double need = p_.separation_sq(c, k);
    const int reach = static_cast<int>(std::ceil(std::sqrt(need))) + 1;
    const int j_lo = std::max(0, jc - reach);
    const int j_hi = std::min(bits.ny() - 1, jc + reach);
    for (int j = j_lo; j <= j_hi; ++j) {
      const auto extent = bits.row_extent(j);
      if (!extent) continue;
      auto conflict = [&](int d) {
        return !p_.compatible(c, ic, jc, k, ic + d, j);
      };
      if (!conflict(0)) continue;
      const int dj = j - jc;
      const double rest = need - static_cast<double>(dj) * dj;
      const int guess =
          rest > 0.0 ? static_cast<int>(std::sqrt(rest)) : 0;
      const int right = settle(conflict, guess, +1);
      const int left = settle(conflict, guess, -1);
      clear_columns(k, j, ic - left, ic + right);
    }
  }

  // Largest offset m >= 0 along `dir` with conflict(dir * m), starting from
  // an estimate; conflicts are contiguous around offset 0.
  template <typename F>
  static int settle(F&& conflict, int guess, int dir) {
    int m = std::max(0, guess);
    while (m > 0 && !conflict(dir * m)) --m;
    while (conflict(dir * (m + 1))) ++m;
    return m;
  }

  void clear_lex_prefix(std::size_t k, int i, int j) {
    for (int row = 0; row < j; ++row) {
      clear_columns(k, row, 0, domains_[k].nx() - 1);
    }
    clear_columns(k, j, 0, i);
  }

  bool farthest_prune(std::size_t a) {
    const std::size_t b = a + 1;
    const auto ha = bitmap_hull(domains_[a], relaxed_);
    const auto hb = bitmap_hull(domains_[b], relaxed_);
    if (ha.empty() || hb.empty()) return true;
    const double far = static_cast<double>(farthest_sq(ha, hb));
    const double need = p_.separation_sq(a, b);
    const double slack = relaxed_ ? kRelaxSlack : kPruneSlack;
    return far < need * (1.0 - slack) * (1.0 - kPruneSlack);
  }

  Vec2 centre_of(std::size_t c) const {
    const auto [i, j] = assigned_[c];
    const Grid& g = p_.grid;
    if (relaxed_) return {g.x(i) + g.delta / 2.0, g.y(j) + g.delta / 2.0};
    return {g.x(i), g.y(j)};
  }

  // Free area after the assigned circles and their unusable pockets must
  // hold the unassigned circles (relaxed: circles shrunk by the half cell
  // diagonal, centred in their cells, which is a true packing).
  bool area_prune(std::size_t depth) {
    const std::size_t last = depth;
    if (r_min_ > 0.0 && last >= 2) {
      const Vec2 pc = centre_of(last);
      const double rc = p_.radii[last] - shrink_;
      for (std::size_t a = 0; a < last; ++a) {
        const Vec2 pa = centre_of(a);
        const double ra = p_.radii[a] - shrink_;
        if (std::hypot(pa.x - pc.x, pa.y - pc.y) - ra - rc >= 2.0 * r_min_) {
          continue;
        }
        for (std::size_t b = a + 1; b < last; ++b) {
          const Vec2 pb = centre_of(b);
          const double rb = p_.radii[b] - shrink_;
          const Triangle tri{pa, pb, pc};
          const double idle = triple_idle(tri, {ra, rb, rc}, r_min_);
          if (idle <= 0.0) continue;
          const bool clash =
              std::any_of(triangles_.begin(), triangles_.end(),
                          [&](const Triangle& t) {
                            return triangles_overlap(t, tri);
                          });
          if (clash) continue;
          triangles_.push_back(tri);
          idle_ += idle;
        }
      }
    }
    const double assigned = suffix_area_[0] - suffix_area_[depth + 1];
    const double free = container_area_ - assigned - idle_;
    return free < suffix_area_[depth + 1] - kPruneSlack * container_area_;
  }

  const FeasibilityProblem& p_;
  const SolveLimits& limits_;
  const PruneOptions& prune_;
  Shared& shared_;
  std::size_t n_;
  std::vector<Bitmap2D> domains_;
  std::vector<std::size_t> counts_;
  std::vector<std::pair<int, int>> assigned_;
  std::vector<TrailEntry> trail_;
  std::vector<Level> levels_;
  std::vector<Triangle> triangles_;
  double idle_ = 0.0;
  bool relaxed_ = false;
  double shrink_ = 0.0;
  double centre_i_ = 0.0;
  double centre_j_ = 0.0;
  double container_area_ = 0.0;
  std::vector<double> suffix_area_;
  double r_min_ = 0.0;
};

}  // namespace

bool check_assignment(const FeasibilityProblem& problem,
                      const std::vector<std::pair<int, int>>& assignment) {
  const std::size_t n = problem.size();
  if (assignment.size() != n) return false;
  for (std::size_t c = 0; c < n; ++c) {
    const auto [i, j] = assignment[c];
    if (!problem.domains[c].in_range(i, j) || !problem.domains[c].test(i, j)) {
      return false;
    }
    for (std::size_t k = c + 1; k < n; ++k) {
      if (!problem.compatible(c, i, j, k, assignment[k].first,
                              assignment[k].second)) {
        return false;
      }
    }
  }
  return true;
}

SolveResult solve(const FeasibilityProblem& problem, const SolveLimits& limits,
                  const PruneOptions& prune) {
  const auto start = SolveClock::now();
  SolveResult result{Infeasible{}, {}};
  auto finish = [&](SolveResult r) {
    r.stats.seconds =
        std::chrono::duration<double>(SolveClock::now() - start).count();
    return r;
  };
  if (problem.size() == 0) return finish({Feasible{}, {}});
  if (problem.trivially_infeasible) return finish(result);

  Shared shared;
  // Cheap global test before any branching.
  if (prune.area) {
    const Grid& g = problem.grid;
    const double shrink = problem.mode == ModelMode::kRelaxed
                              ? g.delta / std::numbers::sqrt2
                              : 0.0;
    double need = 0.0;
    for (double r : problem.radii) {
      need += std::numbers::pi * (r - shrink) * (r - shrink);
    }
    const double area =
        g.strip() ? g.size * g.width : std::numbers::pi * g.size * g.size;
    if (area < need - kPruneSlack * area) {
      result.stats.area_prunes = 1;
      return finish(result);
    }
  }

  Search root_search(problem, limits, prune, shared);
  const std::vector<Value> roots = root_search.root_values();
  const int threads = std::max(1, limits.threads);

  auto worker = [&](Search& search) {
    while (!shared.stop) {
      const std::size_t idx = shared.next_root.fetch_add(1);
      if (idx >= roots.size()) break;
      search.explore_root(roots[idx]);
    }
  };
  if (threads == 1) {
    worker(root_search);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        Search search(problem, limits, prune, shared);
        worker(search);
      });
    }
    for (auto& th : pool) th.join();
  }

  result.stats.nodes = shared.nodes.load();
  result.stats.area_prunes = shared.area_prunes.load();
  result.stats.farthest_prunes = shared.farthest_prunes.load();
  result.stats.wipeouts = shared.wipeouts.load();
  if (shared.solution) {
    result.outcome = *shared.solution;
  } else if (shared.hit_time) {
    result.outcome = Unknown{UnknownReason::kTimeLimit};
  } else if (shared.hit_nodes) {
    result.outcome = Unknown{UnknownReason::kNodeLimit};
  }
  return finish(result);
}

Placement to_placement(const FeasibilityProblem& problem,
                       const Feasible& solution) {
  if (problem.mode != ModelMode::kRestricted) {
    throw InputError("only restricted solutions map to placements");
  }
  Placement placement;
  placement.container_size = problem.grid.size;
  for (const auto& [i, j] : solution.assignment) {
    placement.centers.push_back(problem.grid.point(i, j));
  }
  return placement;
}

}  // namespace dcpack
