#include "dcpack/bounds.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <limits>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>
#include <vector>

#include "dcpack/errors.hpp"
#include "dcpack/reduction.hpp"

namespace dcpack {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double safe_acos(double v) { return std::acos(std::clamp(v, -1.0, 1.0)); }

}  // namespace

double lb1(const Instance& instance) {
  if (!instance.strip()) {
    return instance.size() == 1 ? instance.radius(0)
                                : instance.radius(0) + instance.radius(1);
  }
  const double w = instance.strip_width();
  double best = 2.0 * instance.max_radius();
  for (std::size_t a = 0; a < instance.size(); ++a) {
    for (std::size_t b = a + 1; b < instance.size(); ++b) {
      const double s = instance.radius(a) + instance.radius(b);
      const double dy = std::max(0.0, w - s);
      const double dx = std::sqrt(std::max(0.0, s * s - dy * dy));
      best = std::max(best, s + dx);
    }
  }
  return best;
}

double lb2(const Instance& instance) {
  double sq = 0.0;
  for (double r : instance.radii()) sq += r * r;
  if (instance.strip()) return std::numbers::pi * sq / instance.strip_width();
  return std::sqrt(sq);
}

double lb3(const Instance& instance, double upper, Lb3Options options) {
  const double seed = std::max(lb1(instance), lb2(instance));
  if (instance.size() < 2 || !(upper > seed)) return seed;
  double delta_r = options.delta_r;
  if (!(delta_r > 0.0)) {
    delta_r = std::max(0.5 * instance.min_radius() / std::numbers::sqrt2,
                       upper / 256.0);
  }
  if (region_feasible(instance, seed, delta_r)) return seed;
  double lo = seed;
  double hi = upper;
  const double tol = options.rel_tolerance * seed;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (region_feasible(instance, mid, delta_r)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo;
}

double idle_area_triple(double r_c, double r_k, double r_l) {
  if (!(r_c > 0.0) || !(r_k > 0.0) || !(r_l > 0.0)) {
    throw InputError("idle area needs positive radii");
  }
  const double heron = std::sqrt((r_c + r_k + r_l) * r_c * r_k * r_l);
  auto sector = [](double a, double b, double c) {
    const double angle =
        safe_acos((a * (a + b + c) - b * c) / ((a + c) * (a + b)));
    return a * a * angle / 2.0;
  };
  return heron - sector(r_c, r_k, r_l) - sector(r_k, r_c, r_l) -
         sector(r_l, r_c, r_k);
}

double idle_area_with_container(double r_c, double r_k, double R) {
  if (!(r_c > 0.0) || !(r_k > 0.0)) {
    throw InputError("idle area needs positive radii");
  }
  if (R < r_c + r_k) return 0.0;
  const double a = R - r_c;  // |OA|
  const double b = R - r_k;  // |OB|
  const double d = r_c + r_k;
  const double phi = safe_acos((a * a + b * b - d * d) / (2.0 * a * b));
  const double alpha = safe_acos((a * a + d * d - b * b) / (2.0 * a * d));
  const double beta = safe_acos((b * b + d * d - a * a) / (2.0 * b * d));
  const double triangle = 0.5 * a * b * std::sin(phi);
  const double pocket = R * R * phi / 2.0 - triangle -
                        r_c * r_c * (std::numbers::pi - alpha) / 2.0 -
                        r_k * r_k * (std::numbers::pi - beta) / 2.0;
  return std::max(0.0, pocket);
}

int kappa_hi(double r_c, double r_min) {
  const double half = std::asin(r_min / (r_c + r_min));
  return static_cast<int>(std::floor(std::numbers::pi / half + 1e-9));
}

namespace {

// Branch and bound for the idle-area program. Variables d_t over triples of
// {0 (container), 1..n}; f is implied (it is 1 exactly when its four d's
// are 1, since its objective coefficient is negative).
class IdleProgram {
 public:
  IdleProgram(const Instance& instance, double upper, const Lb4Options& opt)
      : n_(instance.size()), opt_(opt) {
    const std::size_t m = n_ + 1;
    auto radius = [&](std::size_t c) { return instance.radius(c - 1); };
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t k = c + 1; k < m; ++k) {
        for (std::size_t l = k + 1; l < m; ++l) {
          const double delta =
              c == 0 ? idle_area_with_container(radius(k), radius(l), upper)
                     : idle_area_triple(radius(c), radius(k), radius(l));
          index_[key(c, k, l)] = triples_.size();
          triples_.push_back({c, k, l, delta, {}});
        }
      }
    }
    for (std::size_t c = 1; c < m; ++c) {
      for (std::size_t k = c + 1; k < m; ++k) {
        for (std::size_t l = k + 1; l < m; ++l) {
          const std::size_t t = index_.at(key(c, k, l));
          const std::size_t ck = index_.at(key(0, c, k));
          const std::size_t kl = index_.at(key(0, k, l));
          const std::size_t cl = index_.at(key(0, c, l));
          const double rho = triples_[ck].delta + triples_[kl].delta +
                             triples_[t].delta +
                             std::numbers::pi * radius(k) * radius(k);
          const std::size_t g = groups_.size();
          groups_.push_back({{t, ck, kl, cl}, rho});
          for (std::size_t member : groups_[g].members) {
            triples_[member].groups.push_back(g);
          }
        }
      }
    }
    hi_.assign(m, 0);
    lo_.assign(m, 0.0);
    hi_[0] = static_cast<int>(triples_.size());
    const double r_min = instance.min_radius();
    for (std::size_t c = 1; c < m; ++c) {
      hi_[c] = kappa_hi(radius(c), r_min);
      lo_[c] = opt.kappa_lo;
    }
  }

  // Returns the optimum clamped at 0, or nullopt on node limit.
  std::optional<double> solve() {
    const std::size_t m = n_ + 1;
    value_.assign(triples_.size(), -1);
    degree_.assign(m, 0);
    open_.assign(m, 0);
    for (const Triple& t : triples_) {
      ++open_[t.c];
      ++open_[t.k];
      ++open_[t.l];
    }
    dead_.assign(groups_.size(), 0);
    set_.assign(groups_.size(), 0);
    best_ = std::numeric_limits<double>::infinity();
    aborted_ = false;
    alive_bonus_ = 0.0;
    for (const Group& g : groups_) alive_bonus_ += g.rho;
    branch(0, 0.0);
    if (aborted_) return std::nullopt;
    if (!std::isfinite(best_)) return std::nullopt;  // infeasible degrees
    return std::max(0.0, best_);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Triple {
    std::size_t c, k, l;
    double delta;
    std::vector<std::size_t> groups;
  };
  struct Group {
    std::array<std::size_t, 4> members;
    double rho;
  };

  static std::size_t key(std::size_t c, std::size_t k, std::size_t l) {
    return (c * 64 + k) * 64 + l;
  }

  bool degrees_possible() const {
    for (std::size_t c = 0; c < degree_.size(); ++c) {
      if (degree_[c] > hi_[c]) return false;
      if (degree_[c] + open_[c] < lo_[c]) return false;
    }
    return true;
  }

  void branch(std::size_t t, double cost) {
    if (aborted_ || best_ <= 0.0) return;
    if (++nodes_ > opt_.node_limit) {
      aborted_ = true;
      return;
    }
    if (!degrees_possible()) return;
    if (cost - alive_bonus_ >= best_) return;
    if (t == triples_.size()) {
      double total = cost;
      for (std::size_t g = 0; g < groups_.size(); ++g) {
        if (set_[g] == 4) total -= groups_[g].rho;
      }
      best_ = std::min(best_, total);
      return;
    }
    const Triple& tr = triples_[t];
    const std::size_t ends[3] = {tr.c, tr.k, tr.l};
    for (std::size_t e : ends) --open_[e];
    // d_t = 0 first: it keeps the idle cost down.
    value_[t] = 0;
    double killed = 0.0;
    for (std::size_t g : tr.groups) {
      if (dead_[g]++ == 0) killed += groups_[g].rho;
    }
    alive_bonus_ -= killed;
    branch(t + 1, cost);
    alive_bonus_ += killed;
    for (std::size_t g : tr.groups) --dead_[g];

    value_[t] = 1;
    for (std::size_t e : ends) ++degree_[e];
    for (std::size_t g : tr.groups) ++set_[g];
    branch(t + 1, cost + tr.delta);
    for (std::size_t g : tr.groups) --set_[g];
    for (std::size_t e : ends) --degree_[e];
    value_[t] = -1;
    for (std::size_t e : ends) ++open_[e];
  }

  std::size_t n_;
  Lb4Options opt_;
  std::vector<Triple> triples_;
  std::vector<Group> groups_;
  std::unordered_map<std::size_t, std::size_t> index_;
  std::vector<int> hi_;
  std::vector<double> lo_;
  std::vector<int> value_;
  std::vector<int> degree_;
  std::vector<int> open_;
  std::vector<int> dead_;
  std::vector<int> set_;
  double best_ = 0.0;
  double alive_bonus_ = 0.0;
  bool aborted_ = false;
  std::uint64_t nodes_ = 0;
};

}  // namespace

Lb4Result lb4(const Instance& instance, double upper, Lb4Options options) {
  Lb4Result result;
  if (instance.strip()) {
    result.note = "not computed: strip container";
    return result;
  }
  if (instance.size() > options.max_circles) {
    result.note = "not computed: more than " +
                  std::to_string(options.max_circles) + " circles";
    return result;
  }
  const double floor_bound = std::max(lb1(instance), lb2(instance));
  if (instance.size() < 3) {
    result.computed = true;
    result.value = floor_bound;
    result.note = "no triples";
    return result;
  }
  IdleProgram program(instance, upper, options);
  const auto idle = program.solve();
  result.nodes = program.nodes();
  if (!idle) {
    result.note = "not computed: node limit or infeasible degree bounds";
    return result;
  }
  result.computed = true;
  result.idle_min = *idle;
  const double area = instance.area_sum() + *idle;
  result.value = std::max(floor_bound, std::sqrt(area / std::numbers::pi));
  return result;
}

namespace {

struct Disk {
  double x, y, r;
};

// Relative clearance kept between greedy circles so the final placement
// verifies at tolerance 0 after recentring.
constexpr double kGap = 1e-9;
constexpr int kCompactRounds = 300;
constexpr int kCompactStarts = 6;

bool clear_of(const std::vector<Disk>& disks, double x, double y, double r,
              std::size_t skip = static_cast<std::size_t>(-1)) {
  for (std::size_t k = 0; k < disks.size(); ++k) {
    if (k == skip) continue;
    const Disk& d = disks[k];
    const double need = (d.r + r) * (1.0 + 2.0 * kGap);
    const double dx = x - d.x;
    const double dy = y - d.y;
    if (dx * dx + dy * dy < need * need) return false;
  }
  return true;
}

double enclosing_from(const std::vector<Disk>& disks, double zx, double zy) {
  double best = 0.0;
  for (const Disk& d : disks) {
    best = std::max(best, std::hypot(d.x - zx, d.y - zy) + d.r);
  }
  return best;
}

// Approximate centre of the smallest circle enclosing the disks: a
// Badoiu-Clarkson style walk followed by a compass search (f is convex).
std::pair<double, double> enclosing_centre(const std::vector<Disk>& disks) {
  double zx = 0.0;
  double zy = 0.0;
  for (const Disk& d : disks) {
    zx += d.x;
    zy += d.y;
  }
  zx /= static_cast<double>(disks.size());
  zy /= static_cast<double>(disks.size());
  for (int t = 1; t <= 400; ++t) {
    std::size_t far = 0;
    double far_v = -1.0;
    for (std::size_t k = 0; k < disks.size(); ++k) {
      const double v = std::hypot(disks[k].x - zx, disks[k].y - zy) + disks[k].r;
      if (v > far_v) {
        far_v = v;
        far = k;
      }
    }
    const double dx = disks[far].x - zx;
    const double dy = disks[far].y - zy;
    const double len = std::hypot(dx, dy);
    if (len == 0.0) break;
    // Farthest point of the farthest disk.
    const double px = disks[far].x + dx / len * disks[far].r;
    const double py = disks[far].y + dy / len * disks[far].r;
    zx += (px - zx) / (t + 1.0);
    zy += (py - zy) / (t + 1.0);
  }
  double best = enclosing_from(disks, zx, zy);
  double step = best * 0.05;
  constexpr int kDirs = 16;
  while (step > best * 1e-13) {
    bool moved = false;
    for (int d = 0; d < kDirs; ++d) {
      const double a = 2.0 * std::numbers::pi * d / kDirs;
      const double cx = zx + step * std::cos(a);
      const double cy = zy + step * std::sin(a);
      const double v = enclosing_from(disks, cx, cy);
      if (v < best) {
        best = v;
        zx = cx;
        zy = cy;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return {zx, zy};
}

std::vector<std::pair<double, double>> tangent_points(const Disk& a,
                                                      const Disk& b,
                                                      double r) {
  const double ra = (a.r + r) * (1.0 + 4.0 * kGap);
  const double rb = (b.r + r) * (1.0 + 4.0 * kGap);
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double d = std::hypot(dx, dy);
  if (d == 0.0 || d > ra + rb || d < std::abs(ra - rb)) return {};
  const double along = (ra * ra - rb * rb + d * d) / (2.0 * d);
  const double h = std::sqrt(std::max(0.0, ra * ra - along * along));
  const double mx = a.x + along * dx / d;
  const double my = a.y + along * dy / d;
  return {{mx + h * dy / d, my - h * dx / d}, {mx - h * dy / d, my + h * dx / d}};
}

std::vector<Disk> greedy_circle(const Instance& instance, std::mt19937_64& rng) {
  std::vector<Disk> disks;
  disks.push_back({0.0, 0.0, instance.radius(0)});
  constexpr int kAngles = 72;
  for (std::size_t c = 1; c < instance.size(); ++c) {
    const double r = instance.radius(c);
    const auto [zx, zy] = enclosing_centre(disks);
    const double current = enclosing_from(disks, zx, zy);
    std::vector<std::pair<double, double>> cands;
    for (std::size_t a = 0; a < disks.size(); ++a) {
      for (std::size_t b = a + 1; b < disks.size(); ++b) {
        for (const auto& q : tangent_points(disks[a], disks[b], r)) {
          cands.push_back(q);
        }
      }
      const double ring = (disks[a].r + r) * (1.0 + 4.0 * kGap);
      const double phase = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      for (int s = 0; s < kAngles; ++s) {
        const double ang = 2.0 * std::numbers::pi * (s + phase) / kAngles;
        cands.emplace_back(disks[a].x + ring * std::cos(ang),
                           disks[a].y + ring * std::sin(ang));
      }
    }
    double best_score = std::numeric_limits<double>::infinity();
    double best_tie = best_score;
    std::pair<double, double> best{0.0, 0.0};
    for (const auto& [x, y] : cands) {
      if (!clear_of(disks, x, y, r)) continue;
      const double score =
          std::max(current, std::hypot(x - zx, y - zy) + r);
      const double tie = std::hypot(x - zx, y - zy);
      if (score < best_score - 1e-12 ||
          (score < best_score + 1e-12 && tie < best_tie)) {
        best_score = score;
        best_tie = tie;
        best = {x, y};
      }
    }
    if (!std::isfinite(best_score)) {
      // Always possible: far out on the x axis.
      double far = 0.0;
      for (const Disk& d : disks) far = std::max(far, d.x + d.r);
      best = {far + r * (1.0 + 4.0 * kGap), 0.0};
    }
    disks.push_back({best.first, best.second, r});
  }
  return disks;
}

// Moves circles toward the enclosing centre while that shrinks the
// container; random lateral probes help circles slide past neighbours.
void refine_circle(std::vector<Disk>& disks, std::mt19937_64& rng,
                   int passes) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int pass = 0; pass < passes; ++pass) {
    auto [zx, zy] = enclosing_centre(disks);
    bool improved = false;
    std::vector<std::size_t> order(disks.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double va = std::hypot(disks[a].x - zx, disks[a].y - zy) + disks[a].r;
      const double vb = std::hypot(disks[b].x - zx, disks[b].y - zy) + disks[b].r;
      return va > vb;
    });
    for (std::size_t k : order) {
      Disk& d = disks[k];
      const double dist = std::hypot(d.x - zx, d.y - zy);
      if (dist == 0.0) continue;
      const double ux = (zx - d.x) / dist;
      const double uy = (zy - d.y) / dist;
      for (double step = dist / 2.0; step > dist * 1e-9; step /= 2.0) {
        const double nx = d.x + ux * step;
        const double ny = d.y + uy * step;
        if (clear_of(disks, nx, ny, d.r, k)) {
          d.x = nx;
          d.y = ny;
          improved = true;
          break;
        }
      }
      const double scale = d.r * 0.2;
      for (int probe = 0; probe < 8; ++probe) {
        const double nx = d.x + scale * unit(rng);
        const double ny = d.y + scale * unit(rng);
        if (std::hypot(nx - zx, ny - zy) < std::hypot(d.x - zx, d.y - zy) &&
            clear_of(disks, nx, ny, d.r, k)) {
          d.x = nx;
          d.y = ny;
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
}

std::vector<Disk> greedy_strip(const Instance& instance) {
  const double w = instance.strip_width();
  std::vector<Disk> disks;
  constexpr int kRows = 64;
  for (std::size_t c = 0; c < instance.size(); ++c) {
    const double r = instance.radius(c);
    double best_len = std::numeric_limits<double>::infinity();
    Disk best{r, r, r};
    for (int s = 0; s <= kRows; ++s) {
      const double y = r + (w - 2.0 * r) * s / kRows;
      double x = r;
      for (const Disk& d : disks) {
        const double need = (d.r + r) * (1.0 + 4.0 * kGap);
        const double dy = y - d.y;
        if (std::abs(dy) >= need) continue;
        x = std::max(x, d.x + std::sqrt(need * need - dy * dy));
      }
      // The rightward sweep may still meet a circle further right.
      while (!clear_of(disks, x, y, r)) x += r * 1e-3;
      double len = x + r;
      for (const Disk& d : disks) len = std::max(len, d.x + d.r);
      if (len < best_len - 1e-12) {
        best_len = len;
        best = {x, y, r};
      }
    }
    disks.push_back(best);
  }
  return disks;
}

bool all_clear(const std::vector<Disk>& disks) {
  for (std::size_t k = 0; k < disks.size(); ++k) {
    if (!clear_of(disks, disks[k].x, disks[k].y, disks[k].r, k)) return false;
  }
  return true;
}

// Alternating projections inside a container of radius R centred at the
// origin: push overlapping pairs apart, pull escaped circles back in.
// Radii are padded a little so a converged state passes clear_of.
bool relax_into(std::vector<Disk>& disks, double R, int max_sweeps) {
  const double pad = 1.0 + 4.0 * kGap;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double worst = 0.0;
    for (std::size_t a = 0; a < disks.size(); ++a) {
      for (std::size_t b = a + 1; b < disks.size(); ++b) {
        const double need = (disks[a].r + disks[b].r) * pad;
        double dx = disks[b].x - disks[a].x;
        double dy = disks[b].y - disks[a].y;
        double d = std::hypot(dx, dy);
        if (d >= need) continue;
        if (d == 0.0) {
          dx = 1.0;
          dy = 0.0;
          d = 1.0;
        } else {
          dx /= d;
          dy /= d;
        }
        const double push = (need - d) / 2.0;
        worst = std::max(worst, need - d);
        disks[a].x -= dx * push;
        disks[a].y -= dy * push;
        disks[b].x += dx * push;
        disks[b].y += dy * push;
      }
    }
    for (Disk& c : disks) {
      const double limit = R - c.r;
      if (limit < 0.0) return false;
      const double d = std::hypot(c.x, c.y);
      if (d > limit) {
        worst = std::max(worst, d - limit);
        c.x *= limit / d;
        c.y *= limit / d;
      }
    }
    if (worst == 0.0) return true;
  }
  return all_clear(disks);
}

// Shrink-and-repair: scale the packing into a slightly smaller container and
// relax; keep the result whenever it comes out overlap-free.
void compact_circle(std::vector<Disk>& best, std::mt19937_64& rng, int rounds) {
  std::normal_distribution<double> jitter(0.0, 1.0);
  auto [zx, zy] = enclosing_centre(best);
  for (Disk& d : best) {
    d.x -= zx;
    d.y -= zy;
  }
  double best_R = enclosing_from(best, 0.0, 0.0);
  double shrink = 0.02;
  for (int round = 0; round < rounds && shrink > 1e-6; ++round) {
    const double R = best_R * (1.0 - shrink);
    std::vector<Disk> trial = best;
    for (Disk& d : trial) {
      const double scale = R / best_R;
      d.x = d.x * scale + 1e-3 * d.r * jitter(rng);
      d.y = d.y * scale + 1e-3 * d.r * jitter(rng);
    }
    if (relax_into(trial, R, 400) && all_clear(trial)) {
      best = std::move(trial);
      best_R = enclosing_from(best, 0.0, 0.0);
      shrink = std::min(0.05, shrink * 1.5);
    } else {
      shrink /= 2.0;
    }
  }
}

// Random starts for the compaction; a wider net than the single greedy seed.
std::vector<Disk> random_start(const Instance& instance, std::mt19937_64& rng,
                               double R) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Disk> disks;
  for (std::size_t k = 0; k < instance.size(); ++k) {
    const double r = instance.radius(k);
    const double rho = std::max(0.0, R - r) * std::sqrt(u(rng));
    const double phi = 2.0 * std::numbers::pi * u(rng);
    disks.push_back({rho * std::cos(phi), rho * std::sin(phi), r});
  }
  return disks;
}

Placement finalize_circle(const Instance& instance, std::vector<Disk> disks) {
  const auto [zx, zy] = enclosing_centre(disks);
  Placement placement;
  for (const Disk& d : disks) placement.centers.push_back({d.x - zx, d.y - zy});
  double radius = 0.0;
  for (std::size_t k = 0; k < disks.size(); ++k) {
    const Point& p = placement.centers[k];
    radius = std::max(radius, std::hypot(p.x, p.y) + disks[k].r);
  }
  placement.container_size = radius;
  while (!verify_placement(instance, placement, 0.0).feasible) {
    placement.container_size =
        std::nextafter(placement.container_size * (1.0 + 1e-15),
                       std::numeric_limits<double>::infinity());
  }
  return placement;
}

Placement finalize_strip(const Instance& instance, std::vector<Disk> disks) {
  const double w = instance.strip_width();
  double shift = std::numeric_limits<double>::infinity();
  for (const Disk& d : disks) shift = std::min(shift, d.x - d.r);
  Placement placement;
  double length = 0.0;
  for (const Disk& d : disks) {
    // Clamping only absorbs rounding of the shift; kGap covers the pairs.
    const double x = std::max(d.x - shift, d.r);
    const double y = std::clamp(d.y, d.r, w - d.r);
    placement.centers.push_back({x, y});
    length = std::max(length, x + d.r);
  }
  placement.container_size = length;
  while (!verify_placement(instance, placement, 0.0).feasible) {
    placement.container_size =
        std::nextafter(placement.container_size * (1.0 + 1e-15),
                       std::numeric_limits<double>::infinity());
  }
  return placement;
}

}  // namespace

Placement tighten_container(const Instance& instance, Placement placement) {
  if (placement.centers.size() != instance.size()) {
    throw InputError("placement does not match the instance");
  }
  std::vector<Disk> disks;
  for (std::size_t k = 0; k < instance.size(); ++k) {
    disks.push_back({placement.centers[k].x, placement.centers[k].y,
                     instance.radius(k)});
  }
  return instance.strip() ? finalize_strip(instance, std::move(disks))
                          : finalize_circle(instance, std::move(disks));
}

UpperBound initial_upper_bound(const Instance& instance,
                               std::optional<double> best_known,
                               std::uint64_t seed) {
  UpperBound ub;
  if (instance.size() == 1 && !instance.strip()) {
    ub.placement = Placement{{{0.0, 0.0}}, instance.radius(0)};
    ub.value = instance.radius(0);
  } else if (instance.strip()) {
    ub.placement = finalize_strip(instance, greedy_strip(instance));
    ub.value = ub.placement->container_size;
  } else {
    std::mt19937_64 rng(seed);
    std::vector<Disk> disks = greedy_circle(instance, rng);
    refine_circle(disks, rng, 200);
    ub.placement = finalize_circle(instance, disks);
    ub.value = ub.placement->container_size;
    if (instance.size() >= 3) {
      compact_circle(disks, rng, kCompactRounds);
      const double start_R = ub.value;
      for (int start = 0; start < kCompactStarts; ++start) {
        std::vector<Disk> trial = random_start(instance, rng, start_R);
        if (!relax_into(trial, start_R, 2000)) continue;
        compact_circle(trial, rng, kCompactRounds);
        if (enclosing_from(trial, 0.0, 0.0) < enclosing_from(disks, 0.0, 0.0)) {
          disks = std::move(trial);
        }
      }
      Placement compacted = finalize_circle(instance, std::move(disks));
      if (compacted.container_size < ub.value) {
        ub.value = compacted.container_size;
        ub.placement = std::move(compacted);
      }
    }
  }
  if (!verify_placement(instance, *ub.placement, 0.0).feasible) {
    // Fallback: the trivial bound, circles in a row.
    const SizeBounds trivial = trivial_bounds(instance);
    ub.placement.reset();
    ub.value = trivial.upper;
  }
  if (best_known && *best_known < ub.value) {
    ub.value = *best_known;
    ub.placement.reset();
    ub.from_table = true;
  }
  return ub;
}

BoundReport compute_bounds(const Instance& instance,
                           const BoundOptions& options) {
  BoundReport report;
  auto t = Clock::now();
  report.lb1 = lb1(instance);
  report.seconds_lb1 = seconds_since(t);
  t = Clock::now();
  report.lb2 = lb2(instance);
  report.seconds_lb2 = seconds_since(t);
  report.chosen_lb = std::max(report.lb1, report.lb2);

  t = Clock::now();
  std::optional<double> table = options.best_known;
  if (table && *table < report.chosen_lb) table.reset();
  UpperBound ub = initial_upper_bound(instance, table, options.seed);
  report.ub = ub.value;
  report.ub_from_table = ub.from_table;
  report.ub_placement = ub.placement;
  report.seconds_ub = seconds_since(t);

  if (options.use_lb3) {
    t = Clock::now();
    report.lb3 = lb3(instance, report.ub, options.lb3);
    report.seconds_lb3 = seconds_since(t);
    report.chosen_lb = std::max(report.chosen_lb, *report.lb3);
  }
  if (options.use_lb4) {
    t = Clock::now();
    const Lb4Result r = lb4(instance, report.ub, options.lb4);
    report.seconds_lb4 = seconds_since(t);
    report.lb4_note = r.note;
    if (r.computed) {
      report.lb4 = r.value;
      report.chosen_lb = std::max(report.chosen_lb, r.value);
    }
  }
  return report;
}

}  // namespace dcpack
