#include "dcpack/milp.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dcpack/errors.hpp"

namespace dcpack {

namespace {

struct Names {
  const char* x;
  const char* y;
  const char* select;
  const char* frontier;
};

Names names_for(ModelMode mode) {
  return mode == ModelMode::kRestricted
             ? Names{"alpha", "beta", "psi", "pi"}
             : Names{"gamma", "omega", "eta", "Pi"};
}

std::string var(const char* stem, std::size_t a) {
  return std::string(stem) + "_" + std::to_string(a);
}
std::string var(const char* stem, std::size_t a, std::size_t b) {
  return var(stem, a) + "_" + std::to_string(b);
}
std::string var(const char* stem, std::size_t a, std::size_t b,
                std::size_t c) {
  return var(stem, a, b) + "_" + std::to_string(c);
}

// Accumulates "coef name" terms, wrapping long rows.
class Row {
 public:
  void add(long long coef, const std::string& name) {
    if (coef == 0) return;
    std::ostringstream term;
    term << (coef < 0 ? "- " : "+ ");
    if (coef != 1 && coef != -1) term << (coef < 0 ? -coef : coef) << ' ';
    term << name;
    terms_.push_back(term.str());
  }
  void write(std::ostream& out, const std::string& label, const char* sense,
             long long rhs) const {
    out << ' ' << label << ':';
    std::size_t width = label.size() + 2;
    for (const std::string& t : terms_) {
      if (width + t.size() > 78) {
        out << "\n   ";
        width = 3;
      }
      out << ' ' << t;
      width += t.size() + 1;
    }
    out << ' ' << sense << ' ' << rhs << '\n';
  }

 private:
  std::vector<std::string> terms_;
};

}  // namespace

void export_milp(const FeasibilityProblem& problem, std::ostream& out) {
  const Grid& g = problem.grid;
  const Names nm = names_for(problem.mode);
  const std::size_t n = problem.size();
  const int bits = g.bit_width;
  std::vector<std::string> binaries;

  out << "\\ dcpack " << to_string(problem.mode) << " grid model: size "
      << g.size << ", delta " << g.delta << ", theta " << g.theta << "\n";
  out << "Minimize\n obj:\nSubject To\n";
  if (problem.trivially_infeasible) {
    // Keep the file well formed; an empty selector row is unsatisfiable.
    out << " empty_domain: 0 x_empty = 1\n";
  }

  for (std::size_t c = 1; c <= n; ++c) {
    for (int b = 0; b < bits; ++b) {
      binaries.push_back(var(nm.x, c, b));
      binaries.push_back(var(nm.y, c, b));
    }
    Row one_hot;
    Row link_x;
    Row link_y;
    for (int b = 0; b < bits; ++b) {
      link_x.add(1LL << b, var(nm.x, c, b));
      link_y.add(1LL << b, var(nm.y, c, b));
    }
    problem.domains[c - 1].for_each([&](int i, int j) {
      const std::string s = var(nm.select, c, static_cast<std::size_t>(i),
                                static_cast<std::size_t>(j));
      binaries.push_back(s);
      one_hot.add(1, s);
      link_x.add(-i, s);
      link_y.add(-j, s);
    });
    one_hot.write(out, var("select", c), "=", 1);
    link_x.write(out, var("link_x", c), "=", 0);
    link_y.write(out, var("link_y", c), "=", 0);
  }

  const long long max_index = std::max(g.nx, g.ny) - 1;
  for (std::size_t c = 1; c <= n; ++c) {
    for (std::size_t k = c + 1; k <= n; ++k) {
      const SeparationFrontier frontier = problem.frontier(c - 1, k - 1);
      long long max_u = 0;
      for (const auto& [u1, u2] : frontier.pairs) {
        max_u = std::max<long long>({max_u, u1, u2});
      }
      const long long big_m = max_index + max_u;

      Row pick;
      for (std::size_t t = 0; t < frontier.pairs.size(); ++t) {
        const std::string f = var(nm.frontier, c, k, t);
        binaries.push_back(f);
        pick.add(1, f);
      }
      pick.write(out, var("frontier", c, k), "=", 1);

      Row sign_pick;
      for (std::size_t s = 0; s < 4; ++s) {
        const std::string name = var("sigma", c, k, s);
        binaries.push_back(name);
        sign_pick.add(1, name);
      }
      sign_pick.write(out, var("sign", c, k), "=", 1);

      // Pattern s: sx * (x_c - x_k) >= sum u1 * f - M (1 - sigma_s), same
      // for y with u2.
      for (std::size_t s = 0; s < 4; ++s) {
        const long long sx = (s & 1u) != 0 ? -1 : 1;
        const long long sy = (s & 2u) != 0 ? -1 : 1;
        const std::string sigma = var("sigma", c, k, s);
        for (int axis = 0; axis < 2; ++axis) {
          const char* stem = axis == 0 ? nm.x : nm.y;
          const long long sign = axis == 0 ? sx : sy;
          Row row;
          for (int b = 0; b < bits; ++b) {
            row.add(sign * (1LL << b), var(stem, c, b));
            row.add(-sign * (1LL << b), var(stem, k, b));
          }
          for (std::size_t t = 0; t < frontier.pairs.size(); ++t) {
            const long long u = axis == 0 ? frontier.pairs[t].first
                                          : frontier.pairs[t].second;
            row.add(-u, var(nm.frontier, c, k, t));
          }
          row.add(-big_m, sigma);
          row.write(out,
                    var(axis == 0 ? "sep_x" : "sep_y", c, k) + "_" +
                        std::to_string(s),
                    ">=", -big_m);
        }
      }
    }
  }

  out << "Binaries\n";
  for (const std::string& b : binaries) out << ' ' << b << '\n';
  if (problem.trivially_infeasible) out << " x_empty\n";
  out << "End\n";
}

void export_milp(const FeasibilityProblem& problem,
                 const std::filesystem::path& destination) {
  std::ofstream out(destination);
  if (!out) throw InputError("cannot write " + destination.string());
  export_milp(problem, out);
  if (!out) throw InputError("failed while writing " + destination.string());
}

}  // namespace dcpack
