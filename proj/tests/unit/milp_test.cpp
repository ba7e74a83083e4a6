#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "dcpack/milp.hpp"
#include "lp_model.hpp"

namespace dcpack {
namespace {

std::string lp_text(const FeasibilityProblem& p) {
  std::ostringstream out;
  export_milp(p, out);
  return out.str();
}

int count_matching(const std::vector<std::string>& names, const std::string& pattern) {
  const std::regex re(pattern);
  int n = 0;
  for (const auto& name : names) n += std::regex_match(name, re) ? 1 : 0;
  return n;
}

TEST(ExportMilp, SingleCircle) {
  Instance inst({1.0}, CircleContainer{});
  const Grid g = build_grid(2.0, 0.5, 1.0);
  const auto p = build_problem(inst, g, ModelMode::kRestricted, nullptr, {.symmetry = false});
  const auto model = testing::parse_lp(lp_text(p));
  EXPECT_EQ(count_matching(model.binaries, "alpha_1_\\d+"), g.bit_width);
  EXPECT_EQ(count_matching(model.binaries, "beta_1_\\d+"), g.bit_width);
  EXPECT_EQ(count_matching(model.binaries, "psi_1_\\d+_\\d+"),
            static_cast<int>(p.domains[0].count()));
  for (const auto& row : model.rows) {
    EXPECT_EQ(row.name.rfind("sep_", 0), std::string::npos);
  }
  EXPECT_TRUE(testing::lp_feasible(model).solution);
}

TEST(ExportMilp, RelaxedUsesGammaOmegaEta) {
  Instance inst({1.0, 1.0}, CircleContainer{});
  const Grid g = make_grid(CircleContainer{}, 2.0, 1.0, 2);
  const auto model = testing::parse_lp(lp_text(build_problem(inst, g, ModelMode::kRelaxed)));
  EXPECT_GT(count_matching(model.binaries, "gamma_1_\\d+"), 0);
  EXPECT_GT(count_matching(model.binaries, "omega_2_\\d+"), 0);
  EXPECT_GT(count_matching(model.binaries, "eta_2_\\d+_\\d+"), 0);
  EXPECT_GT(count_matching(model.binaries, "Pi_1_2_\\d+"), 0);
  EXPECT_EQ(count_matching(model.binaries, "sigma_1_2_\\d"), 4);
}

TEST(ExportMilp, TwoUnitCirclesAgreeWithSolve) {
  Instance inst({1.0, 1.0}, CircleContainer{});
  const Grid g = make_grid(CircleContainer{}, 2.0, 1.0, 2);
  for (ModelMode mode : {ModelMode::kRestricted, ModelMode::kRelaxed}) {
    for (bool symmetry : {true, false}) {
      const auto p = build_problem(inst, g, mode, nullptr, {.symmetry = symmetry});
      const auto search = testing::lp_feasible(testing::parse_lp(lp_text(p)));
      ASSERT_TRUE(search.exhausted);
      EXPECT_EQ(search.solution.has_value(), solve(p).feasible()) << to_string(mode);
    }
  }
}

TEST(ExportMilp, FigureTwoCoarseModelIsInfeasible) {
  Instance inst({1.0, 0.75, 0.5}, CircleContainer{});
  const Grid g = build_grid(1.8, 0.3, 0.5);
  const auto p = build_problem(inst, g, ModelMode::kRestricted);
  const auto search = testing::lp_feasible(testing::parse_lp(lp_text(p)));
  ASSERT_TRUE(search.exhausted);
  EXPECT_FALSE(search.solution);
}

TEST(ExportMilp, TriviallyInfeasibleProblem) {
  Instance inst({3.0}, CircleContainer{});
  const Grid g = build_grid(2.0, 0.5, 1.0);
  const auto p = build_problem(inst, g, ModelMode::kRestricted);
  ASSERT_TRUE(p.trivially_infeasible);
  const auto search = testing::lp_feasible(testing::parse_lp(lp_text(p)));
  EXPECT_TRUE(search.exhausted);
  EXPECT_FALSE(search.solution);
}

TEST(ExportMilp, WritesAFile) {
  Instance inst({1.0}, CircleContainer{});
  const Grid g = build_grid(2.0, 0.5, 1.0);
  const auto path = std::filesystem::temp_directory_path() / "dcpack_milp_test.lp";
  export_milp(build_problem(inst, g, ModelMode::kRestricted), path);
  EXPECT_TRUE(std::filesystem::exists(path));
  EXPECT_GT(std::filesystem::file_size(path), 0u);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace dcpack
