#include <gtest/gtest.h>

#include <random>

#include "dcpack/driver.hpp"
#include "dcpack/errors.hpp"

namespace dcpack {
namespace {

// Replays the log: monotone bracket and certificate discipline.
void check_log(const RunResult& run) {
  double lower = run.initial_lower;
  double upper = run.initial_upper;
  for (const auto& rec : run.log) {
    EXPECT_GE(rec.lower, lower);
    EXPECT_LE(rec.upper, upper);
    EXPECT_LE(rec.lower, rec.upper);
    if (rec.lower > lower) {
      EXPECT_TRUE((rec.model == "reduction" && rec.outcome == "empty") ||
                  (rec.model == "relaxed" && rec.outcome == "infeasible"))
          << rec.model << " " << rec.outcome;
      EXPECT_EQ(rec.lower, rec.R);
    }
    if (rec.upper < upper) {
      EXPECT_EQ(rec.model, "restricted");
      EXPECT_EQ(rec.outcome, "feasible");
      EXPECT_EQ(rec.upper, rec.R);
    }
    lower = rec.lower;
    upper = rec.upper;
  }
  EXPECT_EQ(run.lower, lower);
  EXPECT_EQ(run.upper, upper);
  EXPECT_LE(run.trials, bisection_budget(0.01, run.initial_upper, run.initial_lower) +
                            run.perturbations);
}

TEST(Budget, Examples) {
  EXPECT_EQ(bisection_budget(0.5, 2.0, 1.0), 2);
  EXPECT_EQ(bisection_budget(0.01, 15.0, 9.0), 8);
  EXPECT_EQ(bisection_budget(0.999, 15.0, 9.0), 1);
  EXPECT_EQ(bisection_budget(0.01, 7.0, 7.0), 1);
  EXPECT_THROW(bisection_budget(0.0, 2.0, 1.0), ConfigError);
}

TEST(DefaultDelta, CappedByTheSmallestCircle) {
  EXPECT_NEAR(default_delta0(1.0, 15.0, 9.0), 0.5 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(default_delta0(1.0, 9.4, 9.0), 0.05, 1e-15);
}

TEST(Run, SingleCircleIsImmediate) {
  const auto r = run(Instance({2.5}, CircleContainer{}));
  EXPECT_EQ(r.status, RunStatus::kEpsOptimal);
  EXPECT_EQ(r.lower, 2.5);
  EXPECT_EQ(r.upper, 2.5);
  EXPECT_TRUE(r.log.empty());
  ASSERT_TRUE(r.incumbent);
}

TEST(Run, TwoCirclesConvergeToTheirSum) {
  const Instance inst({3.0, 4.0}, CircleContainer{});
  const auto r = run(inst);
  EXPECT_EQ(r.status, RunStatus::kEpsOptimal);
  EXPECT_GE(r.upper, 7.0);
  EXPECT_LE(r.upper, 7.07);
  ASSERT_TRUE(r.incumbent);
  EXPECT_TRUE(verify_placement(inst, *r.incumbent, 0.0).feasible);
  check_log(r);
}

TEST(Run, RejectsBadEpsilon) {
  const Instance inst({1.0, 1.0}, CircleContainer{});
  DriverOptions o;
  o.epsilon = 0.0;
  EXPECT_THROW(run(inst, o), ConfigError);
  o.epsilon = 1.0;
  EXPECT_THROW(run(inst, o), ConfigError);
}

TEST(Run, BisectionWorksWithoutHelp) {
  // Weak seeds force real bisection steps.
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.6, 1.0);
  for (int t = 0; t < 6; ++t) {
    const Instance inst({u(rng), u(rng), u(rng)}, CircleContainer{});
    DriverOptions o;
    o.epsilon = 0.02;
    o.time_limit = 20.0;
    o.bounds.use_lb3 = false;
    o.bounds.use_lb4 = false;
    const auto r = run(inst, o);
    EXPECT_NE(r.status, RunStatus::kRefinementCap);
    EXPECT_LE(r.lower, r.upper);
    ASSERT_TRUE(r.incumbent);
    EXPECT_TRUE(verify_placement(inst, *r.incumbent, 0.0).feasible);
    EXPECT_LE(r.incumbent->container_size, r.upper);
    if (r.status == RunStatus::kEpsOptimal) EXPECT_LE(r.gap, o.epsilon);
    double lower = r.initial_lower;
    double upper = r.initial_upper;
    for (const auto& rec : r.log) {
      EXPECT_GE(rec.lower, lower);
      EXPECT_LE(rec.upper, upper);
      lower = rec.lower;
      upper = rec.upper;
    }
    EXPECT_LE(r.trials, bisection_budget(o.epsilon, r.initial_upper, r.initial_lower) +
                            r.perturbations);
  }
}

TEST(Run, TimeLimitKeepsValidBounds) {
  const Instance inst(std::vector<double>(7, 1.0), CircleContainer{});
  DriverOptions o;
  o.time_limit = 1.0;
  const auto r = run(inst, o);
  EXPECT_EQ(r.status, RunStatus::kTimeLimit);
  EXPECT_LE(r.lower, 3.0);
  EXPECT_GE(r.upper, 3.0);
  EXPECT_LT(r.seconds, 5.0);
}

TEST(Run, EventsMirrorTheLog) {
  const Instance inst({1.0, 0.9, 0.8}, CircleContainer{});
  std::vector<IterationRecord> seen;
  DriverOptions o;
  o.bounds.use_lb3 = false;
  o.bounds.use_lb4 = false;
  o.time_limit = 20.0;
  o.on_event = [&](const IterationRecord& rec) { seen.push_back(rec); };
  const auto r = run(inst, o);
  ASSERT_EQ(seen.size(), r.log.size());
  for (std::size_t k = 0; k < seen.size(); ++k) EXPECT_EQ(seen[k].R, r.log[k].R);
}

TEST(Run, StripContainer) {
  const Instance inst({1.0, 1.0, 1.0}, StripContainer{2.0});
  DriverOptions o;
  o.time_limit = 30.0;
  const auto r = run(inst, o);
  EXPECT_LE(r.lower, 6.0 + 1e-9);
  EXPECT_GE(r.upper, 6.0 - 1e-9);
  ASSERT_TRUE(r.incumbent);
  EXPECT_TRUE(verify_placement(inst, *r.incumbent, 0.0).feasible);
}

}  // namespace
}  // namespace dcpack
