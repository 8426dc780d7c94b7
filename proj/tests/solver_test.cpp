#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "ballot/control.hpp"
#include "ballot/encoders.hpp"
#include "ballot/solver.hpp"
#include "checks.hpp"
#include "fixtures.hpp"

namespace ballot {
namespace {

using testing::uniform;

TEST(LpRelaxation, Examples) {
  LinearProgram box;
  const auto x = box.add_variable("x", VarKind::Continuous, 0, 1);
  box.set_objective(ObjectiveSense::Maximize, {{x, 1}});
  const LpRelaxation a = solve_lp_relaxation(box);
  ASSERT_EQ(a.status, LpRelaxationStatus::Optimal);
  EXPECT_NEAR(a.value, 1.0, 1e-9);

  LinearProgram bad;
  const auto y = bad.add_variable("y", VarKind::Continuous, 0, 5);
  bad.add_constraint({{{y, 1}}, Sense::GreaterEqual, 1, ""});
  bad.add_constraint({{{y, 1}}, Sense::LessEqual, 0, ""});
  EXPECT_EQ(solve_lp_relaxation(bad).status, LpRelaxationStatus::Infeasible);
}

TEST(LpRelaxation, RangeRelaxationBoundsTheIntegerOptimum) {
  const Election e(testing::default_names(2), ScoreMatrix(2, 2, {1, 0, 0, 1}));
  const EncodedProblem p = encode(Rule::Range, Action::DeleteVoters, e);
  const LpRelaxation lp = solve_lp_relaxation(p.model);
  ASSERT_EQ(lp.status, LpRelaxationStatus::Optimal);
  // Vertices of {x1 - x2 >= 1, 0 <= x <= 1}: only (1, 0) is feasible.
  EXPECT_NEAR(lp.value, 1.0, 1e-9);
  EXPECT_GE(lp.value + 1e-9, 1.0);
}

TEST(LpRelaxation, FixingsAndMinimize) {
  LinearProgram m;
  const auto x = m.add_variable("x", VarKind::Continuous, 0, 4);
  const auto y = m.add_variable("y", VarKind::Continuous, 0, 4);
  m.add_constraint({{{x, 1}, {y, 1}}, Sense::GreaterEqual, 3, ""});
  m.set_objective(ObjectiveSense::Minimize, {{x, 2}, {y, 1}});
  const LpRelaxation free = solve_lp_relaxation(m);
  EXPECT_NEAR(free.value, 3.0, 1e-9);
  const LpRelaxation fixed = solve_lp_relaxation(m, {{y, 1.0}});
  EXPECT_NEAR(fixed.value, 5.0, 1e-9);
  EXPECT_NEAR(fixed.x[x], 2.0, 1e-9);
}

TEST(Solve, IntegralRelaxationNeedsNoBranching) {
  LinearProgram m;
  const auto a = m.add_binary("a");
  const auto b = m.add_binary("b");
  m.add_constraint({{{a, 1}, {b, 1}}, Sense::LessEqual, 2, ""});
  m.set_objective(ObjectiveSense::Maximize, {{a, 1}, {b, 1}});
  const SolveResult r = solve(m);
  EXPECT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.branchings, 0u);
  EXPECT_EQ(r.objective, Rational{2});
}

TEST(Solve, WorkedCondorcetModel) {
  const SolveResult r = solve(encode_condorcet(*testing::worked_election().strict()).model);
  EXPECT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.objective, Rational{3});
}

TEST(Solve, HopelessRangeIsInfeasible) {
  const Election e(testing::default_names(2), ScoreMatrix(2, 3, {0, 0, 1, 1, 1, 2}));
  const SolveResult r = solve(encode(Rule::Range, Action::DeleteVoters, e).model);
  EXPECT_EQ(r.status, SolveStatus::Infeasible);
  EXPECT_FALSE(r.incumbent.has_value());
}

TEST(Solve, GeneralIntegersAndMinimize) {
  LinearProgram m;
  const auto x = m.add_variable("x", VarKind::Integer, 0, 10);
  const auto y = m.add_variable("y", VarKind::Integer, 0, 10);
  m.add_constraint({{{x, 2}, {y, 3}}, Sense::GreaterEqual, 7, ""});
  m.add_constraint({{{x, 1}, {y, -1}}, Sense::LessEqual, 1, ""});
  m.set_objective(ObjectiveSense::Minimize, {{x, 3}, {y, 4}});
  const SolveResult r = solve(m);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  // Enumerated by hand over the 11x11 grid: (2,1) costs 10 and nothing cheaper is feasible.
  EXPECT_EQ(r.objective, Rational{10});
}

TEST(Solve, LimitsAreReported) {
  std::mt19937_64 rng(5);
  const EncodedProblem p = encode_bucklin_candidates(testing::random_profile(rng, 7, 5));
  SolverConfig cfg;
  cfg.node_limit = 1;
  const SolveResult r = solve(p.model, cfg);
  EXPECT_TRUE(r.status == SolveStatus::NodeLimit || r.status == SolveStatus::Optimal);
  EXPECT_LE(r.nodes_explored, 1u);
  SolverConfig bad;
  bad.feasibility_tol = 0;
  EXPECT_THROW(solve(p.model, bad), std::invalid_argument);
  bad = {};
  bad.time_limit_seconds = -1;
  EXPECT_THROW(solve(p.model, bad), std::invalid_argument);
}

using testing::enumerate;
using testing::random_ip;
using testing::RandomIp;

TEST(Solve, MatchesEnumerationOnRandomBinaryPrograms) {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 300; ++trial) {
    const RandomIp ip = random_ip(rng);
    const std::optional<std::int64_t> expected = enumerate(ip);
    SolverConfig cfg;
    cfg.record_trace = true;
    const SolveResult r = solve(ip.model, cfg);
    ASSERT_EQ(r.status == SolveStatus::Optimal, expected.has_value()) << "trial " << trial;
    if (!expected) continue;
    EXPECT_EQ(r.objective, Rational{*expected}) << "trial " << trial;
    ASSERT_TRUE(r.incumbent.has_value());
    EXPECT_TRUE(check_assignment(ip.model, *r.incumbent, Rational{1, 1000000}, Rational{1, 100000}).feasible());
    EXPECT_EQ(objective_value(ip.model, *r.incumbent), Rational{*expected});
    EXPECT_LE(std::abs(r.bound - static_cast<double>(*expected)), 1.0);

    // Trace bounds never loosen and incumbents never get worse (internal max sense).
    const double sign = ip.maximize ? 1.0 : -1.0;
    double last_bound = std::numeric_limits<double>::infinity();
    double last_inc = -std::numeric_limits<double>::infinity();
    for (const TracePoint& p : r.trace) {
      EXPECT_LE(sign * p.bound, last_bound + 1e-9);
      last_bound = sign * p.bound;
      if (p.incumbent) {
        EXPECT_GE(sign * *p.incumbent, last_inc - 1e-9);
        last_inc = sign * *p.incumbent;
      }
    }
  }
}

TEST(Solve, LpFreeModeMatchesEnumeration) {
  std::mt19937_64 rng(92);
  for (int trial = 0; trial < 100; ++trial) {
    const RandomIp ip = random_ip(rng);
    SolverConfig cfg;
    cfg.dense_limit = 0;
    const SolveResult r = solve(ip.model, cfg);
    const auto expected = enumerate(ip);
    ASSERT_EQ(r.status == SolveStatus::Optimal, expected.has_value());
    if (expected) EXPECT_EQ(r.objective, Rational{*expected});
    EXPECT_EQ(r.lp_solves, 0u);
  }
}

TEST(Solve, Deterministic) {
  std::mt19937_64 rng(93);
  for (int trial = 0; trial < 30; ++trial) {
    const RandomIp ip = random_ip(rng);
    SolverConfig cfg;
    cfg.record_trace = true;
    const SolveResult a = solve(ip.model, cfg);
    const SolveResult b = solve(ip.model, cfg);
    EXPECT_TRUE(a.same_outcome(b));
  }
}

}  // namespace
}  // namespace ballot
