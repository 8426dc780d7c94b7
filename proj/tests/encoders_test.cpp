#include <gtest/gtest.h>

#include <random>

#include "ballot/control.hpp"
#include "ballot/encoders.hpp"
#include "ballot/oracle.hpp"
#include "checks.hpp"
#include "fixtures.hpp"

namespace ballot {
namespace {

using testing::ranking;
using testing::uniform;
using testing::worked_election;
using testing::worked_profile;

std::string joined(const std::vector<BitMatrix>& cube) {
  std::string out;
  for (const BitMatrix& a : cube) out += format_matrix(a) + "\n";
  return out;
}

TEST(Matrices, DominanceRowsOfWorkedProfile) {
  EXPECT_EQ(format_matrix(dominance_row_matrix(worked_profile())), "1 1 0\n1 1 0\n1 1 0\n");
  EXPECT_THROW(dominance_row_matrix(StrictProfile(1, {ranking({1})})), std::invalid_argument);
}

TEST(Matrices, DominanceCubeOfWorkedProfile) {
  EXPECT_EQ(joined(dominance_cube(worked_profile())),
            "0 1 1 1\n0 0 1 1\n0 0 0 1\n0 0 0 0\n\n"
            "0 1 1 1\n0 0 0 1\n0 1 0 1\n0 0 0 0\n\n"
            "0 0 0 0\n1 0 0 0\n1 1 0 0\n1 1 1 0\n\n");
}

TEST(Matrices, PositionCubeOfWorkedProfile) {
  EXPECT_EQ(joined(bucklin_position_cube(worked_profile())),
            "1 1 1 1\n0 1 1 1\n0 0 1 1\n0 0 0 1\n\n"
            "1 1 1 1\n0 0 1 1\n0 1 1 1\n0 0 0 1\n\n"
            "0 0 0 1\n0 0 1 1\n0 1 1 1\n1 1 1 1\n\n");
}

TEST(Matrices, StructuralProperties) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = uniform(rng, 2, 7);
    const StrictProfile p = testing::random_profile(rng, m, uniform(rng, 1, 5));
    const auto dom = dominance_cube(p);
    const auto pos = bucklin_position_cube(p);
    const auto rows = dominance_row_matrix(p);
    for (std::size_t j = 0; j < p.voter_count(); ++j) {
      std::vector<int> row_sums;
      for (std::size_t i = 0; i < m; ++i) {
        EXPECT_EQ(dom[j][i][i], 0);
        int sum = 0;
        for (std::size_t k = 0; k < m; ++k) {
          if (i != k) EXPECT_EQ(dom[j][i][k] + dom[j][k][i], 1);
          sum += dom[j][i][k];
        }
        row_sums.push_back(sum);
        const int rank = p.rank_of(j, CandidateId::from_pos(i));
        int ones = 0;
        for (std::size_t k = 0; k < m; ++k) ones += pos[j][i][k];
        EXPECT_EQ(ones, static_cast<int>(m) - rank + 1);
        EXPECT_EQ(pos[j][i][m - 1], 1);
        if (i > 0) EXPECT_EQ(rows[i - 1][j], dom[j][0][i]);
      }
      std::sort(row_sums.begin(), row_sums.end());
      for (std::size_t k = 0; k < m; ++k) EXPECT_EQ(row_sums[k], static_cast<int>(k));
    }
  }
}

std::size_t count_tag(const LinearProgram& m, const std::string& tag) {
  std::size_t k = 0;
  for (const auto& c : m.constraints()) k += c.tag == tag ? 1 : 0;
  return k;
}

TEST(Encoders, ModelShapes) {
  const StrictProfile p = worked_profile();
  const EncodedProblem ce = encode_condorcet(p);
  EXPECT_EQ(ce.model.variable_count(), 3u);
  EXPECT_EQ(count_tag(ce.model, "CE:pairwise-majority"), 3u);
  const EncodedProblem pe = encode_plurality(p);
  EXPECT_EQ(pe.model.variable_count(), 4u + 3u * 4u);
  EXPECT_EQ(pe.decision_vars.size(), 4u);
  const EncodedProblem mme = encode_maximin(p);
  EXPECT_EQ(mme.model.variable_count(), 3u + 3u * 3u + 1u);
  const Variable& b = mme.model.variables()[mme.model.index_of("b")];
  EXPECT_EQ(b.kind, VarKind::Integer);
  EXPECT_EQ(b.lower, Rational{1});
  EXPECT_EQ(b.upper, Rational{3});
  const EncodedProblem bev = encode_bucklin_voters(p);
  EXPECT_EQ(bev.model.variable_count(), 3u + 16u);
  const EncodedProblem bec = encode_bucklin_candidates(p);
  EXPECT_EQ(bec.model.variable_count(), 4u + 3u * 16u + 16u);
  EXPECT_EQ(bec.decision_vars.size(), 4u);
  for (const EncodedProblem* e : {&ce, &pe, &mme, &bev, &bec}) {
    for (const auto& c : e->model.constraints()) {
      for (const Term& t : c.terms) EXPECT_TRUE(is_integral(t.coef));
      EXPECT_TRUE(is_integral(c.rhs));
    }
  }
}

TEST(Encoders, ProblemKindRejectsUnsupportedPairs) {
  EXPECT_THROW(problem_kind(Rule::Range, Action::DeleteCandidates), UnsupportedControl);
  EXPECT_EQ(problem_kind(Rule::Bucklin, Action::DeleteCandidates), ProblemKind::BucklinCandidates);
  EXPECT_EQ(to_string(ProblemKind::Maximin), "MME");
}

std::int64_t oracle_objective(const Election& e, Rule rule, Action action, Mode mode = Mode::Constructive) {
  const ControlSolution s = brute_force_control(e, {rule, action, mode, CandidateId{1}});
  return s.status == ControlStatus::Optimal ? s.objective : -1;
}

std::int64_t solved_objective(const Election& e, Rule rule, Action action, Mode mode = Mode::Constructive) {
  const ControlRun r = solve_control(e, {rule, action, mode, CandidateId{1}});
  return r.solution.status == ControlStatus::Optimal ? r.solution.objective : -1;
}

// Each answer is first computed by the oracle, then compared to the frozen value.
TEST(Encoders, WorkedProfileAnswers) {
  const Election e = worked_election();
  const struct {
    Rule rule;
    Action action;
    std::int64_t expected;
  } cases[] = {{Rule::Condorcet, Action::DeleteVoters, 3},
               {Rule::Plurality, Action::DeleteCandidates, 4},
               {Rule::Maximin, Action::DeleteVoters, 3},
               {Rule::Bucklin, Action::DeleteVoters, 3},
               {Rule::Bucklin, Action::DeleteCandidates, 4}};
  for (const auto& c : cases) {
    EXPECT_EQ(oracle_objective(e, c.rule, c.action), c.expected) << to_string(c.rule);
    EXPECT_EQ(solved_objective(e, c.rule, c.action), c.expected) << to_string(c.rule);
  }
}

Election strict(std::size_t m, std::vector<Ranking> r) {
  return Election(testing::default_names(m), StrictProfile(m, std::move(r)));
}

Election scores(std::size_t m, std::size_t n, std::vector<std::int64_t> s) {
  return Election(testing::default_names(m), ScoreMatrix(m, n, std::move(s)));
}

TEST(Encoders, RangeExamples) {
  const Election one = scores(2, 1, {1, 0});
  EXPECT_EQ(solved_objective(one, Rule::Range, Action::DeleteVoters), 1);
  const Election split = scores(2, 2, {1, 0, 0, 1});
  EXPECT_EQ(oracle_objective(split, Rule::Range, Action::DeleteVoters), 1);
  EXPECT_EQ(solved_objective(split, Rule::Range, Action::DeleteVoters), 1);
  const Election hopeless = scores(2, 3, {0, 1, 2, 1, 2, 3});
  EXPECT_EQ(solved_objective(hopeless, Rule::Range, Action::DeleteVoters), -1);
}

TEST(Encoders, CondorcetExamples) {
  EXPECT_EQ(solved_objective(strict(3, {ranking({2, 3, 1}), ranking({3, 2, 1})}), Rule::Condorcet,
                             Action::DeleteVoters),
            -1);
  const Election cyc = strict(3, {ranking({1, 2, 3}), ranking({2, 3, 1}), ranking({3, 1, 2})});
  // Any two voters of the cycle leave c1 tied with someone, so only one voter can stay.
  EXPECT_EQ(oracle_objective(cyc, Rule::Condorcet, Action::DeleteVoters), 1);
  EXPECT_EQ(solved_objective(cyc, Rule::Condorcet, Action::DeleteVoters), 1);
  const ControlRun r = solve_control(cyc, {Rule::Condorcet, Action::DeleteVoters, Mode::Constructive, CandidateId{1}});
  EXPECT_EQ(r.solution.kept, std::vector<int>{1});
}

TEST(Encoders, PluralityExamples) {
  const Election second = strict(3, {ranking({2, 1, 3}), ranking({2, 1, 3}), ranking({3, 2, 1})});
  EXPECT_EQ(oracle_objective(second, Rule::Plurality, Action::DeleteCandidates), 2);
  EXPECT_EQ(solved_objective(second, Rule::Plurality, Action::DeleteCandidates), 2);
  const Election single = strict(1, {ranking({1})});
  EXPECT_EQ(solved_objective(single, Rule::Plurality, Action::DeleteCandidates), 1);
}

TEST(Encoders, MaximinExamples) {
  EXPECT_EQ(solved_objective(strict(3, {ranking({1, 3, 2})}), Rule::Maximin, Action::DeleteVoters), 1);
  const Election bottom = strict(3, {ranking({2, 3, 1}), ranking({3, 2, 1}), ranking({2, 3, 1})});
  EXPECT_EQ(oracle_objective(bottom, Rule::Maximin, Action::DeleteVoters), -1);
  EXPECT_EQ(solved_objective(bottom, Rule::Maximin, Action::DeleteVoters), -1);
}

TEST(Encoders, BucklinExamples) {
  EXPECT_EQ(solved_objective(strict(3, {ranking({1, 3, 2})}), Rule::Bucklin, Action::DeleteVoters), 1);
  EXPECT_EQ(solved_objective(strict(3, {ranking({2, 1, 3}), ranking({3, 2, 1})}), Rule::Bucklin,
                             Action::DeleteVoters),
            -1);
  EXPECT_EQ(solved_objective(strict(1, {ranking({1})}), Rule::Bucklin, Action::DeleteCandidates), 1);
  const Election top2 = strict(2, {ranking({2, 1}), ranking({2, 1}), ranking({2, 1})});
  EXPECT_EQ(oracle_objective(top2, Rule::Bucklin, Action::DeleteCandidates), 1);
  EXPECT_EQ(solved_objective(top2, Rule::Bucklin, Action::DeleteCandidates), 1);
}

TEST(Destructive, Examples) {
  const Election beaten = scores(2, 2, {0, 1, 1, 1});
  EXPECT_EQ(solved_objective(beaten, Rule::Range, Action::DeleteVoters, Mode::Destructive), 2);
  const Election narrow = scores(2, 2, {1, 1, 1, 0});
  EXPECT_EQ(oracle_objective(narrow, Rule::Range, Action::DeleteVoters, Mode::Destructive), 1);
  EXPECT_EQ(solved_objective(narrow, Rule::Range, Action::DeleteVoters, Mode::Destructive), 1);
  const Election cyc = strict(3, {ranking({1, 2, 3}), ranking({2, 3, 1}), ranking({3, 1, 2})});
  EXPECT_EQ(oracle_objective(cyc, Rule::Condorcet, Action::DeleteVoters, Mode::Destructive), 3);
  EXPECT_EQ(solved_objective(cyc, Rule::Condorcet, Action::DeleteVoters, Mode::Destructive), 3);
}

TEST(Destructive, ReplacesWinnerRowsAndRejectsTwice) {
  const Election e = worked_election();
  for (auto [rule, action] : {std::pair{Rule::Range, Action::DeleteVoters}, {Rule::Condorcet, Action::DeleteVoters},
                              {Rule::Plurality, Action::DeleteCandidates}, {Rule::Maximin, Action::DeleteVoters},
                              {Rule::Bucklin, Action::DeleteVoters}, {Rule::Bucklin, Action::DeleteCandidates}}) {
    const EncodedProblem c = encode(rule, action, e);
    const EncodedProblem d = make_destructive(c, e);
    EXPECT_EQ(d.mode, Mode::Destructive);
    const std::string prefix(to_string(c.kind));
    EXPECT_EQ(count_tag(d.model, prefix + ":some-rival"), c.kind == ProblemKind::Maximin ? 2u : 1u) << prefix;
    for (std::size_t i : c.winner_rows) EXPECT_EQ(count_tag(d.model, c.model.constraints()[i].tag), 0u) << prefix;
    EXPECT_EQ(d.roles.size(), d.model.variable_count());
    EXPECT_THROW(make_destructive(d, e), std::invalid_argument);
  }
}

TEST(Destructive, RangeUsesScoreBoundAsBigM) {
  const Election e = scores(3, 2, {4, 1, 2, 3, 0, 5});
  const EncodedProblem d = make_destructive(encode(Rule::Range, Action::DeleteVoters, e), e);
  const std::size_t y = d.model.index_of("d_1");
  for (const auto& c : d.model.constraints()) {
    if (c.tag != "RE:rival-not-behind") continue;
    EXPECT_EQ(c.rhs, Rational{10});
    for (const Term& t : c.terms) {
      if (t.var == y) EXPECT_EQ(t.coef, Rational{10});
    }
  }
}

TEST(Destructive, SingleCandidateCannotBeDethroned) {
  const Election e = strict(1, {ranking({1}), ranking({1})});
  for (auto [rule, action] : {std::pair{Rule::Condorcet, Action::DeleteVoters}, {Rule::Plurality, Action::DeleteCandidates},
                              {Rule::Bucklin, Action::DeleteCandidates}}) {
    EXPECT_EQ(oracle_objective(e, rule, action, Mode::Destructive), -1);
    EXPECT_EQ(solved_objective(e, rule, action, Mode::Destructive), -1);
  }
}

// --- constraint-form equivalence -------------------------------------------

constexpr int kVectors = 1000;

TEST(FormEquivalence, CondorcetCountingForm) {
  std::mt19937_64 rng(71);
  const testing::FormTally t = testing::condorcet_forms(rng, kVectors);
  EXPECT_GT(t.rows, 0u);
  EXPECT_EQ(t.disagreements, 0u);
}

TEST(FormEquivalence, BucklinVoterHalvedForms) {
  std::mt19937_64 rng(72);
  const testing::FormTally t = testing::bucklin_voter_forms(rng, kVectors);
  EXPECT_GT(t.rows, 0u);
  EXPECT_EQ(t.disagreements, 0u);
}

TEST(FormEquivalence, BucklinCandidateForms) {
  std::mt19937_64 rng(73);
  const testing::FormTally t = testing::bucklin_candidate_forms(rng, kVectors);
  EXPECT_GT(t.rows, 0u);
  EXPECT_EQ(t.disagreements, 0u);
}

// --- feasibility conditions -------------------------------------------------

using testing::with_dominated_target;
using testing::with_target_on_top;

TEST(Feasibility, TargetOnTopSuffices) {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = uniform(rng, 2, 5), n = uniform(rng, 1, 10);
    const Election e(testing::default_names(m), with_target_on_top(rng, m, n));
    for (Rule rule : {Rule::Range, Rule::Condorcet, Rule::Maximin, Rule::Bucklin}) {
      EXPECT_GE(solved_objective(e, rule, Action::DeleteVoters), 1) << to_string(rule);
    }
  }
}

TEST(Feasibility, CandidateDeletionAlwaysFeasible) {
  std::mt19937_64 rng(82);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = uniform(rng, 1, 6), n = uniform(rng, 1, 5);
    const Election e = testing::random_strict_election(rng, m, n);
    EXPECT_GE(solved_objective(e, Rule::Plurality, Action::DeleteCandidates), 1);
    EXPECT_GE(solved_objective(e, Rule::Bucklin, Action::DeleteCandidates), 1);
  }
}

TEST(Feasibility, DominatedTargetIsHopeless) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = uniform(rng, 2, 5), n = uniform(rng, 1, 10);
    const Election e(testing::default_names(m), with_dominated_target(rng, m, n));
    EXPECT_EQ(solved_objective(e, Rule::Condorcet, Action::DeleteVoters), -1);
    EXPECT_EQ(solved_objective(e, Rule::Bucklin, Action::DeleteVoters), -1);
  }
}

TEST(Feasibility, CandidateModelsKeepTheTarget) {
  std::mt19937_64 rng(84);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = uniform(rng, 2, 5), n = uniform(rng, 1, 4);
    const Election e = testing::random_strict_election(rng, m, n);
    for (Rule rule : {Rule::Plurality, Rule::Bucklin}) {
      for (Mode mode : {Mode::Constructive, Mode::Destructive}) {
        const EncodedProblem p = encode_control(e, {rule, Action::DeleteCandidates, mode, CandidateId{1}});
        const LpRelaxation lp = solve_lp_relaxation(p.model, {{p.decision_vars[0], 0.0}});
        EXPECT_EQ(lp.status, LpRelaxationStatus::Infeasible);
      }
    }
  }
}

TEST(Decode, ReadsKeptSetAndVerifies) {
  const Election e = worked_election();
  const ControlSpec ce{Rule::Condorcet, Action::DeleteVoters, Mode::Constructive, CandidateId{1}};
  const EncodedProblem p = encode_control(e, ce);
  Assignment all;
  all.values.assign(p.model.variable_count(), Rational{1});
  const ControlSolution s = decode(p, all, e, ce);
  EXPECT_TRUE(s.deleted.empty());
  EXPECT_EQ(s.kept, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(s.verification->winner, CandidateId{1});

  const ControlSpec pe{Rule::Plurality, Action::DeleteCandidates, Mode::Constructive, CandidateId{1}};
  const EncodedProblem q = encode_control(e, pe);
  Assignment only;
  only.values.assign(q.model.variable_count(), Rational{0});
  only.values[q.decision_vars[0]] = 1;
  const ControlSolution t = decode(q, only, e, pe);
  EXPECT_EQ(t.kept, std::vector<int>{1});
  EXPECT_EQ(t.objective, 1);
  EXPECT_EQ(t.verification->winner, CandidateId{1});

  Assignment last;
  last.values.assign(p.model.variable_count(), Rational{0});
  last.values[p.decision_vars[2]] = 1;
  EXPECT_THROW(decode(p, last, e, ce), VerificationError);
  EXPECT_FALSE(decode(p, last, e, ce, false).verification->consistent);
}

}  // namespace
}  // namespace ballot
