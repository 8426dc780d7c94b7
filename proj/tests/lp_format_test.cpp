#include <gtest/gtest.h>

#include <random>

#include "ballot/encoders.hpp"
#include "ballot/lp_format.hpp"
#include "fixtures.hpp"

namespace ballot {
namespace {

using testing::uniform;

LinearProgram one_binary() {
  LinearProgram m;
  const auto x = m.add_binary("x");
  m.add_constraint({{{x, 1}}, Sense::LessEqual, 1, "cap"});
  m.set_objective(ObjectiveSense::Maximize, {{x, 1}});
  return m;
}

TEST(ExportLp, CanonicalText) {
  EXPECT_EQ(export_lp(one_binary()),
            "\\ ballot model\n"
            "Maximize\n"
            " obj: x\n"
            "Subject To\n"
            "\\@tag cap\n"
            " r1: x <= 1\n"
            "Bounds\n"
            "Binaries\n"
            " x\n"
            "End\n");
}

TEST(ExportLp, BoundsAndGenerals) {
  LinearProgram m;
  const auto b = m.add_variable("b", VarKind::Integer, 1, 4);
  const auto c = m.add_variable("c", VarKind::Continuous, 2, 2);
  m.add_constraint({{{b, 2}, {c, -1}}, Sense::GreaterEqual, Rational{1, 2}, ""});
  m.set_objective(ObjectiveSense::Minimize, {{b, 1}});
  const std::string text = export_lp(m);
  EXPECT_NE(text.find("Minimize\n obj: b + 0 c\n"), std::string::npos);
  EXPECT_NE(text.find(" r1: 2 b - c >= 0.5\n"), std::string::npos);
  EXPECT_NE(text.find(" 1 <= b <= 4\n"), std::string::npos);
  EXPECT_NE(text.find(" c = 2\n"), std::string::npos);
  EXPECT_NE(text.find("Generals\n b\n"), std::string::npos);
  EXPECT_EQ(parse_lp(text), m);
}

TEST(ExportLp, RejectsNameCollisions) {
  LinearProgram m;
  m.add_binary("a b");
  m.add_binary("a_b");
  EXPECT_THROW(export_lp(m), FormatError);
  EXPECT_THROW(export_mps(m), FormatError);
}

TEST(ExportMps, FixedFields) {
  EXPECT_EQ(export_mps(one_binary()),
            "NAME          ballot\n"
            "OBJSENSE\n"
            "    MAX\n"
            "ROWS\n"
            " N  obj\n"
            " L  r1\n"
            "COLUMNS\n"
            "    MARKER0   'MARKER'  'INTORG'\n"
            "    x         obj       1\n"
            "    x         r1        1\n"
            "    MARKER1   'MARKER'  'INTEND'\n"
            "RHS\n"
            "    RHS       r1        1\n"
            "BOUNDS\n"
            " BV BND       x\n"
            "ENDATA\n");
}

TEST(ExportMps, MaximinThresholdGetsIntegerBounds) {
  const EncodedProblem p = encode_maximin(*testing::worked_election().strict());
  const std::string mps = export_mps(p.model);
  EXPECT_NE(mps.find(" LI BND       b         1\n"), std::string::npos);
  EXPECT_NE(mps.find(" UI BND       b         3\n"), std::string::npos);
}

TEST(ParseLp, RejectsMalformedInput) {
  EXPECT_THROW(parse_lp("Maximize\n obj: x\nSubject To\n r1: x <= 1\nEnd\n"), FormatError);
  EXPECT_THROW(parse_lp("Maximize\n obj: x\nSubject To\n r1: x <= 1\nBounds\n x >= 0\nEnd\n"), FormatError);
  EXPECT_THROW(parse_lp("Maximize\n obj: x\nSubject To\n r1: x ! 1\nBinaries\n x\nEnd\n"), FormatError);
  EXPECT_NO_THROW(parse_lp("Maximize\n obj: x\nSubject To\n r1: x <= 1\nBinaries\n x\nEnd\n"));
}

TEST(ParseLp, WrappedLongRows) {
  LinearProgram m;
  std::vector<Term> t;
  for (int k = 0; k < 120; ++k) t.push_back({m.add_binary("variable_" + std::to_string(k)), k % 2 ? 3 : -5});
  m.add_constraint({t, Sense::Equal, 0, "long"});
  m.set_objective(ObjectiveSense::Maximize, t);
  const std::string text = export_lp(m);
  for (std::size_t start = 0, end; (end = text.find('\n', start)) != std::string::npos; start = end + 1) {
    EXPECT_LE(end - start, 200u);
  }
  EXPECT_EQ(parse_lp(text), m);
}

EncodedProblem random_problem(std::mt19937_64& rng, int kind) {
  const std::size_t m = uniform(rng, 2, 5);
  const std::size_t n = uniform(rng, 1, 6);
  const Election e = kind == 0 ? testing::random_score_election(rng, m, n, 4) : testing::random_strict_election(rng, m, n);
  static const std::pair<Rule, Action> pairs[] = {{Rule::Range, Action::DeleteVoters},
                                                  {Rule::Condorcet, Action::DeleteVoters},
                                                  {Rule::Plurality, Action::DeleteCandidates},
                                                  {Rule::Maximin, Action::DeleteVoters},
                                                  {Rule::Bucklin, Action::DeleteVoters},
                                                  {Rule::Bucklin, Action::DeleteCandidates}};
  const auto [rule, action] = pairs[kind];
  const Mode mode = rng() % 2 ? Mode::Destructive : Mode::Constructive;
  return encode_control(e, {rule, action, mode, CandidateId{1}});
}

TEST(LpRoundTrip, EncoderModelsSurviveExactly) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    const EncodedProblem p = random_problem(rng, trial % 6);
    const LinearProgram back = parse_lp(export_lp(p.model));
    ASSERT_EQ(back, p.model) << to_string(p.kind) << " " << to_string(p.mode);
  }
}

}  // namespace
}  // namespace ballot
