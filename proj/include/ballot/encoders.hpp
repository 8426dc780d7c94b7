#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ballot/election.hpp"
#include "ballot/ilp_model.hpp"

namespace ballot {

using BitMatrix = std::vector<std::vector<int>>;

/// (m-1) x n; entry (i, j) is 1 iff voter j prefers c1 to c_{i+2}
/// (0-based row i stands for rival i+2).
BitMatrix dominance_row_matrix(const StrictProfile& profile);

/// One m x m matrix per voter; entry (i, k) is 1 iff the voter prefers c_{i+1} to c_{k+1}.
std::vector<BitMatrix> dominance_cube(const StrictProfile& profile);

/// One m x m matrix per voter; entry (i, k) is 1 iff the voter ranks c_{i+1}
/// at position k+1 or better.
std::vector<BitMatrix> bucklin_position_cube(const StrictProfile& profile);

/// Row-per-line text with entries separated by single spaces.
std::string format_matrix(const BitMatrix& a);

enum class ProblemKind { Range, Condorcet, Plurality, Maximin, BucklinVoters, BucklinCandidates };

std::string_view to_string(ProblemKind k);
ProblemKind problem_kind(Rule rule, Action action);

enum class VarRole { Decision, IndicatorZ, IndicatorY, Threshold, Alternative };

struct EncodedProblem {
  ProblemKind kind = ProblemKind::Range;
  Mode mode = Mode::Constructive;
  std::size_t candidates = 0;
  std::size_t voters = 0;
  LinearProgram model;
  /// x variable per voter (voter deletion) or per candidate (candidate deletion).
  std::vector<std::size_t> decision_vars;
  /// Role of every model variable, indexed like model.variables().
  std::vector<VarRole> roles;
  /// Constraints that enforce the target's win; replaced by make_destructive.
  std::vector<std::size_t> winner_rows;

  Action action() const;
};

EncodedProblem encode_range(const ScoreMatrix& scores);
EncodedProblem encode_condorcet(const StrictProfile& profile);
EncodedProblem encode_plurality(const StrictProfile& profile);
EncodedProblem encode_maximin(const StrictProfile& profile);
EncodedProblem encode_bucklin_voters(const StrictProfile& profile);
EncodedProblem encode_bucklin_candidates(const StrictProfile& profile);

/// Big-M of the Bucklin depth-order rows: max(n, m + 1).
std::int64_t bucklin_depth_m(std::size_t candidates, std::size_t voters);

/// Constructive model for the (already target-normalized) election.
EncodedProblem encode(Rule rule, Action action, const Election& election);

/// Swaps the winner rows for a 1-fold alternative block that asks for some
/// rival to tie or beat c1. Throws std::invalid_argument when the problem is
/// already destructive or has no winner rows.
EncodedProblem make_destructive(const EncodedProblem& problem, const Election& election);

/// Constructive or destructive model, as selected by spec.mode.
EncodedProblem encode_control(const Election& election, const ControlSpec& spec);

/// Score matrix used by range control for any payload.
ScoreMatrix range_scores(const Election& election);

}  // namespace ballot
