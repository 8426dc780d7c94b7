#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ballot/election.hpp"

namespace ballot {

/// Winner under strict dominance, plus the per-candidate tally it was read from.
///
/// `tally` holds total scores (range), rivals beaten pairwise (condorcet),
/// first-place counts (plurality), minimum advantages (maximin) or Bucklin
/// depths (bucklin). `higher_wins` is false only for Bucklin. `pairwise`
/// is filled for condorcet and maximin: pairwise[a][b] = voters preferring a to b.
struct WinnerOutcome {
  std::optional<CandidateId> winner;
  std::vector<std::int64_t> tally;
  bool higher_wins = true;
  std::vector<std::vector<std::int64_t>> pairwise;
};

WinnerOutcome range_winner(const ScoreMatrix& scores);

std::int64_t pairwise_advantage(const StrictProfile& profile, CandidateId a, CandidateId b);
std::vector<std::vector<std::int64_t>> pairwise_matrix(const StrictProfile& profile);

WinnerOutcome condorcet_winner(const StrictProfile& profile);
WinnerOutcome plurality_winner(const StrictProfile& profile);

std::int64_t maximin_phi(const StrictProfile& profile, CandidateId c);
WinnerOutcome maximin_winner(const StrictProfile& profile);

/// Candidates voter v ranks within the top k positions, in ranking order.
std::vector<CandidateId> bucklin_rank_set(const StrictProfile& profile, VoterId v, int k);
/// Least k such that a strict majority ranks c in its top k; m+1 if none.
int bucklin_psi(const StrictProfile& profile, CandidateId c);
WinnerOutcome bucklin_winner(const StrictProfile& profile);

/// Dispatches on rule. Range needs `scores`; the others need `strict`.
WinnerOutcome winner_of(Rule rule, const Election& election);

/// Rule winner after keeping only the listed voter (or candidate) positions,
/// reported as a candidate of the original election. An empty voter set is
/// allowed; range scores are derived before any restriction.
std::optional<CandidateId> restricted_winner(Rule rule, const Election& election, Action action,
                                             const std::vector<std::size_t>& kept_pos);

}  // namespace ballot
