#include "ballot/rules.hpp"

#include <algorithm>
#include <limits>

#include "ballot/preflib.hpp"

namespace ballot {

namespace {

// Unique extremum of the tally, if any. m == 1 yields the sole candidate.
std::optional<CandidateId> unique_best(const std::vector<std::int64_t>& tally, bool higher_wins) {
  std::optional<std::size_t> best;
  bool tied = false;
  for (std::size_t i = 0; i < tally.size(); ++i) {
    if (!best) {
      best = i;
      continue;
    }
    const bool better = higher_wins ? tally[i] > tally[*best] : tally[i] < tally[*best];
    if (better) {
      best = i;
      tied = false;
    } else if (tally[i] == tally[*best]) {
      tied = true;
    }
  }
  if (!best || tied) return std::nullopt;
  return CandidateId::from_pos(*best);
}

}  // namespace

WinnerOutcome range_winner(const ScoreMatrix& scores) {
  WinnerOutcome out;
  out.tally.assign(scores.candidate_count(), 0);
  for (std::size_t i = 0; i < scores.candidate_count(); ++i) {
    for (std::size_t v = 0; v < scores.voter_count(); ++v) out.tally[i] += scores.at(CandidateId::from_pos(i), v);
  }
  out.winner = unique_best(out.tally, true);
  return out;
}

std::int64_t pairwise_advantage(const StrictProfile& profile, CandidateId a, CandidateId b) {
  if (a == b) throw std::invalid_argument("advantage of a candidate over itself is undefined");
  std::int64_t count = 0;
  for (std::size_t v = 0; v < profile.voter_count(); ++v) count += profile.prefers(v, a, b) ? 1 : 0;
  return count;
}

std::vector<std::vector<std::int64_t>> pairwise_matrix(const StrictProfile& profile) {
  const std::size_t m = profile.candidate_count();
  std::vector<std::vector<std::int64_t>> adv(m, std::vector<std::int64_t>(m, 0));
  for (const Ranking& r : profile.rankings()) {
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) ++adv[r[p].pos()][r[q].pos()];
    }
  }
  return adv;
}

WinnerOutcome condorcet_winner(const StrictProfile& profile) {
  const std::size_t m = profile.candidate_count();
  WinnerOutcome out;
  out.pairwise = pairwise_matrix(profile);
  out.tally.assign(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a != b && out.pairwise[a][b] > out.pairwise[b][a]) ++out.tally[a];
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (out.tally[a] == static_cast<std::int64_t>(m) - 1) out.winner = CandidateId::from_pos(a);
  }
  return out;
}

WinnerOutcome plurality_winner(const StrictProfile& profile) {
  WinnerOutcome out;
  out.tally.assign(profile.candidate_count(), 0);
  for (const Ranking& r : profile.rankings()) ++out.tally[r.front().pos()];
  out.winner = unique_best(out.tally, true);
  return out;
}

std::int64_t maximin_phi(const StrictProfile& profile, CandidateId c) {
  if (profile.candidate_count() < 2) throw std::invalid_argument("maximin score needs at least two candidates");
  std::int64_t phi = std::numeric_limits<std::int64_t>::max();
  for (std::size_t d = 0; d < profile.candidate_count(); ++d) {
    if (d != c.pos()) phi = std::min(phi, pairwise_advantage(profile, c, CandidateId::from_pos(d)));
  }
  return phi;
}

WinnerOutcome maximin_winner(const StrictProfile& profile) {
  const std::size_t m = profile.candidate_count();
  WinnerOutcome out;
  out.pairwise = pairwise_matrix(profile);
  out.tally.assign(m, 0);
  if (m == 1) {
    out.winner = CandidateId{1};
    return out;
  }
  for (std::size_t a = 0; a < m; ++a) {
    std::int64_t phi = std::numeric_limits<std::int64_t>::max();
    for (std::size_t b = 0; b < m; ++b) {
      if (a != b) phi = std::min(phi, out.pairwise[a][b]);
    }
    out.tally[a] = phi;
  }
  out.winner = unique_best(out.tally, true);
  return out;
}

std::vector<CandidateId> bucklin_rank_set(const StrictProfile& profile, VoterId v, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > profile.candidate_count()) {
    throw std::invalid_argument("Bucklin depth out of range");
  }
  if (v.value < 1 || v.pos() >= profile.voter_count()) throw std::invalid_argument("voter index out of range");
  const Ranking& r = profile.ranking(v.pos());
  return {r.begin(), r.begin() + k};
}

int bucklin_psi(const StrictProfile& profile, CandidateId c) {
  const std::size_t m = profile.candidate_count();
  const std::size_t n = profile.voter_count();
  // count_at[k] = voters ranking c exactly at position k.
  std::vector<std::size_t> count_at(m + 1, 0);
  for (std::size_t v = 0; v < n; ++v) ++count_at[static_cast<std::size_t>(profile.rank_of(v, c))];
  std::size_t within = 0;
  for (std::size_t k = 1; k <= m; ++k) {
    within += count_at[k];
    if (2 * within > n) return static_cast<int>(k);
  }
  return static_cast<int>(m) + 1;
}

WinnerOutcome bucklin_winner(const StrictProfile& profile) {
  WinnerOutcome out;
  out.higher_wins = false;
  out.tally.assign(profile.candidate_count(), 0);
  for (std::size_t i = 0; i < profile.candidate_count(); ++i) {
    out.tally[i] = bucklin_psi(profile, CandidateId::from_pos(i));
  }
  out.winner = unique_best(out.tally, false);
  return out;
}

WinnerOutcome winner_of(Rule rule, const Election& election) {
  if (rule == Rule::Range) {
    if (const ScoreMatrix* s = election.scores()) return range_winner(*s);
    if (const TiedProfile* t = election.tied()) return range_winner(tied_to_scores(*t));
    return range_winner(tied_to_scores(TiedProfile::from_strict(*election.strict())));
  }
  const StrictProfile* p = election.strict();
  if (p == nullptr) throw UnsupportedControl("rule '" + std::string(to_string(rule)) + "' needs strict orders");
  switch (rule) {
    case Rule::Condorcet: return condorcet_winner(*p);
    case Rule::Plurality: return plurality_winner(*p);
    case Rule::Maximin: return maximin_winner(*p);
    case Rule::Bucklin: return bucklin_winner(*p);
    case Rule::Range: break;
  }
  throw std::logic_error("unreachable");
}

std::optional<CandidateId> restricted_winner(Rule rule, const Election& election, Action action,
                                             const std::vector<std::size_t>& kept_pos) {
  std::vector<CandidateId> kept_ids;
  if (action == Action::DeleteCandidates) {
    if (kept_pos.empty()) throw std::invalid_argument("cannot delete every candidate");
    for (std::size_t p : kept_pos) kept_ids.push_back(CandidateId::from_pos(p));
  }
  auto map_back = [&](std::optional<CandidateId> w) -> std::optional<CandidateId> {
    if (!w || action == Action::DeleteVoters) return w;
    return kept_ids[w->pos()];
  };

  if (rule == Rule::Range) {
    ScoreMatrix s = election.scores()  ? *election.scores()
                    : election.tied() ? tied_to_scores(*election.tied())
                                      : tied_to_scores(TiedProfile::from_strict(*election.strict()));
    s = action == Action::DeleteVoters ? s.restrict_voters(kept_pos) : s.restrict_candidates(kept_ids);
    return map_back(range_winner(s).winner);
  }
  const StrictProfile* p = election.strict();
  if (p == nullptr) throw UnsupportedControl("rule '" + std::string(to_string(rule)) + "' needs strict orders");
  const StrictProfile r = action == Action::DeleteVoters ? p->restrict_voters(kept_pos) : p->restrict_candidates(kept_ids);
  switch (rule) {
    case Rule::Condorcet: return map_back(condorcet_winner(r).winner);
    case Rule::Plurality: return map_back(plurality_winner(r).winner);
    case Rule::Maximin: return map_back(maximin_winner(r).winner);
    case Rule::Bucklin: return map_back(bucklin_winner(r).winner);
    case Rule::Range: break;
  }
  throw std::logic_error("unreachable");
}

}  // namespace ballot
