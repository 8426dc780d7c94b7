#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ballot {

/// 1-based positional identifier of a candidate.
struct CandidateId {
  int value = 1;

  constexpr std::size_t pos() const { return static_cast<std::size_t>(value - 1); }
  static constexpr CandidateId from_pos(std::size_t p) { return CandidateId{static_cast<int>(p) + 1}; }

  friend constexpr bool operator==(CandidateId, CandidateId) = default;
  friend constexpr auto operator<=>(CandidateId, CandidateId) = default;
};

/// 1-based positional identifier of a voter.
struct VoterId {
  int value = 1;

  constexpr std::size_t pos() const { return static_cast<std::size_t>(value - 1); }
  static constexpr VoterId from_pos(std::size_t p) { return VoterId{static_cast<int>(p) + 1}; }

  friend constexpr bool operator==(VoterId, VoterId) = default;
  friend constexpr auto operator<=>(VoterId, VoterId) = default;
};

using Ranking = std::vector<CandidateId>;

/// Linear strict orders, one per voter, most preferred first.
///
/// A profile may hold zero voters; only Election requires n >= 1. Rank
/// lookups are precomputed so pairwise queries are O(1).
class StrictProfile {
 public:
  StrictProfile(std::size_t candidate_count, std::vector<Ranking> rankings);

  std::size_t candidate_count() const { return m_; }
  std::size_t voter_count() const { return rankings_.size(); }
  const std::vector<Ranking>& rankings() const { return rankings_; }
  const Ranking& ranking(std::size_t voter_pos) const { return rankings_[voter_pos]; }

  /// 1-based position of candidate c in the ranking of voter v.
  int rank_of(std::size_t voter_pos, CandidateId c) const { return rank_[voter_pos * m_ + c.pos()]; }
  bool prefers(std::size_t voter_pos, CandidateId a, CandidateId b) const {
    return rank_of(voter_pos, a) < rank_of(voter_pos, b);
  }

  StrictProfile restrict_voters(const std::vector<std::size_t>& keep_pos) const;
  /// Keeps the listed candidates and renumbers them 1..k in the order given.
  StrictProfile restrict_candidates(const std::vector<CandidateId>& keep) const;

  friend bool operator==(const StrictProfile& a, const StrictProfile& b) {
    return a.m_ == b.m_ && a.rankings_ == b.rankings_;
  }

 private:
  std::size_t m_;
  std::vector<Ranking> rankings_;
  std::vector<int> rank_;
};

/// Complete orders with ties: per voter, disjoint groups covering all
/// candidates, earlier groups preferred.
class TiedProfile {
 public:
  using Groups = std::vector<std::vector<CandidateId>>;

  TiedProfile(std::size_t candidate_count, std::vector<Groups> orders);
  static TiedProfile from_strict(const StrictProfile& p);

  std::size_t candidate_count() const { return m_; }
  std::size_t voter_count() const { return orders_.size(); }
  const std::vector<Groups>& orders() const { return orders_; }

  bool is_strict() const;
  StrictProfile to_strict() const;

  TiedProfile restrict_voters(const std::vector<std::size_t>& keep_pos) const;
  TiedProfile restrict_candidates(const std::vector<CandidateId>& keep) const;

  friend bool operator==(const TiedProfile& a, const TiedProfile& b) {
    return a.m_ == b.m_ && a.orders_ == b.orders_;
  }

 private:
  std::size_t m_;
  std::vector<Groups> orders_;
};

/// m x n non-negative integer scores; entry (c, v) is what voter v gives c.
class ScoreMatrix {
 public:
  ScoreMatrix(std::size_t candidate_count, std::size_t voter_count, std::vector<std::int64_t> row_major);

  std::size_t candidate_count() const { return m_; }
  std::size_t voter_count() const { return n_; }
  std::int64_t at(CandidateId c, std::size_t voter_pos) const { return scores_[c.pos() * n_ + voter_pos]; }
  std::int64_t max_entry() const;

  ScoreMatrix restrict_voters(const std::vector<std::size_t>& keep_pos) const;
  ScoreMatrix restrict_candidates(const std::vector<CandidateId>& keep) const;

  friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<std::int64_t> scores_;
};

using Preferences = std::variant<StrictProfile, TiedProfile, ScoreMatrix>;

/// Candidates, voters and exactly one preference payload.
class Election {
 public:
  Election(std::vector<std::string> candidate_names, Preferences prefs);

  std::size_t candidate_count() const { return names_.size(); }
  std::size_t voter_count() const;
  std::vector<CandidateId> candidates() const;
  std::vector<VoterId> voters() const;

  const std::string& name(CandidateId c) const { return names_.at(c.pos()); }
  const std::vector<std::string>& candidate_names() const { return names_; }
  const Preferences& preferences() const { return prefs_; }

  const StrictProfile* strict() const { return std::get_if<StrictProfile>(&prefs_); }
  const TiedProfile* tied() const { return std::get_if<TiedProfile>(&prefs_); }
  const ScoreMatrix* scores() const { return std::get_if<ScoreMatrix>(&prefs_); }

  friend bool operator==(const Election&, const Election&) = default;

 private:
  std::vector<std::string> names_;
  Preferences prefs_;
};

enum class Rule { Range, Condorcet, Plurality, Maximin, Bucklin };
enum class Action { DeleteVoters, DeleteCandidates };
enum class Mode { Constructive, Destructive };

std::string_view to_string(Rule r);
std::string_view to_string(Action a);
std::string_view to_string(Mode m);
Rule parse_rule(std::string_view s);
Action parse_action(std::string_view s);
Mode parse_mode(std::string_view s);

/// (rule, action) must be one of the six combinations with an encoding.
bool is_supported(Rule r, Action a);

struct ControlSpec {
  Rule rule = Rule::Condorcet;
  Action action = Action::DeleteVoters;
  Mode mode = Mode::Constructive;
  CandidateId target{};
};

class UnsupportedControl : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Relabeling produced by normalize_target: a single transposition 1 <-> target.
struct TargetRelabel {
  CandidateId original_target{};

  CandidateId to_original(CandidateId c) const;
  CandidateId to_normalized(CandidateId c) const { return to_original(c); }
};

struct NormalizedControl {
  Election election;
  ControlSpec spec;
  TargetRelabel relabel;
};

/// Swaps candidates 1 and the target so the target becomes candidate 1.
NormalizedControl normalize_target(const Election& election, const ControlSpec& spec);

/// Election over the kept voters; keep must be nonempty and in range.
Election restrict_to_voters(const Election& election, const std::vector<VoterId>& keep);
/// Election over the kept candidates (renumbered in ascending original order).
Election restrict_to_candidates(const Election& election, const std::vector<CandidateId>& keep);

}  // namespace ballot
