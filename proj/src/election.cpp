#include "ballot/election.hpp"

#include <algorithm>
#include <set>

namespace ballot {

namespace {

void check_permutation(std::size_t m, const Ranking& r) {
  if (r.size() != m) {
    throw std::invalid_argument("ranking has " + std::to_string(r.size()) + " entries, expected " + std::to_string(m));
  }
  std::vector<bool> seen(m, false);
  for (CandidateId c : r) {
    if (c.value < 1 || static_cast<std::size_t>(c.value) > m || seen[c.pos()]) {
      throw std::invalid_argument("ranking is not a permutation of 1.." + std::to_string(m));
    }
    seen[c.pos()] = true;
  }
}

std::vector<std::size_t> checked_voter_positions(const std::vector<VoterId>& keep, std::size_t n) {
  if (keep.empty()) throw std::invalid_argument("cannot restrict to an empty voter set");
  std::set<std::size_t> s;
  for (VoterId v : keep) {
    if (v.value < 1 || v.pos() >= n) throw std::invalid_argument("voter index out of range");
    s.insert(v.pos());
  }
  return {s.begin(), s.end()};
}

std::vector<CandidateId> checked_candidates(const std::vector<CandidateId>& keep, std::size_t m) {
  if (keep.empty()) throw std::invalid_argument("cannot restrict to an empty candidate set");
  std::set<CandidateId> s;
  for (CandidateId c : keep) {
    if (c.value < 1 || c.pos() >= m) throw std::invalid_argument("candidate index out of range");
    s.insert(c);
  }
  return {s.begin(), s.end()};
}

// New 1-based index of each kept candidate; 0 for dropped ones.
std::vector<int> renumbering(std::size_t m, const std::vector<CandidateId>& keep) {
  std::vector<int> to(m, 0);
  for (std::size_t k = 0; k < keep.size(); ++k) to[keep[k].pos()] = static_cast<int>(k) + 1;
  return to;
}

CandidateId swap_1_and(CandidateId target, CandidateId c) {
  if (c == target) return CandidateId{1};
  if (c.value == 1) return target;
  return c;
}

}  // namespace

StrictProfile::StrictProfile(std::size_t candidate_count, std::vector<Ranking> rankings)
    : m_(candidate_count), rankings_(std::move(rankings)), rank_(m_ * rankings_.size(), 0) {
  if (m_ == 0) throw std::invalid_argument("an election needs at least one candidate");
  for (std::size_t v = 0; v < rankings_.size(); ++v) {
    check_permutation(m_, rankings_[v]);
    for (std::size_t p = 0; p < m_; ++p) rank_[v * m_ + rankings_[v][p].pos()] = static_cast<int>(p) + 1;
  }
}

StrictProfile StrictProfile::restrict_voters(const std::vector<std::size_t>& keep_pos) const {
  std::vector<Ranking> out;
  out.reserve(keep_pos.size());
  for (std::size_t v : keep_pos) out.push_back(rankings_.at(v));
  return StrictProfile(m_, std::move(out));
}

StrictProfile StrictProfile::restrict_candidates(const std::vector<CandidateId>& keep) const {
  std::vector<int> to = renumbering(m_, keep);
  std::vector<Ranking> out;
  out.reserve(rankings_.size());
  for (const Ranking& r : rankings_) {
    Ranking filtered;
    filtered.reserve(keep.size());
    for (CandidateId c : r) {
      if (to[c.pos()] != 0) filtered.push_back(CandidateId{to[c.pos()]});
    }
    out.push_back(std::move(filtered));
  }
  return StrictProfile(keep.size(), std::move(out));
}

TiedProfile::TiedProfile(std::size_t candidate_count, std::vector<Groups> orders)
    : m_(candidate_count), orders_(std::move(orders)) {
  if (m_ == 0) throw std::invalid_argument("an election needs at least one candidate");
  for (const Groups& g : orders_) {
    Ranking flat;
    for (const auto& group : g) {
      if (group.empty()) throw std::invalid_argument("empty tie group");
      flat.insert(flat.end(), group.begin(), group.end());
    }
    check_permutation(m_, flat);
  }
}

TiedProfile TiedProfile::from_strict(const StrictProfile& p) {
  std::vector<Groups> orders;
  orders.reserve(p.voter_count());
  for (const Ranking& r : p.rankings()) {
    Groups g;
    g.reserve(r.size());
    for (CandidateId c : r) g.push_back({c});
    orders.push_back(std::move(g));
  }
  return TiedProfile(p.candidate_count(), std::move(orders));
}

bool TiedProfile::is_strict() const {
  return std::all_of(orders_.begin(), orders_.end(), [](const Groups& g) {
    return std::all_of(g.begin(), g.end(), [](const auto& group) { return group.size() == 1; });
  });
}

StrictProfile TiedProfile::to_strict() const {
  if (!is_strict()) throw std::invalid_argument("profile contains ties");
  std::vector<Ranking> out;
  out.reserve(orders_.size());
  for (const Groups& g : orders_) {
    Ranking r;
    for (const auto& group : g) r.push_back(group.front());
    out.push_back(std::move(r));
  }
  return StrictProfile(m_, std::move(out));
}

TiedProfile TiedProfile::restrict_voters(const std::vector<std::size_t>& keep_pos) const {
  std::vector<Groups> out;
  for (std::size_t v : keep_pos) out.push_back(orders_.at(v));
  return TiedProfile(m_, std::move(out));
}

TiedProfile TiedProfile::restrict_candidates(const std::vector<CandidateId>& keep) const {
  std::vector<int> to = renumbering(m_, keep);
  std::vector<Groups> out;
  for (const Groups& g : orders_) {
    Groups filtered;
    for (const auto& group : g) {
      std::vector<CandidateId> kept;
      for (CandidateId c : group) {
        if (to[c.pos()] != 0) kept.push_back(CandidateId{to[c.pos()]});
      }
      if (!kept.empty()) filtered.push_back(std::move(kept));
    }
    out.push_back(std::move(filtered));
  }
  return TiedProfile(keep.size(), std::move(out));
}

ScoreMatrix::ScoreMatrix(std::size_t candidate_count, std::size_t voter_count, std::vector<std::int64_t> row_major)
    : m_(candidate_count), n_(voter_count), scores_(std::move(row_major)) {
  if (m_ == 0) throw std::invalid_argument("an election needs at least one candidate");
  if (scores_.size() != m_ * n_) throw std::invalid_argument("score matrix has wrong number of entries");
  if (std::any_of(scores_.begin(), scores_.end(), [](std::int64_t s) { return s < 0; })) {
    throw std::invalid_argument("scores must be non-negative");
  }
}

std::int64_t ScoreMatrix::max_entry() const {
  return scores_.empty() ? 0 : *std::max_element(scores_.begin(), scores_.end());
}

ScoreMatrix ScoreMatrix::restrict_voters(const std::vector<std::size_t>& keep_pos) const {
  std::vector<std::int64_t> out;
  out.reserve(m_ * keep_pos.size());
  for (std::size_t c = 0; c < m_; ++c) {
    for (std::size_t v : keep_pos) out.push_back(scores_[c * n_ + v]);
  }
  return ScoreMatrix(m_, keep_pos.size(), std::move(out));
}

ScoreMatrix ScoreMatrix::restrict_candidates(const std::vector<CandidateId>& keep) const {
  std::vector<std::int64_t> out;
  out.reserve(keep.size() * n_);
  for (CandidateId c : keep) {
    for (std::size_t v = 0; v < n_; ++v) out.push_back(at(c, v));
  }
  return ScoreMatrix(keep.size(), n_, std::move(out));
}

Election::Election(std::vector<std::string> candidate_names, Preferences prefs)
    : names_(std::move(candidate_names)), prefs_(std::move(prefs)) {
  std::size_t m = std::visit([](const auto& p) { return p.candidate_count(); }, prefs_);
  if (names_.size() != m) throw std::invalid_argument("candidate names do not match the preference payload");
  if (voter_count() == 0) throw std::invalid_argument("an election needs at least one voter");
}

std::size_t Election::voter_count() const {
  return std::visit([](const auto& p) { return p.voter_count(); }, prefs_);
}

std::vector<CandidateId> Election::candidates() const {
  std::vector<CandidateId> out;
  for (std::size_t i = 0; i < candidate_count(); ++i) out.push_back(CandidateId::from_pos(i));
  return out;
}

std::vector<VoterId> Election::voters() const {
  std::vector<VoterId> out;
  for (std::size_t j = 0; j < voter_count(); ++j) out.push_back(VoterId::from_pos(j));
  return out;
}

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Range: return "range";
    case Rule::Condorcet: return "condorcet";
    case Rule::Plurality: return "plurality";
    case Rule::Maximin: return "maximin";
    case Rule::Bucklin: return "bucklin";
  }
  return "?";
}

std::string_view to_string(Action a) {
  return a == Action::DeleteVoters ? "delete-voters" : "delete-candidates";
}

std::string_view to_string(Mode m) { return m == Mode::Constructive ? "constructive" : "destructive"; }

Rule parse_rule(std::string_view s) {
  for (Rule r : {Rule::Range, Rule::Condorcet, Rule::Plurality, Rule::Maximin, Rule::Bucklin}) {
    if (s == to_string(r)) return r;
  }
  if (s == "approval") return Rule::Range;
  throw std::invalid_argument("unknown rule '" + std::string(s) + "'");
}

Action parse_action(std::string_view s) {
  if (s == "delete-voters" || s == "voters") return Action::DeleteVoters;
  if (s == "delete-candidates" || s == "candidates") return Action::DeleteCandidates;
  throw std::invalid_argument("unknown action '" + std::string(s) + "'");
}

Mode parse_mode(std::string_view s) {
  if (s == "constructive") return Mode::Constructive;
  if (s == "destructive") return Mode::Destructive;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "'");
}

bool is_supported(Rule r, Action a) {
  switch (r) {
    case Rule::Range:
    case Rule::Condorcet:
    case Rule::Maximin: return a == Action::DeleteVoters;
    case Rule::Plurality: return a == Action::DeleteCandidates;
    case Rule::Bucklin: return true;
  }
  return false;
}

CandidateId TargetRelabel::to_original(CandidateId c) const { return swap_1_and(original_target, c); }

NormalizedControl normalize_target(const Election& election, const ControlSpec& spec) {
  const std::size_t m = election.candidate_count();
  if (spec.target.value < 1 || spec.target.pos() >= m) {
    throw std::invalid_argument("unknown target candidate " + std::to_string(spec.target.value));
  }
  const CandidateId t = spec.target;
  auto map = [t](CandidateId c) { return swap_1_and(t, c); };

  std::vector<std::string> names = election.candidate_names();
  std::swap(names[0], names[t.pos()]);

  Preferences prefs = std::visit(
      [&](const auto& p) -> Preferences {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, StrictProfile>) {
          std::vector<Ranking> rs = p.rankings();
          for (Ranking& r : rs) {
            for (CandidateId& c : r) c = map(c);
          }
          return StrictProfile(m, std::move(rs));
        } else if constexpr (std::is_same_v<P, TiedProfile>) {
          std::vector<TiedProfile::Groups> os = p.orders();
          for (auto& g : os) {
            for (auto& group : g) {
              for (CandidateId& c : group) c = map(c);
            }
          }
          return TiedProfile(m, std::move(os));
        } else {
          std::vector<CandidateId> order;
          for (std::size_t i = 0; i < m; ++i) order.push_back(map(CandidateId::from_pos(i)));
          // Row i of the result is row map(i) of the input; map is an involution.
          std::vector<std::int64_t> rows;
          for (CandidateId src : order) {
            for (std::size_t v = 0; v < p.voter_count(); ++v) rows.push_back(p.at(src, v));
          }
          return ScoreMatrix(m, p.voter_count(), std::move(rows));
        }
      },
      election.preferences());

  ControlSpec out = spec;
  out.target = CandidateId{1};
  return {Election(std::move(names), std::move(prefs)), out, TargetRelabel{t}};
}

Election restrict_to_voters(const Election& election, const std::vector<VoterId>& keep) {
  auto pos = checked_voter_positions(keep, election.voter_count());
  Preferences prefs =
      std::visit([&](const auto& p) -> Preferences { return p.restrict_voters(pos); }, election.preferences());
  return Election(election.candidate_names(), std::move(prefs));
}

Election restrict_to_candidates(const Election& election, const std::vector<CandidateId>& keep) {
  auto kept = checked_candidates(keep, election.candidate_count());
  std::vector<std::string> names;
  for (CandidateId c : kept) names.push_back(election.name(c));
  Preferences prefs =
      std::visit([&](const auto& p) -> Preferences { return p.restrict_candidates(kept); }, election.preferences());
  return Election(std::move(names), std::move(prefs));
}

}  // namespace ballot
