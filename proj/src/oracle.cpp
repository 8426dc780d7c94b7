#include "ballot/oracle.hpp"

#include <algorithm>

#include "ballot/rules.hpp"

namespace ballot {

namespace {

// Advances `c` (increasing indices into a pool of size n) to the next
// k-combination in lexicographic order; false after the last one.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

ControlSolution brute_force_control(const Election& election, const ControlSpec& spec, std::uint64_t limit) {
  if (!is_supported(spec.rule, spec.action)) {
    throw UnsupportedControl("no encoding for " + std::string(to_string(spec.rule)) + " with " +
                             std::string(to_string(spec.action)));
  }
  const std::size_t m = election.candidate_count();
  if (spec.target.value < 1 || spec.target.pos() >= m) throw std::invalid_argument("unknown target candidate");

  const bool voters = spec.action == Action::DeleteVoters;
  // Pool of removable items, as 0-based positions.
  std::vector<std::size_t> pool;
  if (voters) {
    for (std::size_t v = 0; v < election.voter_count(); ++v) pool.push_back(v);
  } else {
    for (std::size_t c = 0; c < m; ++c) {
      if (c != spec.target.pos()) pool.push_back(c);
    }
  }
  if (pool.size() >= 63 || (std::uint64_t{1} << pool.size()) > limit) {
    throw OracleLimitExceeded("oracle would enumerate 2^" + std::to_string(pool.size()) + " subsets");
  }

  ControlSolution out;
  out.action = spec.action;
  for (std::size_t size = pool.size() + 1; size-- > 0;) {
    std::vector<std::size_t> comb(size);
    for (std::size_t i = 0; i < size; ++i) comb[i] = i;
    do {
      std::vector<std::size_t> kept;
      for (std::size_t i : comb) kept.push_back(pool[i]);
      if (!voters) {
        kept.push_back(spec.target.pos());
        std::sort(kept.begin(), kept.end());
      }
      const auto winner = restricted_winner(spec.rule, election, spec.action, kept);
      const bool target_wins = winner == spec.target;
      if (target_wins == (spec.mode == Mode::Constructive)) {
        out.status = ControlStatus::Optimal;
        std::vector<bool> is_kept(voters ? election.voter_count() : m, false);
        for (std::size_t k : kept) is_kept[k] = true;
        for (std::size_t p = 0; p < is_kept.size(); ++p) {
          (is_kept[p] ? out.kept : out.deleted).push_back(static_cast<int>(p) + 1);
        }
        out.objective = static_cast<std::int64_t>(out.kept.size());
        out.verification = Verification{winner, target_wins, true};
        return out;
      }
    } while (size > 0 && next_combination(comb, pool.size()));
  }
  out.status = ControlStatus::Infeasible;
  return out;
}

}  // namespace ballot
