#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ballot/election.hpp"
#include "ballot/encoders.hpp"
#include "ballot/solver.hpp"

namespace ballot {

enum class ControlStatus { Optimal, Infeasible, NodeLimit, TimedOut };

std::string_view to_string(ControlStatus s);

struct Verification {
  std::optional<CandidateId> winner;
  bool target_wins = false;
  /// Winner recheck agrees with the mode (constructive: target wins).
  bool consistent = false;
};

struct ControlSolution {
  ControlStatus status = ControlStatus::Infeasible;
  Action action = Action::DeleteVoters;
  /// 1-based voter or candidate indices.
  std::vector<int> kept;
  std::vector<int> deleted;
  std::int64_t objective = 0;
  std::optional<Verification> verification;
};

class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recomputes the rule winner with only `kept` (1-based positions) retained.
Verification verify_kept(const Election& election, const ControlSpec& spec, const std::vector<int>& kept);

/// Reads the kept set off the x variables (value > 1/2) and rechecks the
/// winner. Throws VerificationError when the recheck contradicts the mode
/// and `strict` is set.
ControlSolution decode(const EncodedProblem& problem, const Assignment& a, const Election& election,
                       const ControlSpec& spec, bool strict = true);

struct ControlOptions {
  SolverConfig solver;
  bool strict_verification = true;
  /// Applied to the encoded problem before solving (test hook).
  std::function<void(EncodedProblem&)> tamper;
};

struct ControlRun {
  ControlSolution solution;
  SolveResult solve;
  std::size_t variables = 0;
  std::size_t constraints = 0;
};

/// Normalizes the target, encodes, solves and decodes; indices in the result
/// refer to the original election.
ControlRun solve_control(const Election& election, const ControlSpec& spec, const ControlOptions& options = {});

}  // namespace ballot
