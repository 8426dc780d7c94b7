#include "ballot/control.hpp"

#include <algorithm>

#include "ballot/rules.hpp"

namespace ballot {

std::string_view to_string(ControlStatus s) {
  switch (s) {
    case ControlStatus::Optimal: return "Optimal";
    case ControlStatus::Infeasible: return "Infeasible";
    case ControlStatus::NodeLimit: return "NodeLimit";
    case ControlStatus::TimedOut: return "TimedOut";
  }
  return "?";
}

Verification verify_kept(const Election& election, const ControlSpec& spec, const std::vector<int>& kept) {
  std::vector<std::size_t> pos;
  for (int k : kept) pos.push_back(static_cast<std::size_t>(k - 1));
  Verification v;
  v.winner = restricted_winner(spec.rule, election, spec.action, pos);
  v.target_wins = v.winner == spec.target;
  v.consistent = spec.mode == Mode::Constructive ? v.target_wins : !v.target_wins;
  return v;
}

ControlSolution decode(const EncodedProblem& problem, const Assignment& a, const Election& election,
                       const ControlSpec& spec, bool strict) {
  ControlSolution out;
  out.status = ControlStatus::Optimal;
  out.action = problem.action();
  for (std::size_t p = 0; p < problem.decision_vars.size(); ++p) {
    const bool keep = a.values.at(problem.decision_vars[p]) > Rational(1, 2);
    (keep ? out.kept : out.deleted).push_back(static_cast<int>(p) + 1);
  }
  out.objective = static_cast<std::int64_t>(out.kept.size());
  out.verification = verify_kept(election, spec, out.kept);
  if (strict && !out.verification->consistent) {
    throw VerificationError(std::string(to_string(problem.kind)) + " " + std::string(to_string(spec.mode)) +
                            " solution failed the winner recheck");
  }
  return out;
}

ControlRun solve_control(const Election& election, const ControlSpec& spec, const ControlOptions& options) {
  if (!is_supported(spec.rule, spec.action)) {
    throw UnsupportedControl("no encoding for " + std::string(to_string(spec.rule)) + " with " +
                             std::string(to_string(spec.action)));
  }
  const NormalizedControl norm = normalize_target(election, spec);
  EncodedProblem problem = encode_control(norm.election, norm.spec);
  if (options.tamper) options.tamper(problem);

  ControlRun run;
  run.variables = problem.model.variable_count();
  run.constraints = problem.model.constraint_count();
  run.solve = solve(problem.model, options.solver);

  ControlSolution& sol = run.solution;
  sol.action = spec.action;
  switch (run.solve.status) {
    case SolveStatus::Optimal: {
      sol = decode(problem, *run.solve.incumbent, norm.election, norm.spec, options.strict_verification);
      if (spec.action == Action::DeleteCandidates) {
        auto back = [&](std::vector<int>& ids) {
          for (int& c : ids) c = norm.relabel.to_original(CandidateId{c}).value;
          std::sort(ids.begin(), ids.end());
        };
        back(sol.kept);
        back(sol.deleted);
      }
      if (sol.verification->winner) sol.verification->winner = norm.relabel.to_original(*sol.verification->winner);
      break;
    }
    case SolveStatus::Infeasible: sol.status = ControlStatus::Infeasible; break;
    case SolveStatus::NodeLimit: sol.status = ControlStatus::NodeLimit; break;
    case SolveStatus::TimeLimit: sol.status = ControlStatus::TimedOut; break;
  }
  return run;
}

}  // namespace ballot
