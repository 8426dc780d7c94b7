#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ballot/ilp_model.hpp"

namespace ballot {

struct SolverConfig {
  double feasibility_tol = 1e-6;
  double optimality_tol = 1e-6;
  double integrality_tol = 1e-5;
  std::optional<std::uint64_t> node_limit;
  std::optional<double> time_limit_seconds;
  /// Node LPs whose dense dictionary would exceed this many entries are
  /// skipped; the node is then bounded by the objective's box activity.
  /// Zero turns LP bounds off altogether.
  std::size_t dense_limit = 2'000'000;
  bool record_trace = false;

  void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, NodeLimit, TimeLimit };

std::string_view to_string(SolveStatus s);

struct TracePoint {
  std::uint64_t node = 0;
  double bound = 0.0;
  std::optional<double> incumbent;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Assignment> incumbent;
  /// Objective of the incumbent in the model's own sense.
  std::optional<Rational> objective;
  /// Best proven bound in the model's own sense.
  double bound = 0.0;
  std::uint64_t nodes_explored = 0;
  std::uint64_t branchings = 0;
  std::uint64_t lp_solves = 0;
  std::uint64_t simplex_iterations = 0;
  double wall_time = 0.0;
  std::vector<TracePoint> trace;

  /// Everything except wall time, for determinism checks.
  bool same_outcome(const SolveResult& other) const;
};

enum class LpRelaxationStatus { Optimal, Infeasible, Unbounded };

struct LpRelaxation {
  LpRelaxationStatus status = LpRelaxationStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

struct Fixing {
  std::size_t var = 0;
  double value = 0.0;
};

/// Continuous relaxation of the model with the given variables fixed.
LpRelaxation solve_lp_relaxation(const LinearProgram& model, const std::vector<Fixing>& fixings = {},
                                 const SolverConfig& config = {});

/// Best-first branch and bound with LP (or box-activity) bounds, most
/// fractional branching and bound propagation at every node.
SolveResult solve(const LinearProgram& model, const SolverConfig& config = {});

}  // namespace ballot
