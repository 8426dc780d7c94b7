#pragma once

#include <cstdint>
#include <vector>

#include "propagator.hpp"

namespace ballot::detail {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
  std::uint64_t iterations = 0;
};

struct SimplexOptions {
  double feasibility_tol = 1e-6;
  double optimality_tol = 1e-6;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degeneracy_window = 50;
};

/// Columns with lb == ub are substituted out; rows with active[i] == 0 are
/// skipped. Returns the number of tableau entries the LP would need.
std::size_t dense_lp_size(const CompiledModel& cm, const std::vector<double>& lb, const std::vector<double>& ub,
                          const std::vector<char>& active);

/// Maximizes cm.obj over the box [lb, ub] and the active rows with a
/// bounded-variable primal simplex on a dense dictionary.
LpSolution solve_dense_lp(const CompiledModel& cm, const std::vector<double>& lb, const std::vector<double>& ub,
                          const std::vector<char>& active, const SimplexOptions& opts);

}  // namespace ballot::detail
