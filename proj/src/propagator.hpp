#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ballot/ilp_model.hpp"

namespace ballot::detail {

/// Row-major and column-major double copy of a model, objective as maximize.
struct CompiledModel {
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::vector<std::size_t> row_start;
  std::vector<std::uint32_t> row_col;
  std::vector<double> row_val;
  std::vector<double> row_lo;
  std::vector<double> row_hi;
  std::vector<std::size_t> col_start;
  std::vector<std::uint32_t> col_row;
  std::vector<double> col_val;
  std::vector<double> lb;
  std::vector<double> ub;
  std::vector<char> integral;
  std::vector<double> obj;
  bool minimize = false;
  /// All objective coefficients integers on integral variables.
  bool integral_objective = false;
};

CompiledModel compile(const LinearProgram& model);

/// Bound propagation over integral columns with an undo trail.
class Propagator {
 public:
  explicit Propagator(const CompiledModel& cm, double tol = 1e-6);

  const std::vector<double>& lb() const { return lb_; }
  const std::vector<double>& ub() const { return ub_; }
  double min_activity(std::size_t row) const { return minact_[row]; }
  double max_activity(std::size_t row) const { return maxact_[row]; }
  bool fixed(std::size_t col) const { return ub_[col] - lb_[col] <= tol_; }
  bool row_redundant(std::size_t row) const;

  /// Returns false when the new bound empties the domain.
  bool tighten_lb(std::size_t col, double value);
  bool tighten_ub(std::size_t col, double value);

  /// Propagates every row (first call) or the rows touched since the last call.
  bool propagate_all();
  bool propagate();

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark);

  /// Largest objective value over the current box.
  double objective_bound() const;

  std::uint64_t work() const { return work_; }

 private:
  struct Change {
    std::uint32_t col;
    double old_lb;
    double old_ub;
  };

  void set_bounds(std::size_t col, double lo, double hi);
  void enqueue_col(std::size_t col);
  bool process_row(std::size_t row);

  const CompiledModel& cm_;
  double tol_;
  std::vector<double> lb_;
  std::vector<double> ub_;
  std::vector<double> minact_;
  std::vector<double> maxact_;
  std::vector<Change> trail_;
  std::vector<std::uint32_t> queue_;
  std::vector<char> queued_;
  std::uint64_t work_ = 0;
};

}  // namespace ballot::detail
