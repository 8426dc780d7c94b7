#include "propagator.hpp"

#include <cmath>
#include <limits>

namespace ballot::detail {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

CompiledModel compile(const LinearProgram& model) {
  CompiledModel cm;
  cm.cols = model.variable_count();
  cm.rows = model.constraint_count();
  cm.minimize = model.objective().sense == ObjectiveSense::Minimize;

  for (const Variable& v : model.variables()) {
    cm.lb.push_back(to_double(v.lower));
    cm.ub.push_back(to_double(v.upper));
    cm.integral.push_back(v.integral() ? 1 : 0);
  }
  cm.obj.assign(cm.cols, 0.0);
  cm.integral_objective = true;
  for (const Term& t : model.objective().terms) {
    cm.obj[t.var] = to_double(t.coef) * (cm.minimize ? -1.0 : 1.0);
    if (!is_integral(t.coef) || !model.variables()[t.var].integral()) cm.integral_objective = false;
  }

  std::vector<std::size_t> col_count(cm.cols, 0);
  cm.row_start.push_back(0);
  for (const LinearConstraint& c : model.constraints()) {
    for (const Term& t : c.terms) {
      cm.row_col.push_back(static_cast<std::uint32_t>(t.var));
      cm.row_val.push_back(to_double(t.coef));
      ++col_count[t.var];
    }
    cm.row_start.push_back(cm.row_col.size());
    const double rhs = to_double(c.rhs);
    cm.row_lo.push_back(c.sense == Sense::LessEqual ? -kInf : rhs);
    cm.row_hi.push_back(c.sense == Sense::GreaterEqual ? kInf : rhs);
  }

  cm.col_start.assign(cm.cols + 1, 0);
  for (std::size_t j = 0; j < cm.cols; ++j) cm.col_start[j + 1] = cm.col_start[j] + col_count[j];
  cm.col_row.resize(cm.row_col.size());
  cm.col_val.resize(cm.row_col.size());
  std::vector<std::size_t> fill(cm.col_start.begin(), cm.col_start.end() - 1);
  for (std::size_t i = 0; i < cm.rows; ++i) {
    for (std::size_t e = cm.row_start[i]; e < cm.row_start[i + 1]; ++e) {
      std::size_t j = cm.row_col[e];
      cm.col_row[fill[j]] = static_cast<std::uint32_t>(i);
      cm.col_val[fill[j]] = cm.row_val[e];
      ++fill[j];
    }
  }
  return cm;
}

Propagator::Propagator(const CompiledModel& cm, double tol)
    : cm_(cm), tol_(tol), lb_(cm.lb), ub_(cm.ub), minact_(cm.rows, 0.0), maxact_(cm.rows, 0.0),
      queued_(cm.rows, 0) {
  for (std::size_t i = 0; i < cm.rows; ++i) {
    for (std::size_t e = cm.row_start[i]; e < cm.row_start[i + 1]; ++e) {
      const double a = cm.row_val[e];
      const std::size_t j = cm.row_col[e];
      minact_[i] += a > 0 ? a * lb_[j] : a * ub_[j];
      maxact_[i] += a > 0 ? a * ub_[j] : a * lb_[j];
    }
  }
}

bool Propagator::row_redundant(std::size_t row) const {
  return maxact_[row] <= cm_.row_hi[row] + tol_ && minact_[row] >= cm_.row_lo[row] - tol_;
}

void Propagator::set_bounds(std::size_t col, double lo, double hi) {
  const double dlo = lo - lb_[col];
  const double dhi = hi - ub_[col];
  for (std::size_t e = cm_.col_start[col]; e < cm_.col_start[col + 1]; ++e) {
    const double a = cm_.col_val[e];
    const std::size_t i = cm_.col_row[e];
    if (a > 0) {
      minact_[i] += a * dlo;
      maxact_[i] += a * dhi;
    } else {
      minact_[i] += a * dhi;
      maxact_[i] += a * dlo;
    }
  }
  lb_[col] = lo;
  ub_[col] = hi;
}

void Propagator::enqueue_col(std::size_t col) {
  for (std::size_t e = cm_.col_start[col]; e < cm_.col_start[col + 1]; ++e) {
    const std::uint32_t i = cm_.col_row[e];
    if (!queued_[i]) {
      queued_[i] = 1;
      queue_.push_back(i);
    }
  }
}

bool Propagator::tighten_lb(std::size_t col, double value) {
  if (cm_.integral[col]) value = std::ceil(value - tol_);
  if (value <= lb_[col] + tol_) return true;
  trail_.push_back({static_cast<std::uint32_t>(col), lb_[col], ub_[col]});
  set_bounds(col, value, ub_[col]);
  enqueue_col(col);
  return value <= ub_[col] + tol_;
}

bool Propagator::tighten_ub(std::size_t col, double value) {
  if (cm_.integral[col]) value = std::floor(value + tol_);
  if (value >= ub_[col] - tol_) return true;
  trail_.push_back({static_cast<std::uint32_t>(col), lb_[col], ub_[col]});
  set_bounds(col, lb_[col], value);
  enqueue_col(col);
  return value >= lb_[col] - tol_;
}

void Propagator::undo(std::size_t mark) {
  while (trail_.size() > mark) {
    const Change c = trail_.back();
    trail_.pop_back();
    set_bounds(c.col, c.old_lb, c.old_ub);
  }
  for (std::uint32_t i : queue_) queued_[i] = 0;
  queue_.clear();
}

bool Propagator::process_row(std::size_t i) {
  const double lo = cm_.row_lo[i];
  const double hi = cm_.row_hi[i];
  if (minact_[i] > hi + tol_ || maxact_[i] < lo - tol_) return false;
  const bool hi_active = maxact_[i] > hi + tol_;
  const bool lo_active = minact_[i] < lo - tol_;
  if (!hi_active && !lo_active) return true;

  for (std::size_t e = cm_.row_start[i]; e < cm_.row_start[i + 1]; ++e) {
    const std::size_t j = cm_.row_col[e];
    if (!cm_.integral[j] || ub_[j] - lb_[j] <= tol_) continue;
    const double a = cm_.row_val[e];
    const double span = std::abs(a) * (ub_[j] - lb_[j]);
    ++work_;
    if (hi_active) {
      const double slack = hi - minact_[i];
      if (span > slack + tol_) {
        const bool ok = a > 0 ? tighten_ub(j, lb_[j] + slack / a) : tighten_lb(j, ub_[j] + slack / a);
        if (!ok) return false;
      }
    }
    if (lo_active) {
      const double slack = maxact_[i] - lo;
      if (span > slack + tol_) {
        const bool ok = a > 0 ? tighten_lb(j, ub_[j] - slack / a) : tighten_ub(j, lb_[j] - slack / a);
        if (!ok) return false;
      }
    }
  }
  return minact_[i] <= hi + tol_ && maxact_[i] >= lo - tol_;
}

bool Propagator::propagate_all() {
  for (std::size_t i = 0; i < cm_.rows; ++i) {
    if (!queued_[i]) {
      queued_[i] = 1;
      queue_.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return propagate();
}

bool Propagator::propagate() {
  std::size_t head = 0;
  bool ok = true;
  while (head < queue_.size()) {
    const std::uint32_t i = queue_[head++];
    queued_[i] = 0;
    work_ += 1;
    if (!process_row(i)) {
      ok = false;
      break;
    }
    // Compact occasionally so the queue does not grow without bound.
    if (head > 4096 && head * 2 > queue_.size()) {
      queue_.erase(queue_.begin(), queue_.begin() + static_cast<std::ptrdiff_t>(head));
      head = 0;
    }
  }
  for (std::size_t k = head; k < queue_.size(); ++k) queued_[queue_[k]] = 0;
  queue_.clear();
  return ok;
}

double Propagator::objective_bound() const {
  double v = 0.0;
  for (std::size_t j = 0; j < cm_.cols; ++j) {
    const double c = cm_.obj[j];
    if (c != 0.0) v += c > 0 ? c * ub_[j] : c * lb_[j];
  }
  return v;
}

}  // namespace ballot::detail
