#include "ballot/solver.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

#include "propagator.hpp"
#include "simplex.hpp"

namespace ballot {

namespace {

using detail::CompiledModel;
using detail::LpStatus;
using detail::Propagator;

constexpr double kInf = std::numeric_limits<double>::infinity();
// Margin added to LP bounds before integral-objective pruning.
constexpr double kLpBoundMargin = 1e-7;
constexpr std::uint64_t kDiveBudget = 2000;

Rational tolerance_rational(double tol) {
  return Rational{static_cast<std::int64_t>(std::llround(tol * 1e12)), 1'000'000'000'000LL};
}

Rational value_rational(double v, bool integral) {
  if (integral) return Rational{static_cast<std::int64_t>(std::llround(v))};
  return Rational{static_cast<std::int64_t>(std::llround(v * 1048576.0)), 1048576};
}

struct Decision {
  std::uint32_t var;
  bool upper;  // true: ub := value, false: lb := value
  double value;
  friend bool operator==(const Decision&, const Decision&) = default;
};

struct Node {
  double bound;
  std::uint32_t depth;
  std::uint64_t id;
  std::vector<Decision> path;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

class Search {
 public:
  Search(const LinearProgram& model, const SolverConfig& cfg)
      : model_(model), cfg_(cfg), cm_(detail::compile(model)), prop_(cm_, cfg.feasibility_tol),
        start_(std::chrono::steady_clock::now()) {
    simplex_.feasibility_tol = cfg.feasibility_tol;
    simplex_.optimality_tol = cfg.optimality_tol;
  }

  SolveResult run();

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  bool out_of_time() const { return cfg_.time_limit_seconds && elapsed() >= *cfg_.time_limit_seconds; }

  bool prune(double bound) const {
    if (!best_) return false;
    const double gap = cm_.integral_objective ? 1.0 - 1e-9 : cfg_.optimality_tol;
    return bound <= best_obj_ + gap;
  }

  bool apply(const Decision& d) {
    const bool ok = d.upper ? prop_.tighten_ub(d.var, d.value) : prop_.tighten_lb(d.var, d.value);
    return ok && prop_.propagate();
  }

  // Moves the propagator to the node's path, reusing the common prefix.
  bool goto_path(const std::vector<Decision>& path) {
    std::size_t common = 0;
    while (common < applied_.size() && common < path.size() && applied_[common] == path[common]) ++common;
    if (common < applied_.size()) {
      prop_.undo(marks_[common]);
      applied_.resize(common);
      marks_.resize(common);
    }
    for (std::size_t k = common; k < path.size(); ++k) {
      const std::size_t m = prop_.mark();
      if (!apply(path[k])) {
        prop_.undo(m);
        return false;
      }
      marks_.push_back(m);
      applied_.push_back(path[k]);
    }
    return true;
  }

  bool rows_satisfied(const std::vector<double>& x) const {
    const double tol = cfg_.feasibility_tol;
    for (std::size_t i = 0; i < cm_.rows; ++i) {
      double act = 0.0;
      for (std::size_t e = cm_.row_start[i]; e < cm_.row_start[i + 1]; ++e) act += cm_.row_val[e] * x[cm_.row_col[e]];
      if (act > cm_.row_hi[i] + tol || act < cm_.row_lo[i] - tol) return false;
    }
    return true;
  }

  bool continuous_free() const {
    for (std::size_t j = 0; j < cm_.cols; ++j) {
      if (!cm_.integral[j] && !prop_.fixed(j)) return true;
    }
    return false;
  }

  // Rounds the integral entries and offers the point as incumbent. Returns
  // true when the point is feasible or cannot beat the incumbent anyway.
  bool try_incumbent(const std::vector<double>& x) {
    std::vector<double> xr(x);
    double obj = 0.0;
    for (std::size_t j = 0; j < cm_.cols; ++j) {
      if (cm_.integral[j]) xr[j] = std::round(xr[j]);
      obj += cm_.obj[j] * xr[j];
    }
    if (best_ && obj <= best_obj_ + 1e-9) return true;
    if (!rows_satisfied(xr)) return false;
    Assignment a;
    a.values.reserve(cm_.cols);
    for (std::size_t j = 0; j < cm_.cols; ++j) a.values.push_back(value_rational(xr[j], cm_.integral[j] != 0));
    const AssignmentReport report = check_assignment(model_, a, feas_exact_, int_exact_);
    if (!report.feasible()) return false;
    const Rational internal = cm_.minimize ? -report.objective : report.objective;
    if (best_ && internal <= best_exact_) return true;
    best_ = std::move(a);
    best_exact_ = internal;
    best_obj_ = to_double(internal);
    return true;
  }

  std::optional<std::size_t> first_unfixed(bool objective_only) const {
    for (std::size_t j = 0; j < cm_.cols; ++j) {
      if (!cm_.integral[j] || prop_.fixed(j)) continue;
      if (objective_only && cm_.obj[j] == 0.0) continue;
      return j;
    }
    return std::nullopt;
  }

  void dive();
  void dive_pass(bool greedy);
  void record(double bound);

  const LinearProgram& model_;
  SolverConfig cfg_;
  CompiledModel cm_;
  Propagator prop_;
  detail::SimplexOptions simplex_;
  std::chrono::steady_clock::time_point start_;

  Rational feas_exact_ = tolerance_rational(cfg_.feasibility_tol);
  Rational int_exact_ = tolerance_rational(cfg_.integrality_tol);

  std::vector<Decision> applied_;
  std::vector<std::size_t> marks_;

  std::optional<Assignment> best_;
  Rational best_exact_{0};
  double best_obj_ = -kInf;

  SolveResult result_;
};

void Search::record(double bound) {
  if (!cfg_.record_trace) return;
  TracePoint p;
  p.node = result_.nodes_explored;
  p.bound = cm_.minimize ? -bound : bound;
  if (best_) p.incumbent = cm_.minimize ? -best_obj_ : best_obj_;
  result_.trace.push_back(p);
}

// Depth-first fix-and-propagate from the root with a step budget. The first
// pass tries the objective-preferred end of each domain first; if it finds
// nothing, a second pass tries the other end.
void Search::dive() {
  for (bool greedy : {true, false}) {
    if (best_ || out_of_time()) return;
    dive_pass(greedy);
  }
}

void Search::dive_pass(bool greedy) {
  std::uint64_t steps = 0;
  bool aborted = false;
  std::function<bool()> dfs = [&]() -> bool {
    if (++steps > kDiveBudget || out_of_time()) {
      aborted = true;
      return false;
    }
    std::optional<std::size_t> v = first_unfixed(true);
    if (!v) v = first_unfixed(false);
    if (!v) {
      if (continuous_free()) return false;
      try_incumbent(prop_.lb());
      return best_.has_value();
    }
    const std::size_t j = *v;
    const bool prefer_up = (cm_.obj[j] > 0) == greedy;
    for (int attempt = 0; attempt < 2; ++attempt) {
      const bool up = attempt == 0 ? prefer_up : !prefer_up;
      const std::size_t m = prop_.mark();
      const bool ok = up ? apply({static_cast<std::uint32_t>(j), false, prop_.ub()[j]})
                         : apply({static_cast<std::uint32_t>(j), true, prop_.lb()[j]});
      const bool found = ok && dfs();
      prop_.undo(m);
      if (found) return true;
      if (aborted) return false;
    }
    return false;
  };
  dfs();
}

SolveResult Search::run() {
  cfg_.validate();
  auto finish = [&](SolveStatus status, double bound) {
    result_.status = status;
    if (best_) {
      result_.incumbent = best_;
      result_.objective = cm_.minimize ? -best_exact_ : best_exact_;
    }
    result_.bound = cm_.minimize ? -bound : bound;
    result_.wall_time = elapsed();
    return result_;
  };

  if (!prop_.propagate_all()) return finish(SolveStatus::Infeasible, -kInf);
  dive();

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::uint64_t next_id = 0;
  open.push({kInf, 0, next_id++, {}});

  while (!open.empty()) {
    if (cfg_.node_limit && result_.nodes_explored >= *cfg_.node_limit) {
      return finish(SolveStatus::NodeLimit, std::max(open.top().bound, best_ ? best_obj_ : -kInf));
    }
    if (out_of_time()) return finish(SolveStatus::TimeLimit, std::max(open.top().bound, best_ ? best_obj_ : -kInf));

    Node node = open.top();
    open.pop();
    if (prune(node.bound)) continue;
    ++result_.nodes_explored;
    if (!goto_path(node.path)) {
      record(open.empty() ? -kInf : open.top().bound);
      continue;
    }

    double bound = prop_.objective_bound();
    std::optional<std::vector<double>> lp_x;
    std::vector<char> active(cm_.rows, 0);
    for (std::size_t i = 0; i < cm_.rows; ++i) active[i] = prop_.row_redundant(i) ? 0 : 1;
    if (cfg_.dense_limit > 0 && detail::dense_lp_size(cm_, prop_.lb(), prop_.ub(), active) <= cfg_.dense_limit) {
      detail::LpSolution lp = detail::solve_dense_lp(cm_, prop_.lb(), prop_.ub(), active, simplex_);
      ++result_.lp_solves;
      result_.simplex_iterations += lp.iterations;
      if (lp.status == LpStatus::Infeasible) {
        record(open.empty() ? -kInf : open.top().bound);
        continue;
      }
      if (lp.status == LpStatus::Optimal) {
        bound = std::min(bound, lp.value + kLpBoundMargin);
        lp_x = std::move(lp.x);
      }
    }
    bound = std::min(bound, node.bound);
    if (prune(bound)) {
      record(open.empty() ? -kInf : open.top().bound);
      continue;
    }

    // Pick the branching variable: most fractional LP value, else the first
    // unfixed integral variable (objective variables first).
    std::optional<std::size_t> branch_var;
    double branch_value = 0.0;
    if (lp_x) {
      double best_frac = cfg_.integrality_tol;
      for (std::size_t j = 0; j < cm_.cols; ++j) {
        if (!cm_.integral[j]) continue;
        const double v = (*lp_x)[j];
        const double f = v - std::floor(v);
        const double frac = std::min(f, 1.0 - f);
        if (frac > best_frac + 1e-12) {
          best_frac = frac;
          branch_var = j;
          branch_value = v;
        }
      }
      if (!branch_var && try_incumbent(*lp_x)) {
        record(open.empty() ? -kInf : open.top().bound);
        continue;
      }
      if (branch_var) try_incumbent(*lp_x);
    }
    if (!branch_var) {
      std::optional<std::size_t> v = first_unfixed(true);
      if (!v) v = first_unfixed(false);
      if (!v) {
        if (!lp_x && !continuous_free()) try_incumbent(prop_.lb());
        record(open.empty() ? -kInf : open.top().bound);
        continue;
      }
      branch_var = v;
      branch_value = std::floor((prop_.lb()[*v] + prop_.ub()[*v]) / 2.0) + 0.5;
    }

    const auto var = static_cast<std::uint32_t>(*branch_var);
    ++result_.branchings;
    Node down{bound, node.depth + 1, next_id++, node.path};
    down.path.push_back({var, true, std::floor(branch_value)});
    Node up{bound, node.depth + 1, next_id++, std::move(node.path)};
    up.path.push_back({var, false, std::ceil(branch_value)});
    open.push(std::move(down));
    open.push(std::move(up));
    record(open.top().bound);
  }

  if (best_) return finish(SolveStatus::Optimal, best_obj_);
  return finish(SolveStatus::Infeasible, -kInf);
}

}  // namespace

void SolverConfig::validate() const {
  if (!(feasibility_tol > 0) || !(optimality_tol > 0) || !(integrality_tol > 0)) {
    throw std::invalid_argument("solver tolerances must be positive");
  }
  if (node_limit && *node_limit == 0) throw std::invalid_argument("node limit must be positive");
  if (time_limit_seconds && !(*time_limit_seconds > 0)) throw std::invalid_argument("time limit must be positive");
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::NodeLimit: return "NodeLimit";
    case SolveStatus::TimeLimit: return "TimeLimit";
  }
  return "?";
}

bool SolveResult::same_outcome(const SolveResult& o) const {
  if (status != o.status || incumbent != o.incumbent || objective != o.objective) return false;
  if (nodes_explored != o.nodes_explored || branchings != o.branchings || lp_solves != o.lp_solves) return false;
  if (simplex_iterations != o.simplex_iterations || trace.size() != o.trace.size()) return false;
  if (bound != o.bound && !(std::isnan(bound) && std::isnan(o.bound))) return false;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (trace[k].node != o.trace[k].node || trace[k].bound != o.trace[k].bound ||
        trace[k].incumbent != o.trace[k].incumbent) {
      return false;
    }
  }
  return true;
}

LpRelaxation solve_lp_relaxation(const LinearProgram& model, const std::vector<Fixing>& fixings,
                                 const SolverConfig& config) {
  config.validate();
  const CompiledModel cm = detail::compile(model);
  std::vector<double> lb = cm.lb, ub = cm.ub;
  for (const Fixing& f : fixings) {
    if (f.var >= cm.cols) throw std::invalid_argument("fixing references an undeclared variable");
    lb[f.var] = ub[f.var] = f.value;
  }
  std::vector<char> active(cm.rows, 1);
  detail::SimplexOptions opts;
  opts.feasibility_tol = config.feasibility_tol;
  opts.optimality_tol = config.optimality_tol;
  const detail::LpSolution lp = detail::solve_dense_lp(cm, lb, ub, active, opts);

  LpRelaxation out;
  switch (lp.status) {
    case LpStatus::Optimal:
      out.status = LpRelaxationStatus::Optimal;
      out.value = cm.minimize ? -lp.value : lp.value;
      out.x = lp.x;
      break;
    case LpStatus::Infeasible: out.status = LpRelaxationStatus::Infeasible; break;
    case LpStatus::Unbounded: out.status = LpRelaxationStatus::Unbounded; break;
    case LpStatus::IterationLimit: throw std::runtime_error("simplex iteration limit reached");
  }
  return out;
}

SolveResult solve(const LinearProgram& model, const SolverConfig& config) {
  Search search(model, config);
  return search.run();
}

}  // namespace ballot
