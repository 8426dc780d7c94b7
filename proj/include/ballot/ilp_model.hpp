#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>

namespace ballot {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& r);
bool is_integral(const Rational& r);
/// Decimal text: plain integer when integral, otherwise up to 17 significant digits.
std::string format_rational(const Rational& r);

enum class VarKind { Binary, Integer, Continuous };
enum class Sense { LessEqual, GreaterEqual, Equal };
enum class ObjectiveSense { Maximize, Minimize };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  Rational lower{0};
  Rational upper{0};

  bool integral() const { return kind != VarKind::Continuous; }
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Term {
  std::size_t var = 0;
  Rational coef{0};
  friend bool operator==(const Term&, const Term&) = default;
};

struct LinearConstraint {
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  Rational rhs{0};
  std::string tag;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

struct Objective {
  ObjectiveSense sense = ObjectiveSense::Maximize;
  std::vector<Term> terms;
  friend bool operator==(const Objective&, const Objective&) = default;
};

/// Variables with finite boxes, linear rows, one linear objective.
class LinearProgram {
 public:
  std::size_t add_variable(std::string name, VarKind kind, Rational lower, Rational upper);
  std::size_t add_binary(std::string name) { return add_variable(std::move(name), VarKind::Binary, 0, 1); }

  /// Drops zero coefficients; rejects duplicate or undeclared variables.
  std::size_t add_constraint(LinearConstraint c);
  void set_objective(ObjectiveSense sense, std::vector<Term> terms);
  void set_bounds(std::size_t var, Rational lower, Rational upper);

  /// Removes the listed constraints, keeping the relative order of the rest.
  void remove_constraints(const std::vector<std::size_t>& indices);
  /// Removes variables that appear in no constraint and not in the objective,
  /// restricted to `candidates`. Returns old-index -> new-index (nullopt if removed).
  std::vector<std::optional<std::size_t>> remove_unused_variables(const std::vector<std::size_t>& candidates);

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<LinearConstraint>& constraints() const { return rows_; }
  const Objective& objective() const { return objective_; }
  std::size_t variable_count() const { return vars_.size(); }
  std::size_t constraint_count() const { return rows_.size(); }

  friend bool operator==(const LinearProgram& a, const LinearProgram& b) {
    return a.vars_ == b.vars_ && a.rows_ == b.rows_ && a.objective_ == b.objective_;
  }

 private:
  std::vector<Term> checked_terms(std::vector<Term> terms, std::string_view where) const;

  std::vector<Variable> vars_;
  std::vector<LinearConstraint> rows_;
  Objective objective_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

/// Smallest / largest value of sum(terms) over the variable box.
Rational min_activity(const LinearProgram& model, const std::vector<Term>& terms);
Rational max_activity(const LinearProgram& model, const std::vector<Term>& terms);

struct Assignment {
  std::vector<Rational> values;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

Rational evaluate(const std::vector<Term>& terms, const Assignment& a);
Rational objective_value(const LinearProgram& model, const Assignment& a);

struct ConstraintViolation {
  std::size_t constraint = 0;
  std::string tag;
  Rational activity{0};
  Rational rhs{0};
};

struct AssignmentReport {
  std::vector<ConstraintViolation> violated;
  std::vector<std::size_t> fractional;
  std::vector<std::size_t> out_of_bounds;
  Rational objective{0};

  bool feasible() const { return violated.empty() && fractional.empty() && out_of_bounds.empty(); }
};

/// Exact check; a row counts as violated only beyond feas_tol, a value as
/// fractional only beyond int_tol from the nearest integer.
AssignmentReport check_assignment(const LinearProgram& model, const Assignment& a, const Rational& feas_tol,
                                  const Rational& int_tol);

/// One disjunct of an alternative block. Every row must be a <= row; all
/// rows of one alternative are switched on by the same indicator.
using Alternative = std::vector<LinearConstraint>;

/// Requires at least k of the alternatives to hold. Each alternative gets a
/// fresh binary indicator y; every row `expr <= rhs` becomes
/// `expr + M y <= rhs + M`, and `sum y >= k` is added.
///
/// Throws std::invalid_argument for an empty list, a non-<= row, k outside
/// 1..alternatives, or an M smaller than some row's box activity minus rhs.
std::vector<std::size_t> add_alternative_block(LinearProgram& model, const std::vector<Alternative>& alternatives,
                                               std::size_t k, const Rational& big_m, const std::string& prefix,
                                               const std::string& tag);

/// Single-row convenience overload.
std::vector<std::size_t> add_alternative_block(LinearProgram& model,
                                               const std::vector<LinearConstraint>& alternatives, std::size_t k,
                                               const Rational& big_m, const std::string& prefix,
                                               const std::string& tag);

}  // namespace ballot
