#include "ballot/ilp_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace ballot {

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

bool is_integral(const Rational& r) { return r.denominator() == 1; }

std::string format_rational(const Rational& r) {
  if (is_integral(r)) return std::to_string(r.numerator());
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", to_double(r));
  return buf;
}

std::size_t LinearProgram::add_variable(std::string name, VarKind kind, Rational lower, Rational upper) {
  if (name.empty()) throw std::invalid_argument("variable name must not be empty");
  if (by_name_.count(name)) throw std::invalid_argument("duplicate variable name '" + name + "'");
  if (lower > upper) throw std::invalid_argument("variable '" + name + "' has lower > upper");
  if (kind == VarKind::Binary && (lower != Rational{0} || upper != Rational{1})) {
    throw std::invalid_argument("binary variable '" + name + "' must have bounds [0,1]");
  }
  if (kind != VarKind::Continuous && (!is_integral(lower) || !is_integral(upper))) {
    throw std::invalid_argument("integer variable '" + name + "' needs integral bounds");
  }
  by_name_.emplace(name, vars_.size());
  vars_.push_back({std::move(name), kind, lower, upper});
  return vars_.size() - 1;
}

std::vector<Term> LinearProgram::checked_terms(std::vector<Term> terms, std::string_view where) const {
  std::set<std::size_t> seen;
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const Term& t : terms) {
    if (t.var >= vars_.size()) throw std::invalid_argument(std::string(where) + " references an undeclared variable");
    if (!seen.insert(t.var).second) {
      throw std::invalid_argument(std::string(where) + " repeats variable '" + vars_[t.var].name + "'");
    }
    if (t.coef != Rational{0}) out.push_back(t);
  }
  return out;
}

std::size_t LinearProgram::add_constraint(LinearConstraint c) {
  c.terms = checked_terms(std::move(c.terms), "constraint");
  rows_.push_back(std::move(c));
  return rows_.size() - 1;
}

void LinearProgram::set_objective(ObjectiveSense sense, std::vector<Term> terms) {
  objective_ = {sense, checked_terms(std::move(terms), "objective")};
}

void LinearProgram::set_bounds(std::size_t var, Rational lower, Rational upper) {
  Variable& v = vars_.at(var);
  if (lower > upper) throw std::invalid_argument("variable '" + v.name + "' has lower > upper");
  if (v.kind == VarKind::Binary && (lower != Rational{0} || upper != Rational{1})) {
    throw std::invalid_argument("binary variable '" + v.name + "' must have bounds [0,1]");
  }
  v.lower = lower;
  v.upper = upper;
}

void LinearProgram::remove_constraints(const std::vector<std::size_t>& indices) {
  std::vector<bool> drop(rows_.size(), false);
  for (std::size_t i : indices) drop.at(i) = true;
  std::vector<LinearConstraint> kept;
  kept.reserve(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!drop[i]) kept.push_back(std::move(rows_[i]));
  }
  rows_ = std::move(kept);
}

std::vector<std::optional<std::size_t>> LinearProgram::remove_unused_variables(
    const std::vector<std::size_t>& candidates) {
  std::vector<bool> used(vars_.size(), false);
  for (const auto& r : rows_) {
    for (const Term& t : r.terms) used[t.var] = true;
  }
  for (const Term& t : objective_.terms) used[t.var] = true;
  std::vector<bool> drop(vars_.size(), false);
  for (std::size_t v : candidates) drop.at(v) = !used[v];

  std::vector<std::optional<std::size_t>> remap(vars_.size());
  std::vector<Variable> kept;
  by_name_.clear();
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    if (drop[v]) continue;
    remap[v] = kept.size();
    by_name_.emplace(vars_[v].name, kept.size());
    kept.push_back(std::move(vars_[v]));
  }
  vars_ = std::move(kept);
  for (auto& r : rows_) {
    for (Term& t : r.terms) t.var = *remap[t.var];
  }
  for (Term& t : objective_.terms) t.var = *remap[t.var];
  return remap;
}

std::optional<std::size_t> LinearProgram::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t LinearProgram::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw std::out_of_range("no variable named '" + std::string(name) + "'");
}

Rational min_activity(const LinearProgram& model, const std::vector<Term>& terms) {
  Rational sum{0};
  for (const Term& t : terms) {
    const Variable& v = model.variables()[t.var];
    sum += t.coef * (t.coef > Rational{0} ? v.lower : v.upper);
  }
  return sum;
}

Rational max_activity(const LinearProgram& model, const std::vector<Term>& terms) {
  Rational sum{0};
  for (const Term& t : terms) {
    const Variable& v = model.variables()[t.var];
    sum += t.coef * (t.coef > Rational{0} ? v.upper : v.lower);
  }
  return sum;
}

Rational evaluate(const std::vector<Term>& terms, const Assignment& a) {
  Rational sum{0};
  for (const Term& t : terms) sum += t.coef * a.values.at(t.var);
  return sum;
}

Rational objective_value(const LinearProgram& model, const Assignment& a) {
  return evaluate(model.objective().terms, a);
}

AssignmentReport check_assignment(const LinearProgram& model, const Assignment& a, const Rational& feas_tol,
                                  const Rational& int_tol) {
  if (a.values.size() != model.variable_count()) {
    throw std::invalid_argument("assignment covers " + std::to_string(a.values.size()) + " of " +
                                std::to_string(model.variable_count()) + " variables");
  }
  AssignmentReport report;
  for (std::size_t j = 0; j < model.variable_count(); ++j) {
    const Variable& v = model.variables()[j];
    const Rational& x = a.values[j];
    if (x < v.lower - feas_tol || x > v.upper + feas_tol) report.out_of_bounds.push_back(j);
    if (v.integral()) {
      // Distance to the nearest integer.
      Rational fl{boost::rational_cast<std::int64_t>(x)};
      if (fl > x) fl -= 1;
      Rational dist = std::min(x - fl, fl + 1 - x);
      if (dist > int_tol) report.fractional.push_back(j);
    }
  }
  for (std::size_t i = 0; i < model.constraint_count(); ++i) {
    const LinearConstraint& c = model.constraints()[i];
    Rational act = evaluate(c.terms, a);
    bool ok = true;
    switch (c.sense) {
      case Sense::LessEqual: ok = act <= c.rhs + feas_tol; break;
      case Sense::GreaterEqual: ok = act >= c.rhs - feas_tol; break;
      case Sense::Equal: ok = act <= c.rhs + feas_tol && act >= c.rhs - feas_tol; break;
    }
    if (!ok) report.violated.push_back({i, c.tag, act, c.rhs});
  }
  report.objective = objective_value(model, a);
  return report;
}

std::vector<std::size_t> add_alternative_block(LinearProgram& model, const std::vector<Alternative>& alternatives,
                                               std::size_t k, const Rational& big_m, const std::string& prefix,
                                               const std::string& tag) {
  if (alternatives.empty()) throw std::invalid_argument("alternative block needs at least one alternative");
  if (k < 1 || k > alternatives.size()) throw std::invalid_argument("k must lie in 1..number of alternatives");
  for (const Alternative& alt : alternatives) {
    if (alt.empty()) throw std::invalid_argument("alternative without constraints");
    for (const LinearConstraint& c : alt) {
      if (c.sense != Sense::LessEqual) throw std::invalid_argument("alternatives must be <= constraints");
      if (max_activity(model, c.terms) - c.rhs > big_m) {
        throw std::invalid_argument("big-M " + format_rational(big_m) + " too small for alternative '" + c.tag + "'");
      }
    }
  }
  std::vector<std::size_t> indicators;
  for (std::size_t a = 0; a < alternatives.size(); ++a) {
    std::size_t y = model.add_binary(prefix + "_" + std::to_string(a + 1));
    indicators.push_back(y);
    for (const LinearConstraint& c : alternatives[a]) {
      LinearConstraint row = c;
      row.terms.push_back({y, big_m});
      row.rhs += big_m;
      model.add_constraint(std::move(row));
    }
  }
  LinearConstraint cover;
  for (std::size_t y : indicators) cover.terms.push_back({y, 1});
  cover.sense = Sense::GreaterEqual;
  cover.rhs = static_cast<std::int64_t>(k);
  cover.tag = tag;
  model.add_constraint(std::move(cover));
  return indicators;
}

std::vector<std::size_t> add_alternative_block(LinearProgram& model,
                                               const std::vector<LinearConstraint>& alternatives, std::size_t k,
                                               const Rational& big_m, const std::string& prefix,
                                               const std::string& tag) {
  std::vector<Alternative> grouped;
  grouped.reserve(alternatives.size());
  for (const LinearConstraint& c : alternatives) grouped.push_back({c});
  return add_alternative_block(model, grouped, k, big_m, prefix, tag);
}

}  // namespace ballot
