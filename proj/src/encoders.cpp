#include "ballot/encoders.hpp"

#include <algorithm>
#include <sstream>

#include "ballot/preflib.hpp"

namespace ballot {

namespace {

std::string idx(std::size_t p) { return std::to_string(p + 1); }

LinearConstraint row(std::vector<Term> terms, Sense sense, Rational rhs, std::string tag) {
  return {std::move(terms), sense, rhs, std::move(tag)};
}

Rational r(std::int64_t v) { return Rational{v}; }

struct Builder {
  EncodedProblem p;

  std::size_t var(std::string name, VarKind kind, Rational lo, Rational hi, VarRole role) {
    std::size_t v = p.model.add_variable(std::move(name), kind, lo, hi);
    p.roles.push_back(role);
    return v;
  }
  std::size_t binary(std::string name, VarRole role) { return var(std::move(name), VarKind::Binary, 0, 1, role); }

  std::size_t add(LinearConstraint c, bool winner = false) {
    std::size_t i = p.model.add_constraint(std::move(c));
    if (winner) p.winner_rows.push_back(i);
    return i;
  }

  void maximize_decisions() {
    std::vector<Term> obj;
    for (std::size_t v : p.decision_vars) obj.push_back({v, 1});
    p.model.set_objective(ObjectiveSense::Maximize, std::move(obj));
  }
};

Builder start(ProblemKind kind, std::size_t m, std::size_t n) {
  Builder b;
  b.p.kind = kind;
  b.p.candidates = m;
  b.p.voters = n;
  return b;
}

void add_voter_decisions(Builder& b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) b.p.decision_vars.push_back(b.binary("x_" + idx(j), VarRole::Decision));
}

void add_candidate_decisions(Builder& b, std::size_t m, const std::string& prefix) {
  for (std::size_t i = 0; i < m; ++i) b.p.decision_vars.push_back(b.binary("x_" + idx(i), VarRole::Decision));
  b.add(row({{b.p.decision_vars[0], 1}}, Sense::GreaterEqual, 1, prefix + ":target-kept"));
}

// Depth-order rows shared by both Bucklin models: a rival with a majority at
// depth k forces c1's majority depth below k; c1 needs a majority somewhere.
void add_bucklin_depth_rows(Builder& b, const std::vector<std::vector<std::size_t>>& z, std::size_t m,
                            std::size_t n, const std::string& prefix) {
  const std::int64_t big = bucklin_depth_m(m, n);
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<Term> t;
      for (std::size_t l = 0; l < m; ++l) t.push_back({z[0][l], r(static_cast<std::int64_t>(l) + 1)});
      t.push_back({z[i][k], r(big - static_cast<std::int64_t>(k) - 1)});
      b.add(row(std::move(t), Sense::LessEqual, r(big - 1), prefix + ":depth-order"), true);
    }
  }
  std::vector<Term> t;
  for (std::size_t l = 0; l < m; ++l) t.push_back({z[0][l], 1});
  b.add(row(std::move(t), Sense::GreaterEqual, 1, prefix + ":target-majority"), true);
}

std::vector<std::vector<std::size_t>> find_grid(const LinearProgram& model, const std::string& stem, std::size_t rows,
                                                std::size_t cols) {
  std::vector<std::vector<std::size_t>> g(rows, std::vector<std::size_t>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) g[i][k] = model.index_of(stem + "_" + idx(i) + "_" + idx(k));
  }
  return g;
}

// Bucklin destructive alternatives over exact majority indicators z: some
// rival reaches a majority at a depth where c1 has none yet, or c1 never does.
std::vector<Alternative> bucklin_rival_alternatives(const std::vector<std::vector<std::size_t>>& z, std::size_t m,
                                                    const std::string& prefix) {
  std::vector<Alternative> alts;
  const std::string tag = prefix + ":rival-not-behind";
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t l = 0; l < m; ++l) {
      Alternative a{row({{z[i][l], -1}}, Sense::LessEqual, -1, tag)};
      if (l > 0) a.push_back(row({{z[0][l - 1], 1}}, Sense::LessEqual, 0, tag));
      alts.push_back(std::move(a));
    }
  }
  alts.push_back({row({{z[0][m - 1], 1}}, Sense::LessEqual, 0, prefix + ":target-no-majority")});
  return alts;
}

Rational required_m(const LinearProgram& model, const std::vector<Alternative>& alts) {
  Rational big{0};
  for (const Alternative& a : alts) {
    for (const LinearConstraint& c : a) big = std::max(big, max_activity(model, c.terms) - c.rhs);
  }
  return big;
}

}  // namespace

BitMatrix dominance_row_matrix(const StrictProfile& profile) {
  const std::size_t m = profile.candidate_count();
  if (m < 2) throw std::invalid_argument("dominance matrix needs at least two candidates");
  BitMatrix a(m - 1, std::vector<int>(profile.voter_count(), 0));
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t j = 0; j < profile.voter_count(); ++j) {
      a[i - 1][j] = profile.prefers(j, CandidateId{1}, CandidateId::from_pos(i)) ? 1 : 0;
    }
  }
  return a;
}

std::vector<BitMatrix> dominance_cube(const StrictProfile& profile) {
  const std::size_t m = profile.candidate_count();
  std::vector<BitMatrix> cube;
  cube.reserve(profile.voter_count());
  for (std::size_t j = 0; j < profile.voter_count(); ++j) {
    BitMatrix a(m, std::vector<int>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        a[i][k] = i != k && profile.prefers(j, CandidateId::from_pos(i), CandidateId::from_pos(k)) ? 1 : 0;
      }
    }
    cube.push_back(std::move(a));
  }
  return cube;
}

std::vector<BitMatrix> bucklin_position_cube(const StrictProfile& profile) {
  const std::size_t m = profile.candidate_count();
  std::vector<BitMatrix> cube;
  cube.reserve(profile.voter_count());
  for (std::size_t j = 0; j < profile.voter_count(); ++j) {
    BitMatrix a(m, std::vector<int>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
      const auto rank = static_cast<std::size_t>(profile.rank_of(j, CandidateId::from_pos(i)));
      for (std::size_t k = rank - 1; k < m; ++k) a[i][k] = 1;
    }
    cube.push_back(std::move(a));
  }
  return cube;
}

std::string format_matrix(const BitMatrix& a) {
  std::ostringstream os;
  for (const auto& line : a) {
    for (std::size_t k = 0; k < line.size(); ++k) os << (k ? " " : "") << line[k];
    os << '\n';
  }
  return os.str();
}

std::string_view to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::Range: return "RE";
    case ProblemKind::Condorcet: return "CE";
    case ProblemKind::Plurality: return "PE";
    case ProblemKind::Maximin: return "MME";
    case ProblemKind::BucklinVoters: return "BEV";
    case ProblemKind::BucklinCandidates: return "BEC";
  }
  return "?";
}

ProblemKind problem_kind(Rule rule, Action action) {
  if (!is_supported(rule, action)) {
    throw UnsupportedControl("no encoding for " + std::string(to_string(rule)) + " with " +
                             std::string(to_string(action)));
  }
  switch (rule) {
    case Rule::Range: return ProblemKind::Range;
    case Rule::Condorcet: return ProblemKind::Condorcet;
    case Rule::Plurality: return ProblemKind::Plurality;
    case Rule::Maximin: return ProblemKind::Maximin;
    case Rule::Bucklin:
      return action == Action::DeleteVoters ? ProblemKind::BucklinVoters : ProblemKind::BucklinCandidates;
  }
  throw std::logic_error("unreachable");
}

Action EncodedProblem::action() const {
  return kind == ProblemKind::Plurality || kind == ProblemKind::BucklinCandidates ? Action::DeleteCandidates
                                                                                  : Action::DeleteVoters;
}

std::int64_t bucklin_depth_m(std::size_t candidates, std::size_t voters) {
  return static_cast<std::int64_t>(std::max(voters, candidates + 1));
}

EncodedProblem encode_range(const ScoreMatrix& scores) {
  const std::size_t m = scores.candidate_count();
  const std::size_t n = scores.voter_count();
  Builder b = start(ProblemKind::Range, m, n);
  add_voter_decisions(b, n);
  for (std::size_t i = 1; i < m; ++i) {
    std::vector<Term> t;
    for (std::size_t j = 0; j < n; ++j) {
      t.push_back({b.p.decision_vars[j], r(scores.at(CandidateId{1}, j) - scores.at(CandidateId::from_pos(i), j))});
    }
    b.add(row(std::move(t), Sense::GreaterEqual, 1, "RE:score-dominance"), true);
  }
  b.maximize_decisions();
  return std::move(b.p);
}

EncodedProblem encode_condorcet(const StrictProfile& profile) {
  const std::size_t m = profile.candidate_count();
  const std::size_t n = profile.voter_count();
  Builder b = start(ProblemKind::Condorcet, m, n);
  add_voter_decisions(b, n);
  if (m >= 2) {
    const BitMatrix a = dominance_row_matrix(profile);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      std::vector<Term> t;
      for (std::size_t j = 0; j < n; ++j) t.push_back({b.p.decision_vars[j], r(2 * a[i][j] - 1)});
      b.add(row(std::move(t), Sense::GreaterEqual, 1, "CE:pairwise-majority"), true);
    }
  }
  b.maximize_decisions();
  return std::move(b.p);
}

EncodedProblem encode_plurality(const StrictProfile& profile) {
  const std::size_t m = profile.candidate_count();
  const std::size_t n = profile.voter_count();
  const auto cube = dominance_cube(profile);
  const auto mm = static_cast<std::int64_t>(m);
  Builder b = start(ProblemKind::Plurality, m, n);
  add_candidate_decisions(b, m, "PE");
  const auto& x = b.p.decision_vars;

  std::vector<std::vector<std::size_t>> z(n, std::vector<std::size_t>(m));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) z[j][i] = b.binary("z_" + idx(j) + "_" + idx(i), VarRole::IndicatorZ);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Term> t;
      for (std::size_t k = 0; k < m; ++k) {
        if (cube[j][k][i]) t.push_back({x[k], 1});
      }
      std::vector<Term> upper = t;
      upper.push_back({z[j][i], r(mm)});
      b.add(row(std::move(upper), Sense::LessEqual, r(mm), "PE:top-exclusion"));
      t.push_back({z[j][i], 1});
      t.push_back({x[i], -1});
      b.add(row(std::move(t), Sense::GreaterEqual, 0, "PE:top-inclusion"));
    }
  }
  for (std::size_t i = 1; i < m; ++i) {
    std::vector<Term> t;
    for (std::size_t j = 0; j < n; ++j) t.push_back({z[j][i], 1});
    t.push_back({x[i], r(-static_cast<std::int64_t>(n))});
    b.add(row(std::move(t), Sense::LessEqual, 0, "PE:deleted-no-votes"));
  }
  for (std::size_t i = 1; i < m; ++i) {
    std::vector<Term> t;
    for (std::size_t j = 0; j < n; ++j) t.push_back({z[j][0], 1});
    for (std::size_t j = 0; j < n; ++j) t.push_back({z[j][i], -1});
    b.add(row(std::move(t), Sense::GreaterEqual, 1, "PE:plurality-dominance"), true);
  }
  b.maximize_decisions();
  return std::move(b.p);
}

EncodedProblem encode_maximin(const StrictProfile& profile) {
  const std::size_t m = profile.candidate_count();
  const std::size_t n = profile.voter_count();
  const auto nn = static_cast<std::int64_t>(n);
  const auto cube = dominance_cube(profile);
  Builder b = start(ProblemKind::Maximin, m, n);
  add_voter_decisions(b, n);
  const auto& x = b.p.decision_vars;

  std::vector<std::vector<std::size_t>> z(m, std::vector<std::size_t>(m, 0));
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      if (k != i) z[i][k] = b.binary("z_" + idx(i) + "_" + idx(k), VarRole::IndicatorZ);
    }
  }
  const std::size_t bv = b.var("b", VarKind::Integer, 1, r(nn), VarRole::Threshold);

  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      if (k == i) continue;
      std::vector<Term> t;
      for (std::size_t j = 0; j < n; ++j) {
        if (cube[j][i][k]) t.push_back({x[j], 1});
      }
      t.push_back({z[i][k], r(nn)});
      t.push_back({bv, -1});
      b.add(row(std::move(t), Sense::LessEqual, r(nn - 1), "MME:rival-bounded"), true);
    }
  }
  for (std::size_t i = 1; i < m; ++i) {
    std::vector<Term> t;
    for (std::size_t k = 0; k < m; ++k) {
      if (k != i) t.push_back({z[i][k], 1});
    }
    b.add(row(std::move(t), Sense::GreaterEqual, 1, "MME:rival-weak-pair"), true);
  }
  for (std::size_t k = 1; k < m; ++k) {
    std::vector<Term> t{{bv, 1}};
    for (std::size_t j = 0; j < n; ++j) {
      if (cube[j][0][k]) t.push_back({x[j], -1});
    }
    b.add(row(std::move(t), Sense::LessEqual, 0, "MME:target-floor"), true);
  }
  b.maximize_decisions();
  return std::move(b.p);
}

EncodedProblem encode_bucklin_voters(const StrictProfile& profile) {
  const std::size_t m = profile.candidate_count();
  const std::size_t n = profile.voter_count();
  const auto nn = static_cast<std::int64_t>(n);
  const auto cube = bucklin_position_cube(profile);
  Builder b = start(ProblemKind::BucklinVoters, m, n);
  add_voter_decisions(b, n);
  const auto& x = b.p.decision_vars;

  std::vector<std::vector<std::size_t>> z(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) z[i][k] = b.binary("z_" + idx(i) + "_" + idx(k), VarRole::IndicatorZ);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<Term> t;
      for (std::size_t j = 0; j < n; ++j) t.push_back({x[j], r(1 - 2 * cube[j][i][k])});
      t.push_back({z[i][k], r(2 * nn)});
      if (i > 0) b.add(row(t, Sense::GreaterEqual, 0, "BEV:majority-exact"));
      b.add(row(std::move(t), Sense::LessEqual, r(2 * nn - 1), "BEV:majority-indicator"));
    }
  }
  add_bucklin_depth_rows(b, z, m, n, "BEV");
  b.maximize_decisions();
  return std::move(b.p);
}

EncodedProblem encode_bucklin_candidates(const StrictProfile& profile) {
  const std::size_t m = profile.candidate_count();
  const std::size_t n = profile.voter_count();
  const auto nn = static_cast<std::int64_t>(n);
  const auto mm = static_cast<std::int64_t>(m);
  const auto cube = dominance_cube(profile);
  Builder b = start(ProblemKind::BucklinCandidates, m, n);
  add_candidate_decisions(b, m, "BEC");
  const auto& x = b.p.decision_vars;

  // y[j][i][l]: candidate i sits within the top l+1 of voter j's restricted ranking.
  std::vector<std::vector<std::vector<std::size_t>>> y(
      n, std::vector<std::vector<std::size_t>>(m, std::vector<std::size_t>(m)));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t l = 0; l < m; ++l) {
        y[j][i][l] = b.binary("y_" + idx(j) + "_" + idx(i) + "_" + idx(l), VarRole::IndicatorY);
      }
    }
  }
  std::vector<std::vector<std::size_t>> z(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < m; ++l) z[i][l] = b.binary("z_" + idx(i) + "_" + idx(l), VarRole::IndicatorZ);
  }

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Term> above;
      for (std::size_t k = 0; k < m; ++k) {
        if (cube[j][k][i]) above.push_back({x[k], 1});
      }
      for (std::size_t l = 0; l < m; ++l) {
        const auto depth = static_cast<std::int64_t>(l) + 1;
        std::vector<Term> upper = above;
        upper.push_back({y[j][i][l], r(mm + 1)});
        b.add(row(std::move(upper), Sense::LessEqual, r(mm + depth), "BEC:position-upper"));
        std::vector<Term> lower = above;
        lower.push_back({y[j][i][l], r(mm)});
        lower.push_back({x[i], r(-mm)});
        b.add(row(std::move(lower), Sense::GreaterEqual, r(depth - mm), "BEC:position-lower"));
      }
    }
  }
  for (std::size_t i = 1; i < m; ++i) {
    std::vector<Term> t;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < m; ++l) t.push_back({y[j][i][l], 1});
    }
    t.push_back({x[i], r(-nn * mm)});
    b.add(row(std::move(t), Sense::LessEqual, 0, "BEC:deleted-no-positions"));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < m; ++l) {
      std::vector<Term> t{{z[i][l], r(2 * nn)}};
      for (std::size_t j = 0; j < n; ++j) t.push_back({y[j][i][l], -2});
      b.add(row(std::move(t), Sense::LessEqual, r(nn - 1), "BEC:majority-indicator"));
      if (i == 0) continue;
      std::vector<Term> u;
      for (std::size_t j = 0; j < n; ++j) u.push_back({y[j][i][l], 2});
      u.push_back({z[i][l], r(-2 * nn)});
      b.add(row(std::move(u), Sense::LessEqual, r(nn), "BEC:majority-exact"));
    }
  }
  add_bucklin_depth_rows(b, z, m, n, "BEC");
  b.maximize_decisions();
  return std::move(b.p);
}

ScoreMatrix range_scores(const Election& election) {
  if (const ScoreMatrix* s = election.scores()) return *s;
  if (const TiedProfile* t = election.tied()) return tied_to_scores(*t);
  return tied_to_scores(TiedProfile::from_strict(*election.strict()));
}

EncodedProblem encode(Rule rule, Action action, const Election& election) {
  const ProblemKind kind = problem_kind(rule, action);
  if (kind == ProblemKind::Range) return encode_range(range_scores(election));
  const StrictProfile* p = election.strict();
  if (p == nullptr) throw UnsupportedControl("rule '" + std::string(to_string(rule)) + "' needs strict orders");
  switch (kind) {
    case ProblemKind::Condorcet: return encode_condorcet(*p);
    case ProblemKind::Plurality: return encode_plurality(*p);
    case ProblemKind::Maximin: return encode_maximin(*p);
    case ProblemKind::BucklinVoters: return encode_bucklin_voters(*p);
    case ProblemKind::BucklinCandidates: return encode_bucklin_candidates(*p);
    case ProblemKind::Range: break;
  }
  throw std::logic_error("unreachable");
}

EncodedProblem make_destructive(const EncodedProblem& problem, const Election& election) {
  if (problem.mode == Mode::Destructive) throw std::invalid_argument("problem is already destructive");
  const std::size_t m = problem.candidates;
  const std::size_t n = problem.voters;
  if (problem.winner_rows.empty() && m >= 2) throw std::invalid_argument("problem has no winner rows");

  EncodedProblem d = problem;
  d.mode = Mode::Destructive;
  d.model.remove_constraints(d.winner_rows);
  d.winner_rows.clear();
  const std::string prefix(to_string(d.kind));

  auto finish = [&](std::size_t first_new) {
    for (std::size_t i = first_new; i < d.model.constraint_count(); ++i) d.winner_rows.push_back(i);
  };
  auto install = [&](const std::vector<Alternative>& alts, Rational big, const std::string& stem) {
    auto ys = add_alternative_block(d.model, alts, 1, big, stem, prefix + ":some-rival");
    d.roles.resize(d.model.variable_count(), VarRole::Alternative);
    return ys;
  };

  const std::size_t first_new = d.model.constraint_count();
  if (m == 1) {
    // The sole candidate always wins, so no deletion can dethrone it.
    d.model.add_constraint(row({}, Sense::GreaterEqual, 1, prefix + ":no-rival"));
    finish(first_new);
    return d;
  }

  const auto& x = d.decision_vars;
  switch (d.kind) {
    case ProblemKind::Range: {
      const ScoreMatrix s = range_scores(election);
      std::vector<Alternative> alts;
      for (std::size_t i = 1; i < m; ++i) {
        std::vector<Term> t;
        for (std::size_t j = 0; j < n; ++j) {
          t.push_back({x[j], r(s.at(CandidateId{1}, j) - s.at(CandidateId::from_pos(i), j))});
        }
        alts.push_back({row(std::move(t), Sense::LessEqual, 0, "RE:rival-not-behind")});
      }
      install(alts, r(static_cast<std::int64_t>(n) * s.max_entry()), "d");
      break;
    }
    case ProblemKind::Condorcet: {
      const BitMatrix a = dominance_row_matrix(*election.strict());
      std::vector<Alternative> alts;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        std::vector<Term> t;
        for (std::size_t j = 0; j < n; ++j) t.push_back({x[j], r(2 * a[i][j] - 1)});
        alts.push_back({row(std::move(t), Sense::LessEqual, 0, "CE:rival-not-behind")});
      }
      install(alts, required_m(d.model, alts), "d");
      break;
    }
    case ProblemKind::Plurality: {
      const auto z = find_grid(d.model, "z", n, m);
      std::vector<Alternative> alts;
      for (std::size_t i = 1; i < m; ++i) {
        std::vector<Term> t;
        for (std::size_t j = 0; j < n; ++j) t.push_back({z[j][0], 1});
        for (std::size_t j = 0; j < n; ++j) t.push_back({z[j][i], -1});
        alts.push_back({row(std::move(t), Sense::LessEqual, 0, "PE:rival-not-behind")});
      }
      install(alts, required_m(d.model, alts), "d");
      break;
    }
    case ProblemKind::Maximin: {
      std::vector<std::size_t> zs;
      for (std::size_t v = 0; v < d.roles.size(); ++v) {
        if (d.roles[v] == VarRole::IndicatorZ) zs.push_back(v);
      }
      const auto remap = d.model.remove_unused_variables(zs);
      std::vector<VarRole> roles;
      for (std::size_t v = 0; v < remap.size(); ++v) {
        if (remap[v]) roles.push_back(d.roles[v]);
      }
      d.roles = std::move(roles);
      for (auto& v : d.decision_vars) v = *remap[v];

      const std::size_t bv = d.model.index_of("b");
      d.model.set_bounds(bv, 0, r(static_cast<std::int64_t>(n)));
      const auto cube = dominance_cube(*election.strict());
      auto advantage = [&](std::size_t i, std::size_t k, int sign) {
        std::vector<Term> t;
        for (std::size_t j = 0; j < n; ++j) {
          if (cube[j][i][k]) t.push_back({x[j], r(sign)});
        }
        return t;
      };
      std::vector<Alternative> low;
      for (std::size_t k = 1; k < m; ++k) {
        auto t = advantage(0, k, 1);
        t.push_back({bv, -1});
        low.push_back({row(std::move(t), Sense::LessEqual, 0, "MME:target-at-most-b")});
      }
      install(low, required_m(d.model, low), "dk");
      std::vector<Alternative> high;
      for (std::size_t i = 1; i < m; ++i) {
        Alternative a;
        for (std::size_t k = 0; k < m; ++k) {
          if (k == i) continue;
          auto t = advantage(i, k, -1);
          t.push_back({bv, 1});
          a.push_back(row(std::move(t), Sense::LessEqual, 0, "MME:rival-at-least-b"));
        }
        high.push_back(std::move(a));
      }
      install(high, required_m(d.model, high), "di");
      break;
    }
    case ProblemKind::BucklinVoters: {
      const auto z = find_grid(d.model, "z", m, m);
      const auto cube = bucklin_position_cube(*election.strict());
      const auto nn = static_cast<std::int64_t>(n);
      for (std::size_t k = 0; k < m; ++k) {
        std::vector<Term> t;
        for (std::size_t j = 0; j < n; ++j) t.push_back({x[j], r(1 - 2 * cube[j][0][k])});
        t.push_back({z[0][k], r(2 * nn)});
        d.model.add_constraint(row(std::move(t), Sense::GreaterEqual, 0, "BEV:majority-exact"));
      }
      const auto alts = bucklin_rival_alternatives(z, m, "BEV");
      install(alts, required_m(d.model, alts), "d");
      break;
    }
    case ProblemKind::BucklinCandidates: {
      const auto z = find_grid(d.model, "z", m, m);
      const auto nn = static_cast<std::int64_t>(n);
      for (std::size_t l = 0; l < m; ++l) {
        std::vector<Term> t;
        for (std::size_t j = 0; j < n; ++j) t.push_back({d.model.index_of("y_" + idx(j) + "_1_" + idx(l)), 2});
        t.push_back({z[0][l], r(-2 * nn)});
        d.model.add_constraint(row(std::move(t), Sense::LessEqual, r(nn), "BEC:majority-exact"));
      }
      const auto alts = bucklin_rival_alternatives(z, m, "BEC");
      install(alts, required_m(d.model, alts), "d");
      break;
    }
  }
  finish(first_new);
  return d;
}

EncodedProblem encode_control(const Election& election, const ControlSpec& spec) {
  if (spec.target != CandidateId{1}) throw std::invalid_argument("encode_control expects the target normalized to 1");
  EncodedProblem p = encode(spec.rule, spec.action, election);
  return spec.mode == Mode::Destructive ? make_destructive(p, election) : p;
}

}  // namespace ballot
