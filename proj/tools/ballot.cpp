#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ballot/control.hpp"
#include "ballot/encoders.hpp"
#include "ballot/lp_format.hpp"
#include "ballot/oracle.hpp"
#include "ballot/preflib.hpp"
#include "ballot/rules.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using namespace ballot;

namespace {

enum Exit : int {
  kOk = 0,
  kMismatch = 1,
  kParse = 2,
  kProfile = 3,
  kUnsupported = 4,
  kOracleLimit = 5,
};

// Carries an exit code up to main together with the message for stderr.
struct Failure {
  int code;
  std::string message;
};

const std::vector<std::string> kRules{"range", "approval", "condorcet", "plurality", "maximin", "bucklin"};
const std::vector<std::string> kActions{"delete-voters", "delete-candidates", "voters", "candidates"};
const std::vector<std::string> kModes{"constructive", "destructive"};

Election load(const std::string& path) {
  try {
    return load_election(path);
  } catch (const std::exception& e) {
    throw Failure{kParse, path + ": " + e.what()};
  }
}

struct ControlArgs {
  std::string rule = "condorcet";
  std::string action = "delete-voters";
  std::string mode = "constructive";
  int target = 1;
  std::string input;
  double time_limit = 0;

  void add_to(CLI::App* app, bool with_input = true) {
    app->add_option("--rule", rule, "Voting rule")->required()->check(CLI::IsMember(kRules));
    app->add_option("--action", action, "Control action")->required()->check(CLI::IsMember(kActions));
    app->add_option("--mode", mode, "constructive or destructive")->check(CLI::IsMember(kModes));
    app->add_option("--target", target, "Target candidate (1-based)");
    if (with_input) app->add_option("--input", input, "PrefLib file or score CSV")->required();
  }

  ControlSpec spec() const {
    ControlSpec s{parse_rule(rule), parse_action(action), parse_mode(mode), CandidateId{target}};
    if (!is_supported(s.rule, s.action)) {
      throw Failure{kUnsupported, "no encoding for " + std::string(to_string(s.rule)) + " with " +
                                      std::string(to_string(s.action))};
    }
    return s;
  }

  SolverConfig solver() const {
    SolverConfig c;
    if (time_limit > 0) c.time_limit_seconds = time_limit;
    return c;
  }
};

void check_target(const Election& e, const ControlSpec& spec) {
  if (spec.target.value < 1 || spec.target.pos() >= e.candidate_count()) {
    throw Failure{kParse, "target " + std::to_string(spec.target.value) + " is not a candidate (1.." +
                              std::to_string(e.candidate_count()) + ")"};
  }
}

Json candidate_json(const Election& e, std::optional<CandidateId> c) {
  if (!c) return nullptr;
  return Json{{"id", c->value}, {"name", e.name(*c)}};
}

Json solution_json(const Election& e, const ControlSolution& s) {
  Json out;
  out["status"] = to_string(s.status);
  const bool solved = s.status == ControlStatus::Optimal;
  out["objective"] = solved ? Json(s.objective) : Json(nullptr);
  out["kept"] = solved ? Json(s.kept) : Json::array();
  out["deleted"] = solved ? Json(s.deleted) : Json::array();
  if (s.verification) {
    out["verification"] = {{"winner", candidate_json(e, s.verification->winner)},
                           {"target_wins", s.verification->target_wins},
                           {"consistent", s.verification->consistent}};
  } else {
    out["verification"] = nullptr;
  }
  return out;
}

Json solver_json(const ControlRun& run) {
  return {{"status", to_string(run.solve.status)},
          {"variables", run.variables},
          {"constraints", run.constraints},
          {"nodes", run.solve.nodes_explored},
          {"branchings", run.solve.branchings},
          {"lp_solves", run.solve.lp_solves},
          {"simplex_iterations", run.solve.simplex_iterations}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

// Runs the builtin solver, mapping library errors onto exit codes.
ControlRun run_control(const Election& e, const ControlSpec& spec, const ControlOptions& opts) {
  try {
    return solve_control(e, spec, opts);
  } catch (const UnsupportedControl& ex) {
    throw Failure{kProfile, ex.what()};
  }
}

Json spec_json(const ControlSpec& spec) {
  return {{"rule", to_string(spec.rule)},
          {"action", to_string(spec.action)},
          {"mode", to_string(spec.mode)},
          {"target", spec.target.value}};
}

int cmd_winner(const std::string& rule_name, const std::string& input) {
  const Election e = load(input);
  const Rule rule = parse_rule(rule_name);
  WinnerOutcome w;
  if (rule == Rule::Range) {
    w = range_winner(range_scores(e));
  } else {
    if (e.strict() == nullptr) throw Failure{kProfile, "rule '" + rule_name + "' needs strict orders"};
    w = winner_of(rule, e);
  }
  Json out;
  out["rule"] = to_string(rule);
  out["winner"] = candidate_json(e, w.winner);
  out["tally"] = w.tally;
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int cmd_control(const ControlArgs& args, const std::string& engine, const std::string& out_lp,
                const std::string& out_mps) {
  const Election e = load(args.input);
  const ControlSpec spec = args.spec();
  check_target(e, spec);

  Json out = spec_json(spec);
  if (!out_lp.empty() || !out_mps.empty() || engine == "export-only") {
    EncodedProblem p;
    try {
      const NormalizedControl norm = normalize_target(e, spec);
      p = encode_control(norm.election, norm.spec);
    } catch (const UnsupportedControl& ex) {
      throw Failure{kProfile, ex.what()};
    }
    if (!out_lp.empty()) write_file(out_lp, export_lp(p.model));
    if (!out_mps.empty()) write_file(out_mps, export_mps(p.model));
    if (engine == "export-only") {
      out["engine"] = "export-only";
      out["variables"] = p.model.variable_count();
      out["constraints"] = p.model.constraint_count();
      out["lp"] = out_lp.empty() ? Json(nullptr) : Json(out_lp);
      out["mps"] = out_mps.empty() ? Json(nullptr) : Json(out_mps);
      std::cout << out.dump(2) << "\n";
      return kOk;
    }
  }

  ControlOptions opts;
  opts.solver = args.solver();
  const ControlRun run = run_control(e, spec, opts);
  out["engine"] = "builtin";
  out.update(solution_json(e, run.solution));
  out["solver"] = solver_json(run);
  std::cout << out.dump(2) << "\n";
  return kOk;
}

// Drops the rows that make the target win, so the solver keeps everything.
void corrupt(EncodedProblem& p) {
  p.model.remove_constraints(p.winner_rows);
  p.winner_rows.clear();
}

int cmd_verify(const ControlArgs& args, std::uint64_t oracle_limit, bool corrupt_model) {
  const Election e = load(args.input);
  const ControlSpec spec = args.spec();
  check_target(e, spec);

  ControlSolution oracle;
  try {
    oracle = brute_force_control(e, spec, oracle_limit);
  } catch (const OracleLimitExceeded& ex) {
    throw Failure{kOracleLimit, ex.what()};
  } catch (const UnsupportedControl& ex) {
    throw Failure{kProfile, ex.what()};
  }

  ControlOptions opts;
  opts.solver = args.solver();
  opts.strict_verification = false;
  if (corrupt_model) opts.tamper = corrupt;
  const ControlRun run = run_control(e, spec, opts);
  const ControlSolution& sol = run.solution;

  const bool solved = sol.status == ControlStatus::Optimal || sol.status == ControlStatus::Infeasible;
  bool match = solved && sol.status == oracle.status;
  if (match && sol.status == ControlStatus::Optimal) {
    match = sol.objective == oracle.objective && sol.verification && sol.verification->consistent;
  }

  auto objective = [](const ControlSolution& s) {
    return s.status == ControlStatus::Optimal ? Json(s.objective) : Json(nullptr);
  };
  Json out = spec_json(spec);
  out["match"] = match;
  out["solver_status"] = to_string(sol.status);
  out["oracle_status"] = to_string(oracle.status);
  out["solver_objective"] = objective(sol);
  out["oracle_objective"] = objective(oracle);
  out["solver_kept"] = sol.status == ControlStatus::Optimal ? Json(sol.kept) : Json::array();
  out["oracle_kept"] = oracle.status == ControlStatus::Optimal ? Json(oracle.kept) : Json::array();
  std::cout << out.dump(2) << "\n";
  return match ? kOk : kMismatch;
}

bool is_profile_file(const fs::path& p) {
  static const std::vector<std::string> exts{".soc", ".soi", ".toc", ".toi", ".csv"};
  return fs::is_regular_file(p) && std::find(exts.begin(), exts.end(), p.extension().string()) != exts.end();
}

struct BenchRow {
  std::string file;
  std::size_t m = 0;
  std::size_t n = 0;
  std::string status;
  std::optional<std::int64_t> objective;
  double wall_time = 0;
  std::uint64_t nodes = 0;
};

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", t);
  return buf;
}

// Summary per candidate-count class over instances that finished
// (Optimal or Infeasible).
std::string bench_summary(const std::vector<BenchRow>& rows) {
  struct Class {
    const char* label;
    std::size_t lo, hi;
  };
  const Class classes[] = {{"1-9", 1, 9}, {"10-99", 10, 99}, {"100-199", 100, 199}, {"200+", 200, SIZE_MAX}};
  std::string out = "class,instances,solved,timed_out,min,median,average,max\n";
  for (const Class& c : classes) {
    std::size_t total = 0, timed_out = 0;
    std::vector<double> times;
    for (const BenchRow& r : rows) {
      if (r.m < c.lo || r.m > c.hi) continue;
      ++total;
      if (r.status == "Optimal" || r.status == "Infeasible") times.push_back(r.wall_time);
      if (r.status == "TimedOut") ++timed_out;
    }
    out += std::string(c.label) + "," + std::to_string(total) + "," + std::to_string(times.size()) + "," +
           std::to_string(timed_out);
    if (times.empty()) {
      out += ",,,,\n";
      continue;
    }
    std::sort(times.begin(), times.end());
    const std::size_t k = times.size();
    const double median = k % 2 ? times[k / 2] : (times[k / 2 - 1] + times[k / 2]) / 2;
    double sum = 0;
    for (double t : times) sum += t;
    out += "," + fmt_time(times.front()) + "," + fmt_time(median) + "," + fmt_time(sum / static_cast<double>(k)) +
           "," + fmt_time(times.back()) + "\n";
  }
  return out;
}

int cmd_bench(const ControlArgs& args, const std::string& suite, const std::string& out_csv) {
  const ControlSpec spec = args.spec();
  if (!fs::is_directory(suite)) throw Failure{kParse, suite + ": not a directory"};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(suite)) {
    if (is_profile_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<BenchRow> rows;
  for (const fs::path& f : files) {
    BenchRow row;
    row.file = f.filename().string();
    try {
      const Election e = load_election(f);
      row.m = e.candidate_count();
      row.n = e.voter_count();
      ControlSpec s = spec;
      if (s.target.pos() >= row.m) throw std::invalid_argument("target out of range");
      ControlOptions opts;
      opts.solver = args.solver();
      const ControlRun run = solve_control(e, s, opts);
      row.status = to_string(run.solution.status);
      if (run.solution.status == ControlStatus::Optimal) row.objective = run.solution.objective;
      row.wall_time = run.solve.wall_time;
      row.nodes = run.solve.nodes_explored;
    } catch (const UnsupportedControl& ex) {
      row.status = "Unsupported";
      std::cerr << row.file << ": " << ex.what() << "\n";
    } catch (const std::exception& ex) {
      row.status = "Error";
      std::cerr << row.file << ": " << ex.what() << "\n";
    }
    rows.push_back(row);
  }

  std::string csv = "file,m,n,status,objective,wall_time,nodes\n";
  for (const BenchRow& r : rows) {
    csv += r.file + "," + std::to_string(r.m) + "," + std::to_string(r.n) + "," + r.status + "," +
           (r.objective ? std::to_string(*r.objective) : "") + "," + fmt_time(r.wall_time) + "," +
           std::to_string(r.nodes) + "\n";
  }
  const std::string summary = bench_summary(rows);
  write_file(out_csv, csv + "\n" + summary);
  std::cout << summary;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Election control by voter or candidate deletion, solved as integer programs"};
  app.require_subcommand(1);

  std::string rule, input;
  auto* winner = app.add_subcommand("winner", "Report the rule winner of a profile");
  winner->add_option("--rule", rule, "Voting rule")->required()->check(CLI::IsMember(kRules));
  winner->add_option("--input", input, "PrefLib file or score CSV")->required();

  ControlArgs control_args;
  std::string engine = "builtin", out_lp, out_mps;
  auto* control = app.add_subcommand("control", "Solve a control instance");
  control_args.add_to(control);
  control->add_option("--engine", engine, "builtin or export-only")
      ->check(CLI::IsMember({"builtin", "export-only"}));
  control->add_option("--time-limit", control_args.time_limit, "Seconds; 0 means none")->check(CLI::NonNegativeNumber);
  control->add_option("--out-lp", out_lp, "Write the model in LP format");
  control->add_option("--out-mps", out_mps, "Write the model in MPS format");

  ControlArgs verify_args;
  std::uint64_t oracle_limit = std::uint64_t{1} << 16;
  bool corrupt_model = false;
  auto* verify = app.add_subcommand("verify", "Compare the solver against brute force");
  verify_args.add_to(verify);
  verify->add_option("--oracle-limit", oracle_limit, "Largest subset count the oracle may enumerate");
  verify->add_option("--time-limit", verify_args.time_limit, "Seconds; 0 means none")->check(CLI::NonNegativeNumber);
  verify->add_flag("--corrupt-model", corrupt_model)->group("");

  ControlArgs bench_args;
  std::string suite, out_csv;
  bench_args.time_limit = 60;
  auto* bench = app.add_subcommand("bench", "Solve every profile in a directory");
  bench_args.add_to(bench, false);
  bench->add_option("--suite", suite, "Directory of PrefLib files")->required();
  bench->add_option("--timeout", bench_args.time_limit, "Seconds per instance")->check(CLI::PositiveNumber);
  bench->add_option("--out", out_csv, "CSV report path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*winner) return cmd_winner(rule, input);
    if (*control) {
      if (engine == "export-only" && out_lp.empty() && out_mps.empty()) {
        throw Failure{kParse, "export-only needs --out-lp or --out-mps"};
      }
      return cmd_control(control_args, engine, out_lp, out_mps);
    }
    if (*verify) return cmd_verify(verify_args, oracle_limit, corrupt_model);
    if (*bench) return cmd_bench(bench_args, suite, out_csv);
  } catch (const Failure& f) {
    std::cerr << "ballot: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "ballot: " << e.what() << "\n";
    return kParse;
  }
  return kOk;
}
