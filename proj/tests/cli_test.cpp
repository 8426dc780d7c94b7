#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ballot/encoders.hpp"
#include "ballot/lp_format.hpp"
#include "ballot/preflib.hpp"
#include "fixtures.hpp"

namespace ballot {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Invocation {
  int code = -1;
  std::string out;
};

Invocation run(const std::string& args) {
  const std::string cmd = std::string(BALLOT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  Invocation r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ballot_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    write("worked.soc", testing::worked_soc_text());
    write("cycle.soc", "3\n1,a\n2,b\n3,c\n3,3,3\n1,1,2,3\n1,2,3,1\n1,3,1,2\n");
    write("tied.toc", "3\n1,a\n2,b\n3,c\n1,1,1\n1,{1,2},3\n");
    write("scores.csv", "3\n2,0,1\n1,1,1\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  fs::path dir_;
};

TEST_F(Cli, WinnerReportsWinnerAndTally) {
  const Invocation r = run("winner --rule condorcet --input " + path("worked.soc"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["rule"], "condorcet");
  EXPECT_EQ(j["winner"]["id"], 1);
  EXPECT_EQ(j["winner"]["name"], "c1");
  EXPECT_EQ(j["tally"], Json::parse("[3,1,2,0]"));

  const Json none = Json::parse(run("winner --rule condorcet --input " + path("cycle.soc")).out);
  EXPECT_TRUE(none["winner"].is_null());
}

TEST_F(Cli, RangeAcceptsTiedOrdersAndScoreCsv) {
  const Invocation tied = run("winner --rule range --input " + path("tied.toc"));
  ASSERT_EQ(tied.code, 0);
  EXPECT_EQ(Json::parse(tied.out)["tally"], Json::parse("[2,2,1]"));
  const Invocation csv = run("control --rule range --action voters --input " + path("scores.csv") + " --target 2");
  ASSERT_EQ(csv.code, 0);
  const Json j = Json::parse(csv.out);
  // Candidate 2 needs voter 1 gone: voters 2 and 3 give it 2 against 1.
  EXPECT_EQ(j["status"], "Optimal");
  EXPECT_EQ(j["objective"], 2);
  EXPECT_EQ(j["deleted"], Json::parse("[1]"));
}

TEST_F(Cli, ControlJsonIsDeterministic) {
  const std::string args = "control --rule maximin --action voters --input " + path("worked.soc") + " --target 4";
  const Invocation a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j["verification"]["winner"]["id"], 4);
  EXPECT_EQ(j["kept"], Json::parse("[3]"));
  EXPECT_TRUE(j["verification"]["consistent"]);
  EXPECT_EQ(j["objective"].get<int>() + j["deleted"].size(), 3u);
  EXPECT_GE(j["solver"]["nodes"].get<int>(), 1);
}

TEST_F(Cli, WorkedAnswers) {
  const std::pair<std::string, int> cases[] = {{"condorcet --action voters", 3},
                                               {"plurality --action candidates", 4},
                                               {"maximin --action voters", 3},
                                               {"bucklin --action voters", 3},
                                               {"bucklin --action candidates", 4}};
  for (const auto& [args, expected] : cases) {
    const Invocation r = run("control --rule " + args + " --input " + path("worked.soc"));
    ASSERT_EQ(r.code, 0) << args;
    EXPECT_EQ(Json::parse(r.out)["objective"], expected) << args;
  }
}

TEST_F(Cli, ExportOnlyWritesTheEncodedModel) {
  const Invocation r = run("control --rule bucklin --action candidates --input " + path("worked.soc") +
                    " --engine export-only --out-lp " + path("m.lp") + " --out-mps " + path("m.mps"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["engine"], "export-only");
  EXPECT_FALSE(j.contains("status"));
  const EncodedProblem p = encode_bucklin_candidates(*testing::worked_election().strict());
  EXPECT_EQ(parse_lp(slurp(path("m.lp"))), p.model);
  EXPECT_EQ(slurp(path("m.mps")), export_mps(p.model));
  EXPECT_EQ(j["variables"], p.model.variable_count());

  EXPECT_EQ(run("control --rule bucklin --action candidates --input " + path("worked.soc") + " --engine export-only")
                .code,
            2);
}

TEST_F(Cli, VerifyMatchesAndDetectsCorruption) {
  const std::string base = "verify --rule condorcet --action voters --input " + path("cycle.soc");
  const Invocation ok = run(base);
  ASSERT_EQ(ok.code, 0);
  Json j = Json::parse(ok.out);
  EXPECT_TRUE(j["match"]);
  EXPECT_EQ(j["solver_objective"], 1);
  EXPECT_EQ(j["oracle_objective"], 1);

  const Invocation bad = run(base + " --corrupt-model");
  EXPECT_EQ(bad.code, 1);
  j = Json::parse(bad.out);
  EXPECT_FALSE(j["match"]);
  EXPECT_EQ(j["solver_objective"], 3);
}

TEST_F(Cli, VerifyDestructiveAndInfeasible) {
  const Invocation d = run("verify --rule bucklin --action candidates --mode destructive --input " + path("worked.soc"));
  ASSERT_EQ(d.code, 0);
  EXPECT_TRUE(Json::parse(d.out)["match"]);
  write("hopeless.csv", "3\n0,0,1\n1,1,2\n");
  const Invocation h = run("verify --rule range --action voters --input " + path("hopeless.csv"));
  ASSERT_EQ(h.code, 0);
  const Json j = Json::parse(h.out);
  EXPECT_EQ(j["solver_status"], "Infeasible");
  EXPECT_TRUE(j["solver_objective"].is_null());
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("winner --rule condorcet --input " + path("missing.soc")).code, 2);
  write("broken.soc", "3\n1,a\n2,b\n");
  EXPECT_EQ(run("winner --rule condorcet --input " + path("broken.soc")).code, 2);
  EXPECT_EQ(run("control --rule borda --action voters --input " + path("worked.soc")).code, 2);
  EXPECT_EQ(run("control --rule condorcet --action voters --target 7 --input " + path("worked.soc")).code, 2);
  EXPECT_EQ(run("winner --rule condorcet --input " + path("tied.toc")).code, 3);
  EXPECT_EQ(run("control --rule maximin --action voters --input " + path("scores.csv")).code, 3);
  EXPECT_EQ(run("control --rule plurality --action voters --input " + path("worked.soc")).code, 4);
  EXPECT_EQ(run("verify --rule condorcet --action candidates --input " + path("worked.soc")).code, 4);
  EXPECT_EQ(run("verify --rule condorcet --action voters --oracle-limit 4 --input " + path("worked.soc")).code, 5);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, BenchWritesRowsAndClassSummary) {
  const fs::path suite = dir_ / "suite";
  fs::create_directories(suite);
  std::ofstream(suite / "a.soc") << testing::worked_soc_text();
  std::ofstream(suite / "b.toc") << "3\n1,a\n2,b\n3,c\n1,1,1\n1,{1,2},3\n";
  std::ofstream(suite / "notes.txt") << "ignored";
  {
    // 40 candidates: lands in the second class and cannot finish in 10 ms.
    std::mt19937_64 rng(3);
    PrefLibDocument doc;
    for (int c = 1; c <= 40; ++c) doc.alternatives[c] = "c" + std::to_string(c);
    const StrictProfile p = testing::random_profile(rng, 40, 30);
    for (const Ranking& r : p.rankings()) {
      OrderLine line;
      for (CandidateId c : r) line.groups.push_back({c});
      doc.order_lines.push_back(line);
    }
    std::ofstream(suite / "c.soc") << serialize_preflib(doc);
  }
  const Invocation r = run("bench --suite " + suite.string() + " --rule bucklin --action candidates --timeout 0.01 --out " +
                    path("bench.csv"));
  ASSERT_EQ(r.code, 0);
  std::istringstream csv(slurp(path("bench.csv")));
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(csv, line)) lines.push_back(line);
  ASSERT_GE(lines.size(), 10u);
  EXPECT_EQ(lines[0], "file,m,n,status,objective,wall_time,nodes");
  EXPECT_EQ(lines[1].rfind("a.soc,4,3,Optimal,4,", 0), 0u);
  EXPECT_EQ(lines[2].rfind("b.toc,3,1,Unsupported,", 0), 0u);
  EXPECT_EQ(lines[3].rfind("c.soc,40,30,TimedOut,,", 0), 0u);
  EXPECT_EQ(lines[4], "");
  EXPECT_EQ(lines[5], "class,instances,solved,timed_out,min,median,average,max");
  EXPECT_EQ(lines[6].rfind("1-9,2,1,0,", 0), 0u);
  EXPECT_EQ(lines[7], "10-99,1,0,1,,,,");
  EXPECT_EQ(lines[8], "100-199,0,0,0,,,,");
  EXPECT_EQ(lines[9], "200+,0,0,0,,,,");
}

}  // namespace
}  // namespace ballot
