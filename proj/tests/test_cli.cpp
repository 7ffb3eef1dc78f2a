// Drives the installed CLI binary and checks the exit-code contract:
// 0 success/true-verdict, 1 false-verdict, 2 usage/config error.
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "saba/digraph.hpp"
#include "support.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "saba_cli_out.txt";
  const std::string command =
      std::string(SABA_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.output = buf.str();
  return result;
}

std::string graph_path(const std::string& name) {
  return std::string(SABA_GRAPH_DIR) + "/" + name;
}

std::string scenario_path(const std::string& name) {
  return std::string(SABA_SCENARIO_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("gen emits parsable families") {
  auto result = run_cli("gen --family complete --n 4");
  CHECK(result.exit_code == 0);
  CHECK(saba::parse_edge_list(result.output) == saba::complete(4));

  auto wheel_result = run_cli("gen --family wheel --n 6 --hub 6");
  CHECK(saba::parse_edge_list(wheel_result.output) == saba::wheel(6, 6));

  CHECK(run_cli("gen --family moebius --n 4").exit_code == 2);
}

TEST_CASE("check exit codes and report fields") {
  auto good = run_cli("check " + graph_path("fig3.el") + " --kind strong-robust --r 3");
  CHECK(good.exit_code == 0);
  CHECK(good.output.find("verdict: true") != std::string::npos);

  auto bad = run_cli("check " + graph_path("wheel6.el") + " --kind strong-robust --r 3");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("verdict: false") != std::string::npos);
  CHECK(bad.output.find("witness: S={1,2}") != std::string::npos);

  auto broken = run_cli("check " + graph_path("fig3_broken.el") +
                        " --kind strong-robust --r 3");
  CHECK(broken.exit_code == 1);
  CHECK(broken.output.find("witness: S={5}") != std::string::npos);

  auto audit = run_cli("check " + graph_path("k4.el") +
                       " --kind strong-robust --r 2 --audit");
  CHECK(audit.exit_code == 0);
  CHECK(audit.output.find("tests_counted: 48") != std::string::npos);
  CHECK(audit.output.find("predicted_tests: 48") != std::string::npos);

  auto resilient = run_cli("check " + graph_path("fig3.el") + " --kind resilient --f 1");
  CHECK(resilient.exit_code == 0);

  auto wrt = run_cli("check " + graph_path("k4.el") +
                     " --kind strong-robust-wrt --r 1 --set 1");
  CHECK(wrt.exit_code == 0);

  CHECK(run_cli("check " + graph_path("k4.el") + " --kind bogus --r 1").exit_code == 2);
  CHECK(run_cli("check no_such_file.el --kind robust --r 1").exit_code == 2);
  CHECK(run_cli("check " + graph_path("k4.el") + " --kind robust --r 9").exit_code == 2);
}

TEST_CASE("connectivity output") {
  auto w6 = run_cli("connectivity " + graph_path("wheel6.el"));
  CHECK(w6.exit_code == 0);
  CHECK(w6.output.find("category: C3") != std::string::npos);
  CHECK(w6.output.find("kappa3: 3") != std::string::npos);

  auto c7 = run_cli("connectivity " + graph_path("cycle7.el"));
  CHECK(c7.output.find("kappa3: 2") != std::string::npos);

  auto paths = run_cli("connectivity " + graph_path("k4.el") + " --paths");
  CHECK(paths.output.find("disjoint_paths:") != std::string::npos);

  const fs::path chain = fs::temp_directory_path() / "saba_path3.el";
  std::ofstream(chain) << "n 3\ne 1 2\ne 2 3\n";
  auto unilateral = run_cli("connectivity " + chain.string());
  CHECK(unilateral.exit_code == 0);
  CHECK(unilateral.output.find("category: C2") != std::string::npos);
  CHECK(unilateral.output.find("kappa3") == std::string::npos);
}

TEST_CASE("simulate writes deterministic outputs") {
  const fs::path dir1 = fs::temp_directory_path() / "saba_sim_1";
  const fs::path dir2 = fs::temp_directory_path() / "saba_sim_2";
  fs::remove_all(dir1);
  fs::remove_all(dir2);

  auto first = run_cli("simulate " + scenario_path("fig3_sync.json") + " " +
                       dir1.string());
  CHECK(first.exit_code == 0);
  CHECK(first.output.find("node=1 role=regular final_x=3.5 err=0") !=
        std::string::npos);
  CHECK(fs::exists(dir1 / "trace.csv"));
  CHECK(fs::exists(dir1 / "messages.csv"));
  CHECK(fs::exists(dir1 / "summary.txt"));

  auto second = run_cli("simulate " + scenario_path("fig3_sync.json") + " " +
                        dir2.string());
  for (const char* file : {"trace.csv", "messages.csv", "summary.txt"}) {
    std::ifstream a(dir1 / file), b(dir2 / file);
    std::ostringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());
  }

  auto broken = run_cli("simulate " + scenario_path("fig3_broken_edge.json") + " " +
                        (fs::temp_directory_path() / "saba_sim_3").string());
  CHECK(broken.exit_code == 0);
  CHECK(broken.output.find("retrieved_at=never") != std::string::npos);

  CHECK(run_cli("simulate no_such_scenario.json /tmp/saba_sim_4").exit_code == 2);
}

TEST_CASE("malformed scenarios exit 2 with a diagnostic") {
  const fs::path bad = fs::temp_directory_path() / "saba_bad_scenario.json";
  std::ofstream(bad) << R"({"graph": {"generator": {"family": "complete", "n": 3}},
    "protocol": {"f": 0},
    "nodes": {"initial_values": {"1": 1.0, "2": 2.0}},
    "schedule": {"mode": "sync"}})";
  auto result = run_cli("simulate " + bad.string() + " /tmp/saba_sim_bad");
  CHECK(result.exit_code == 2);
}

TEST_CASE("search-fixture reproduces the pinned benchmark graph") {
  auto result = run_cli(
      "search-fixture --n 6 --r 3 --must-contain-edge 3,5 --break-on-removal "
      "--adversary 4");
  CHECK(result.exit_code == 0);
  CHECK(saba::parse_edge_list(result.output) == oracle::fig3_graph());

  // unsatisfiable constraints report exhaustion: removing {1,2} always cuts
  // the weak node off from node 1, so an attack by node 1 never bites
  auto hopeless = run_cli("search-fixture --n 5 --r 3 --must-contain-edge 1,2 "
                          "--break-on-removal --adversary 1");
  CHECK(hopeless.exit_code == 1);

  auto k4 = run_cli("search-fixture --n 4 --r 2");
  CHECK(k4.exit_code == 0);
  CHECK(saba::is_strongly_r_robust(saba::parse_edge_list(k4.output), 2).verdict);
}
