#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout and stderr merged
};

RunResult run_cli(const std::string& args) {
  const std::string capture = "cli_capture.txt";
  const std::string command =
      std::string(CAYLEY_BIN) + " " + args + " > " + capture + " 2>&1";
  int raw = std::system(command.c_str());
  std::ifstream in(capture);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::remove(capture.c_str());
  return {WEXITSTATUS(raw), buffer.str()};
}

std::string data(const std::string& name) { return std::string(DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("boundary reports are deterministic") {
  const std::string args = "boundary " + data("example2.json") + " --perturb 64";
  RunResult first = run_cli(args);
  RunResult second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);

  auto doc = nlohmann::json::parse(first.output);
  CHECK(doc["schema"] == 1);
  CHECK(doc["geometric"]["orbit_count"] == 2);
  CHECK(doc["geometric"]["boundary_points"] == "16");
  CHECK(doc["algebraic"]["point_count"] == 16);
  CHECK(doc["counts_reliable"] == true);
  for (const auto& row : doc["reconciliation"]) CHECK(row["match"] == true);
}

TEST_CASE("hull lists the face lattice") {
  RunResult result = run_cli("hull " + data("example1.json"));
  REQUIRE(result.exit_code == 0);
  auto doc = nlohmann::json::parse(result.output);
  CHECK(doc["vertices"].size() == 4);
  CHECK(doc["faces"].size() == 8);
  CHECK(doc["faces"][0]["dimension"] == 0);
  CHECK(doc["faces"][7]["dimension"] == 1);
}

TEST_CASE("distance and valuation queries") {
  RunResult dist = run_cli("distance " + data("example2.json") + " 0 14");
  REQUIRE(dist.exit_code == 0);
  auto ddoc = nlohmann::json::parse(dist.output);
  CHECK(ddoc["distance"] == "4");
  CHECK(ddoc["path"].size() == 4);

  RunResult val =
      run_cli("valuation " + data("example2.json") + " 0 8 --block 1 --window 12");
  REQUIRE(val.exit_code == 0);
  auto vdoc = nlohmann::json::parse(val.output);
  CHECK(vdoc["value"] == "1");
  CHECK(vdoc["stabilized"] == true);
}

TEST_CASE("groebner and standard-pairs surface weight ties") {
  RunResult basis = run_cli("groebner " + data("example4.json"));
  REQUIRE(basis.exit_code == 0);
  auto bdoc = nlohmann::json::parse(basis.output);
  CHECK(bdoc["generic"] == false);
  CHECK(bdoc["tie_witnesses"].size() > 0);

  RunResult perturbed = run_cli("groebner " + data("example4.json") + " --perturb 64");
  auto pdoc = nlohmann::json::parse(perturbed.output);
  CHECK(pdoc["generic"] == true);
  CHECK(pdoc["perturbed"] == true);

  RunResult pairs = run_cli("standard-pairs " + data("example4.json"));
  REQUIRE(pairs.exit_code == 0);
  auto sdoc = nlohmann::json::parse(pairs.output);
  CHECK(sdoc["pair_count"].get<int>() > 0);
  bool has_corner = false;
  for (const auto& pair : sdoc["standard_pairs"]) {
    if (pair["root"] == "1" && pair["free"] == nlohmann::json::array({2, 3})) {
      has_corner = true;
    }
  }
  CHECK(has_corner);
}

TEST_CASE("validate passes on a healthy instance") {
  RunResult result = run_cli("validate " + data("example2.json") + " --window 4");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"all_passed\": true") != std::string::npos);
}

TEST_CASE("the poset export is stable") {
  const std::string expected =
      "digraph closure {\n"
      "  node [shape=box];\n"
      "  n0 [label=\"group Z\"];\n"
      "  n1 [label=\"conv{(-8)} : Z/8\"];\n"
      "  n2 [label=\"conv{(8)} : Z/8\"];\n"
      "  n0 -> n1;\n"
      "  n0 -> n2;\n"
      "}\n";
  RunResult dot = run_cli("poset " + data("example2.json") + " --format dot");
  CHECK(dot.exit_code == 0);
  CHECK(dot.output == expected);

  RunResult json = run_cli("poset " + data("example2.json"));
  auto doc = nlohmann::json::parse(json.output);
  CHECK(doc["nodes"].size() == 3);
  CHECK(doc["covers"].size() == 2);

  RunResult report_dot =
      run_cli("boundary " + data("example1.json") + " --route geo --format dot");
  CHECK(report_dot.exit_code == 0);
  CHECK(report_dot.output.find("digraph closure {") == 0);
  CHECK(report_dot.output.find("n0 [label=\"group Z^2\"]") != std::string::npos);
}

TEST_CASE("failures map to distinct exit codes") {
  RunResult inapplicable =
      run_cli("boundary " + data("weighted.json") + " --route geo");
  CHECK(inapplicable.exit_code == 3);
  CHECK(inapplicable.output.find("equal generator weights") != std::string::npos);

  RunResult schema = run_cli("boundary " + data("badschema.json"));
  CHECK(schema.exit_code == 2);
  CHECK(schema.output.find("schema") != std::string::npos);

  RunResult generation = run_cli("boundary " + data("nongenerating.json"));
  CHECK(generation.exit_code == 2);
  CHECK(generation.output.find("cokernel") != std::string::npos);

  RunResult missing = run_cli("hull " + data("no_such_file.json"));
  CHECK(missing.exit_code == 2);
  CHECK(missing.output.find("cannot open") != std::string::npos);

  RunResult starved =
      run_cli("distance " + data("example2.json") + " 0 500 --budget 20");
  CHECK(starved.exit_code == 4);

  RunResult starved_validate =
      run_cli("validate " + data("example2.json") + " --window 4 --budget 3");
  CHECK(starved_validate.exit_code == 4);
  CHECK(starved_validate.output.find("\"budget_exhausted\": true") != std::string::npos);

  RunResult unknown = run_cli("frobnicate " + data("example2.json"));
  CHECK(unknown.exit_code != 0);
}
