#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

// Drives the installed binary end to end. The test runner passes the binary
// and data locations through WORDCOUNT_BIN / WORDCOUNT_DATA.

namespace {

using Json = nlohmann::json;

std::string bin() {
  const char* path = std::getenv("WORDCOUNT_BIN");
  REQUIRE_MESSAGE(path != nullptr, "WORDCOUNT_BIN must point at the CLI binary");
  return path;
}

std::string data(const std::string& name) {
  const char* dir = std::getenv("WORDCOUNT_DATA");
  REQUIRE_MESSAGE(dir != nullptr, "WORDCOUNT_DATA must point at the sample designs");
  return std::string(dir) + "/" + name;
}

std::string temp_path(const std::string& suffix) {
  static int counter = 0;
  return "/tmp/wordcount_cli_" + std::to_string(getpid()) + "_" +
         std::to_string(counter++) + suffix;
}

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run(const std::string& args) {
  const std::string out_path = temp_path(".out");
  const std::string command = bin() + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(command.c_str());
  std::ifstream in(out_path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::remove(out_path.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return RunResult{code, buf.str()};
}

Json run_json(const std::string& args, int expect_code = 0) {
  const RunResult r = run(args);
  REQUIRE_MESSAGE(r.exit_code == expect_code, "args: ", args, " output: ", r.output);
  return Json::parse(r.output);
}

}  // namespace

TEST_CASE("evaluate: half fraction") {
  const Json j = run_json("evaluate " + data("half_fraction_3.txt") + " --json");
  CHECK(j.at("b") == Json::array({"0/1", "0/1", "1/1"}));
  CHECK(j.at("sum_b") == "1/1");
  CHECK(j.at("conservation").at("matches") == true);
  CHECK(j.at("distinct_rows") == true);
}

TEST_CASE("evaluate: full factorial is all zero") {
  const Json j = run_json("evaluate " + data("full_factorial_3.txt") + " --json");
  CHECK(j.at("b") == Json::array({"0/1", "0/1", "0/1"}));
  CHECK(j.at("sum_b") == "0/1");
}

TEST_CASE("evaluate: replicated design reports non-applicability") {
  const Json j = run_json("evaluate " + data("replicated_2.txt") + " --json");
  CHECK(j.at("distinct_rows") == false);
  CHECK(j.at("sum_b") == "3/1");
  CHECK(j.at("conservation").at("matches") == false);
}

TEST_CASE("evaluate: zero_one input matches pm1 input") {
  const Json a = run_json("evaluate " + data("half_fraction_3.txt") + " --json");
  const Json b = run_json("evaluate " + data("half_fraction_3_01.txt") +
                          " --format zero_one --json");
  CHECK(a.at("b") == b.at("b"));
  CHECK(a.at("cfv") == b.at("cfv"));
}

TEST_CASE("evaluate: weights add a score") {
  const Json j = run_json("evaluate " + data("half_fraction_3.txt") +
                          " --weights 0,0,1 --json");
  CHECK(j.at("weighted_score").get<double>() == 1.0);
}

TEST_CASE("exit codes: parse and dimension errors") {
  const std::string bad_tokens = temp_path(".txt");
  {
    std::ofstream out(bad_tokens);
    out << "1 2\n";
  }
  CHECK(run("evaluate " + bad_tokens).exit_code == 2);
  std::remove(bad_tokens.c_str());

  CHECK(run("evaluate " + data("nonexistent.txt")).exit_code == 2);
  CHECK(run("verify -m 2 -N 5").exit_code == 3);       // N > 2^m
  CHECK(run("verify").exit_code == 2);                 // neither input nor dims
  CHECK(run("search -m 3 -N 4 --objective fastest").exit_code == 2);
  CHECK(run("search -m 3 -N 4 --objective weighted --weights 0,0,0").exit_code == 3);
}

TEST_CASE("verify: sweep and single-design modes") {
  const Json sweep = run_json("verify -m 3 -N 4 --samples 70 --json");
  CHECK(sweep.at("exhaustive") == true);
  CHECK(sweep.at("designs_checked") == 70);
  CHECK(sweep.at("matched") == 70);
  CHECK(sweep.at("all_match") == true);

  const Json single = run_json("verify --input " + data("half_fraction_3.txt") + " --json");
  // exactly the documented six-key conservation object
  CHECK(single.size() == 6);
  CHECK(single.at("sum_b") == "1/1");
  CHECK(single.at("constant") == "1/1");
  CHECK(single.at("matches") == true);

  // a replicated design fails single-design verification
  const RunResult rep = run("verify --input " + data("replicated_2.txt") + " --json");
  CHECK(rep.exit_code == 1);
  CHECK(Json::parse(rep.output).at("matches") == false);
}

TEST_CASE("verify: sampled sweep at (9, 15)") {
  const Json j = run_json("verify -m 9 -N 15 --samples 100 --seed 42 --json");
  CHECK(j.at("constant") == "497/15");
  CHECK(j.at("exhaustive") == false);
  CHECK(j.at("matched") == 100);
  CHECK(j.at("all_match") == true);
}

TEST_CASE("search: finds the b3-free optimum and writes the design") {
  const std::string out_path = temp_path(".design");
  const Json j = run_json("search -m 3 -N 4 --objective weighted --weights 0,0,1"
                          " --restarts 20 --seed 5 --json --out " + out_path);
  CHECK(j.at("b")[2] == "0/1");
  CHECK(j.at("conservation").at("matches") == true);

  std::ifstream saved(out_path);
  REQUIRE(saved.good());
  std::stringstream buf;
  buf << saved.rdbuf();
  std::remove(out_path.c_str());
  CHECK(buf.str() == j.at("design").get<std::string>());
}

TEST_CASE("search: repeated seed gives identical JSON modulo timing") {
  const std::string args = "search -m 4 -N 6 --objective g --restarts 6 --seed 99 --json";
  Json a = run_json(args);
  Json b = run_json(args);
  a.erase("timing_ms");
  b.erase("timing_ms");
  CHECK(a == b);
}

TEST_CASE("search: config file equals the same flags") {
  const std::string cfg_path = temp_path(".json");
  {
    std::ofstream out(cfg_path);
    out << R"({"m":3,"N":4,"objective":"maximize_high","s0":3,"restarts":5,"seed":2})";
  }
  Json from_config = run_json("search --config " + cfg_path + " --json");
  Json from_flags = run_json(
      "search -m 3 -N 4 --objective maximize_high --s0 3 --restarts 5 --seed 2 --json");
  std::remove(cfg_path.c_str());
  from_config.erase("timing_ms");
  from_flags.erase("timing_ms");
  CHECK(from_config == from_flags);
}

TEST_CASE("oracle subcommand passes and reports per-check verdicts") {
  const Json j = run_json("oracle --json");
  CHECK(j.at("all_pass") == true);
  REQUIRE(j.at("checks").size() == 5);
  for (const auto& c : j.at("checks")) CHECK(c.at("pass") == true);

  const RunResult human = run("oracle");
  CHECK(human.exit_code == 0);
  CHECK(human.output.find("all checks passed") != std::string::npos);
}

TEST_CASE("human evaluate output shows the conserved sum") {
  const RunResult r = run("evaluate " + data("half_fraction_3.txt"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("sum b_s = 1/1") != std::string::npos);
  CHECK(r.output.find("matches: yes") != std::string::npos);
}
