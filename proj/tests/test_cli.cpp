/* Copyright (C) 2026 The zpkcycles authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

namespace {

std::string g_binary;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = g_binary + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("analyze-cat emits the prediction, histogram and passes") {
  RunResult r = run("analyze-cat --p 5 --k 2 --a 1 --b 2 --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["T"] == 15);
  CHECK(j["histogram"]["cycles"]["1"] == 1);
  CHECK(j["histogram"]["cycles"]["3"] == 8);
  CHECK(j["histogram"]["cycles"]["15"] == 40);
  CHECK(j["pass"] == true);
}

TEST_CASE("verify-order reports theory = oracle") {
  RunResult r = run("verify-order --p 5 --k 3 --poly \"1 - 4t + t^2\"");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["theory"] == 75);
  CHECK(j["oracle"] == 75);
  CHECK(j["pass"] == true);
}

TEST_CASE("enumerate emits a DOT graph with one edge per state") {
  RunResult r = run("enumerate --p 3 --k 1 --a 1 --b 2 --format dot");
  CHECK(r.exit_code == 0);
  size_t edges = 0;
  for (size_t pos = r.out.find("->"); pos != std::string::npos; pos = r.out.find("->", pos + 1))
    ++edges;
  CHECK(edges == 9);
  CHECK(r.out.find("digraph") != std::string::npos);
}

TEST_CASE("census CSV has the spec'd columns") {
  RunResult r = run("census --p 5 --k 1 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("T,predicted_count,measured_count,pass\n", 0) == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "true");
  }
  CHECK(rows >= 6);
}

TEST_CASE("usage and capacity errors exit 2") {
  CHECK(run("analyze-cat --p 6 --k 1 --a 1 --b 1").exit_code == 2);        // composite p
  CHECK(run("enumerate --p 5 --k 1").exit_code == 2);                      // no map given
  CHECK(run("verify-order --p 5 --k 1 --poly \"7 + t\"").exit_code == 2);  // coefficient range
  CHECK(run("--budget 10 enumerate --p 5 --k 2 --a 1 --b 2").exit_code == 2);
  CHECK(run("bogus-subcommand").exit_code != 0);
}

TEST_CASE("reports are byte-stable across runs and reparse") {
  RunResult r1 = run("analyze-poly --p 7 --k 2 --poly \"1 + 3t + t^2\"");
  RunResult r2 = run("analyze-poly --p 7 --k 2 --poly \"1 + 3t + t^2\"");
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r2.out);
  auto j = nlohmann::json::parse(r1.out);
  CHECK(nlohmann::json::parse(j.dump()) == j);

  RunResult c1 = run("census --p 7 --k 1");
  RunResult c2 = run("census --p 7 --k 1");
  CHECK(c1.out == c2.out);
}

TEST_CASE("verify-graph runs the selected checks") {
  RunResult r = run(
      "verify-graph --p 5 --k 2 --a 1 --b 2 --checks embedding,liftlaw,dichotomy --samples 20");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["embedding"]["pass"] == true);
  CHECK(j["liftlaw"]["pass"] == true);
  CHECK(j["dichotomy"]["pass"] == true);
  CHECK(j["pass"] == true);
}

TEST_CASE("d-matrix recursion through the CLI") {
  RunResult r = run("d-matrix --p 5 --k 2 --v 1 --l 1 --a 1 --b 2");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["n_k"][0] == 40);
  CHECK(j["predicted"][0] == 200);
}

TEST_CASE("environment budget override is honored") {
  std::string save = g_binary;
  g_binary = "ZPKCYCLES_BUDGET=10 " + g_binary;
  CHECK(run("enumerate --p 5 --k 2 --a 1 --b 2").exit_code == 2);
  g_binary = save;
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-binary>\n");
    return 2;
  }
  g_binary = argv[argc - 1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv);
  return ctx.run();
}
