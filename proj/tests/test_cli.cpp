#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "support/fixtures.hpp"
#include "talent/dot.hpp"
#include "talent/json_io.hpp"

using namespace talent;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(TALENT_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 512> buf;
  while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  int status = pclose(pipe);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string write_fixture(const std::string& name, const Graph& g) {
  std::string path = "/tmp/talent_test_" + name + ".g";
  std::ofstream f(path);
  f << g.to_text();
  return path;
}

}  // namespace

TEST_CASE("classify-element reports the Toeplitz stationary example") {
  std::string path = write_fixture("toeplitz", fixtures::toeplitz());
  RunResult r = run_cli("classify-element --graph " + path + " --elem \"v + w\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("STATIONARY") != std::string::npos);
  CHECK(r.out.find("aperiodic") != std::string::npos);
  CHECK(r.out.find("n=1") != std::string::npos);
}

TEST_CASE("arrow answers the E1 degree relation") {
  std::string path = write_fixture("e1", fixtures::e1());
  RunResult r = run_cli("arrow --graph " + path + " --from v1 --to \"x w1\" --json");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["verdict"] == "yes");
  CHECK(j.contains("path_system"));
}

TEST_CASE("compare prints the mismatch table") {
  std::string p1 = write_fixture("cmp1", fixtures::toeplitz());
  std::string p2 = write_fixture("cmp2", fixtures::loop1());
  RunResult r = run_cli("compare " + p1 + " " + p2);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("non-isomorphic") != std::string::npos);
  CHECK(r.out.find("condition_L") != std::string::npos);
}

TEST_CASE("unknown verdicts use exit code 2") {
  std::string path = write_fixture("toeplitz2", fixtures::toeplitz());
  RunResult r = run_cli("leq --graph " + path + " --from w --to v");
  CHECK(r.exit_code == 2);
}

TEST_CASE("parse failures use exit code 1") {
  std::string path = write_fixture("toeplitz3", fixtures::toeplitz());
  RunResult r = run_cli("classify-element --graph " + path + " --elem \"v + + w\"");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("error") != std::string::npos);
}

TEST_CASE("json reports echo parseable canonical forms") {
  std::string path = write_fixture("iecyc", fixtures::iecyc());
  RunResult r = run_cli("classify-graph --graph " + path + " --json");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  Graph g = fixtures::iecyc();
  // round-trip the echoed graph
  std::string text;
  for (const auto& v : j["graph"]["vertices"]) text += "vertex " + v.get<std::string>() + "\n";
  for (const auto& e : j["graph"]["edges"]) {
    text += "edges " + e["src"].get<std::string>() + " " + e["rng"].get<std::string>() + " ";
    text += e["mult"].is_string() ? e["mult"].get<std::string>() : std::to_string(
        e["mult"].get<uint32_t>());
    text += "\n";
  }
  Graph back = Graph::parse(text);
  CHECK(back.to_text() == g.to_text());
}

TEST_CASE("dot export renders fixtures") {
  SUBCASE("LOOP1: one node, one edge") {
    std::string dot = export_dot(fixtures::loop1());
    CHECK(dot.find("\"v\" -> \"v\"") != std::string::npos);
  }
  SUBCASE("INFB: omega edge label") {
    std::string dot = export_dot(fixtures::infb());
    CHECK(dot.find("\xCF\x89") != std::string::npos);
    CHECK(dot.find("style=bold") != std::string::npos);
  }
  SUBCASE("Toeplitz with core/exit annotation") {
    Graph g = fixtures::toeplitz();
    std::string dot = export_dot(g, parse_element(g, "v + w"));
    CHECK(dot.find("core") != std::string::npos);
    CHECK(dot.find("exit") != std::string::npos);
    CHECK(dot.find("\"v\" [style=filled fillcolor=lightblue") != std::string::npos);
    CHECK(dot.find("\"w\" [style=filled fillcolor=orange") != std::string::npos);
  }
}
