#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/random_gen.hpp"
#include "talent/graph.hpp"

using namespace talent;

TEST_CASE("validate accepts the smallest cyclic graph") {
  Graph g = fixtures::loop1();
  CHECK(g.vertex_count() == 1);
  CHECK(g.is_regular(g.vertex("v")));
  CHECK_FALSE(g.is_sink(g.vertex("v")));
}

TEST_CASE("validate classifies INFB vertices") {
  Graph g = fixtures::infb();
  CHECK(g.is_infinite_emitter(g.vertex("v")));
  CHECK_FALSE(g.is_regular(g.vertex("v")));
  CHECK(g.is_regular(g.vertex("w")));
}

TEST_CASE("validate rejects undeclared vertices and zero multiplicity") {
  CHECK_THROWS_AS(Graph::validate({"v"}, {{"v", "u", 1}}), GraphError);
  CHECK_THROWS_AS(Graph::validate({"v"}, {{"v", "v", 0}}), GraphError);
  CHECK_THROWS_AS(Graph::validate({"v", "v"}, {}), GraphError);
}

TEST_CASE("graph text round-trips") {
  Graph g = fixtures::iecyc();
  Graph h = Graph::parse(g.to_text());
  CHECK(h.vertex_count() == g.vertex_count());
  CHECK(h.group_count() == g.group_count());
  CHECK(h.is_infinite_emitter(h.vertex("v")));
}

TEST_CASE("reachable on fixtures") {
  Graph t = fixtures::toeplitz();
  CHECK(t.reachable({t.vertex("v")}) == std::set<Vertex>{t.vertex("v"), t.vertex("w")});
  CHECK(t.reachable({t.vertex("w")}) == std::set<Vertex>{t.vertex("w")});
  Graph c = fixtures::clock();
  CHECK(c.reachable({c.vertex("v")}) == std::set<Vertex>{c.vertex("v"), c.vertex("w")});
}

TEST_CASE("reachable is monotone and idempotent") {
  testgen::Rng rng(testgen::seed_from_env());
  for (int i = 0; i < 40; ++i) {
    Graph g = testgen::random_graph(rng, 6, /*row_finite=*/false);
    std::set<Vertex> start;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (rng.chance(0.5)) start.insert(v);
    auto r = g.reachable(start);
    CHECK(std::includes(r.begin(), r.end(), start.begin(), start.end()));
    CHECK(g.reachable(r) == r);
  }
}

TEST_CASE("cycles_through on fixtures") {
  Graph l = fixtures::loop1();
  auto cl = l.cycles_through(l.vertex("v"));
  REQUIRE(cl.size() == 1);
  CHECK(cl[0].length() == 1);

  Graph r = fixtures::rose2();
  CHECK(r.cycles_through(r.vertex("v")).size() == 2);

  Graph t = fixtures::toeplitz();
  CHECK(t.cycles_through(t.vertex("w")).empty());
}

TEST_CASE("omega groups on cycles are flagged as parallel families") {
  Graph g = Graph::parse("vertex v\nedges v v *\n");
  auto cycles = g.cycles_through(g.vertex("v"));
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].omega_parallel);
}

TEST_CASE("cycle_has_exit on fixtures") {
  Graph l = fixtures::loop1();
  CHECK_FALSE(l.cycle_has_exit(l.cycles_through(l.vertex("v"))[0]));

  Graph t = fixtures::toeplitz();
  CHECK(t.cycle_has_exit(t.cycles_through(t.vertex("v"))[0]));

  Graph r = fixtures::rose2();
  for (const Cycle& c : r.cycles_through(r.vertex("v"))) CHECK(r.cycle_has_exit(c));
}

TEST_CASE("vertex classification partitions every vertex") {
  testgen::Rng rng(testgen::seed_from_env(7));
  for (int i = 0; i < 40; ++i) {
    Graph g = testgen::random_graph(rng, 6, /*row_finite=*/false);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      int kinds = (g.is_sink(v) ? 1 : 0) + (g.is_regular(v) ? 1 : 0) +
                  (g.is_infinite_emitter(v) ? 1 : 0);
      CHECK(kinds == 1);
    }
  }
}

TEST_CASE("finite acyclic graphs have a source") {
  testgen::Rng rng(testgen::seed_from_env(11));
  int seen = 0;
  for (int i = 0; i < 200 && seen < 40; ++i) {
    Graph g = testgen::random_graph(rng, 6, /*row_finite=*/true, 0.3);
    if (!g.is_acyclic()) continue;
    ++seen;
    CHECK_FALSE(g.sources().empty());
  }
  CHECK(seen > 0);
}

TEST_CASE("exact length table agrees with path enumeration on CLOCK") {
  Graph g = fixtures::clock();
  auto table = g.exact_length_table(4);
  size_t n = g.vertex_count();
  Vertex v = g.vertex("v"), w = g.vertex("w");
  CHECK(table[0][v * n + v]);
  CHECK_FALSE(table[0][v * n + w]);
  CHECK(table[1][v * n + w]);
  CHECK(table[3][v * n + w]);
  CHECK_FALSE(table[2][v * n + v]);
  CHECK(table[2][w * n + w]);
}
