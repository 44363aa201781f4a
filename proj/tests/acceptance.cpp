// Acceptance suite: every criterion prints one PASS/FAIL line; the binary
// exits nonzero if any criterion fails.

#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "support/concrete_oracle.hpp"
#include "support/fixtures.hpp"
#include "support/random_gen.hpp"
#include "talent/classify.hpp"
#include "talent/connectivity.hpp"
#include "talent/graph_classify.hpp"
#include "talent/rewrite.hpp"

using namespace talent;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("%s  criterion %d: %s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : ("  [" + detail + "]").c_str());
  if (!ok) ++failures;
}

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// ---------------------------------------------------------------------------
// 1. Paper-example suite
// ---------------------------------------------------------------------------
void criterion1() {
  Check c;
  SearchCaps caps;

  {
    Graph g = fixtures::e1();
    c.expect(decide_arrow(g, parse_element(g, "v1"), parse_element(g, "x w1")).is_yes(),
             "E1: v1 -> x w1");
  }
  {
    Graph g = fixtures::e2();
    c.expect(decide_arrow(g, parse_element(g, "v2"), parse_element(g, "x^2 w2")).is_yes(),
             "E2: v2 -> x^2 w2");
  }
  {
    Graph g = fixtures::exv();
    c.expect(decide_arrow(g, parse_element(g, "u + w"), parse_element(g, "x v + x v")).is_yes(),
             "u + w -> xv + xv");
    // u -> x^2 v + c refuted for every c at degree <= 4
    std::vector<Element> cands{Element{}};
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      for (int32_t d = 0; d <= 4; ++d) {
        size_t n = cands.size();
        for (size_t i = 0; i < n && cands.size() < 400; ++i) {
          Element e = cands[i];
          e.insert(Monomial{d, Generator::proper(v)});
          cands.push_back(e);
        }
      }
    for (const Element& pad : cands) {
      Element target = parse_element(g, "x^2 v").add(pad);
      c.expect(decide_arrow(g, parse_element(g, "u"), target).is_no(),
               "u -> x^2 v + c must fail (no path of length 2)");
      if (!c.ok) break;
    }
  }
  {
    Graph g = fixtures::bifur();
    c.expect(decide_arrow(g, parse_element(g, "v"), parse_element(g, "x u + x w")).is_yes(),
             "BIFUR: v -> xu + xw");
    for (int32_t d = 0; d <= 4 && c.ok; ++d)
      for (uint64_t m = 1; m <= 3; ++m)
        c.expect(decide_arrow(g, parse_element(g, "v"),
                              Element::proper(d, g.vertex("w"), m))
                     .is_no(),
                 "BIFUR: v -> alpha w must fail");
  }
  {
    Graph g = fixtures::toeplitz();
    auto st = find_stationary_partition(g, parse_element(g, "v + w"));
    c.expect(st.is_yes() && st.witness->n == 1, "Toeplitz: v + w stationary with n = 1");
    // v + x w refuted by the oracle at depth 12
    Element b = parse_element(g, "v + x w");
    SearchCaps deep;
    deep.max_depth = 12;
    ReachableSet rs = reachable_elements(g, b, deep);
    bool stationary_found = false;
    for (const Element& r : rs.elements)
      for (uint32_t n = 1; n <= 10; ++n)
        if (r.contains(b.shift(static_cast<int32_t>(n)))) stationary_found = true;
    c.expect(!stationary_found, "Toeplitz: v + x w has no shifted copy within depth 12");
    c.expect(find_stationary_partition(g, b, 10).is_unknown(),
             "Toeplitz: v + x w partition search comes back empty");
  }
  {
    Graph g = fixtures::twoloop();
    Element a = parse_element(g, "v1 + v2");
    std::vector<Monomial> ms;
    for (const auto& [m, cnt] : a.terms())
      for (uint64_t i = 0; i < cnt; ++i) ms.push_back(m);
    StationaryPartition sp1{1, ms, {0, 0}, {{0}, {1}}};
    StationaryPartition sp2{1, ms, {0, 1}, {{0}, {2}}};
    std::string why;
    c.expect(validate_stationary_partition(g, a, sp1, &why), "two-loop partition I1={1,2}: " + why);
    c.expect(validate_stationary_partition(g, a, sp2, &why), "two-loop partition I1={1},I2={2}: " + why);
  }
  report(1, "paper-example suite (exact relations)", c.ok, c.detail);
}

// ---------------------------------------------------------------------------
// 2. Classification table
// ---------------------------------------------------------------------------
void criterion2() {
  Check c;
  struct Expected {
    const char* name;
    Graph g;
    bool has_cycle, noexit, exit, l, k, ne, all_cmp, all_per, all_aper;
    size_t lattice;
  };
  std::vector<Expected> table;
  table.push_back({"LOOP1", fixtures::loop1(), true, true, false, false, false, true, true, true,
                   false, 2});
  table.push_back({"ROSE2", fixtures::rose2(), true, false, true, true, true, false, true, false,
                   true, 2});
  table.push_back({"TOEPLITZ", fixtures::toeplitz(), true, false, true, true, false, false,
                   false, false, false, 3});
  table.push_back({"CLOCK", fixtures::clock(), true, true, false, false, false, true, true, true,
                   false, 3});
  table.push_back({"E1", fixtures::e1(), false, false, false, true, true, true, false, false,
                   false, 3});
  table.push_back({"E2", fixtures::e2(), false, false, false, true, true, true, false, false,
                   false, 4});
  table.push_back({"BIFUR", fixtures::bifur(), false, false, false, true, true, true, false,
                   false, false, 5});
  table.push_back({"INFB", fixtures::infb(), true, true, false, false, false, true, false, false,
                   false, 3});
  table.push_back({"IECYC", fixtures::iecyc(), true, false, true, true, false, false, false,
                   false, false, 4});
  for (const Expected& e : table) {
    InvariantVector v = table_row_predicates(e.g);
    std::ostringstream who;
    who << e.name;
    c.expect(v.has_cycle == e.has_cycle, who.str() + ": has_cycle");
    c.expect(v.has_noexit_cycle == e.noexit, who.str() + ": has_noexit_cycle");
    c.expect(v.has_exit_cycle == e.exit, who.str() + ": has_exit_cycle");
    c.expect(v.condition_l == e.l, who.str() + ": condition L");
    c.expect(v.condition_k == e.k, who.str() + ": condition K");
    c.expect(v.condition_ne == e.ne, who.str() + ": condition NE");
    c.expect(v.all_comparable == e.all_cmp, who.str() + ": all_comparable");
    c.expect(v.all_periodic == e.all_per, who.str() + ": all_periodic");
    c.expect(v.all_aperiodic == e.all_aper, who.str() + ": all_aperiodic");
    c.expect(v.lattice_size == e.lattice, who.str() + ": lattice size");
    c.expect(v.acyclic == !e.has_cycle, who.str() + ": acyclic consistency");
  }
  // internal consistency on random graphs
  testgen::Rng rng(testgen::seed_from_env(101));
  for (int iter = 0; iter < 200; ++iter) {
    Graph g = testgen::random_graph(rng, 6, /*row_finite=*/false);
    InvariantVector v = table_row_predicates(g);
    if (v.all_periodic) c.expect(v.condition_ne, "all_periodic implies NE");
    if (v.all_aperiodic)
      c.expect(v.condition_l && v.all_comparable, "all_aperiodic implies L and all_comparable");
    c.expect(v.acyclic == !v.has_cycle, "acyclic negates has_cycle");
    if (v.acyclic) c.expect(v.all_incomparable, "acyclic implies all_incomparable");
  }
  report(2, "classification table (pinned vectors + consistency)", c.ok, c.detail);
}

// ---------------------------------------------------------------------------
// 3. Oracle-theorem agreement
// ---------------------------------------------------------------------------
void criterion3() {
  Check c;
  testgen::Rng rng(testgen::seed_from_env(103));
  SearchCaps caps;
  caps.max_depth = 5;
  caps.max_states = 8000;
  int periodic_checked = 0, arrow_checked = 0;
  for (int iter = 0; iter < 500; ++iter) {
    Graph g = testgen::random_graph(rng, 5, /*row_finite=*/iter % 2 == 0);
    Element a = testgen::random_element(rng, g, 4, 3);
    if (a.is_zero()) continue;

    if (is_periodic(g, a)) {
      uint32_t n = periodic_period(g, a);
      SearchCaps wide;
      wide.max_depth = 2 * (n + static_cast<uint32_t>(g.vertex_count()) + 2);
      wide.max_states = 20000;
      wide.max_monomials = 128;
      auto eq = oracle_equivalent(g, a, a.shift(static_cast<int32_t>(n)), wide);
      c.expect(eq.is_yes(), "periodic element must be oracle-equivalent to its shift");
      ++periodic_checked;
    }

    // decide_arrow vs brute force wherever the brute force terminates
    Element b = testgen::random_element(rng, g, 4, 3);
    if (!b.is_zero()) {
      BfsOutcome bfs = bfs_search(g, a, b, caps);
      if (bfs.status != BfsOutcome::Status::Capped) {
        bool brute = bfs.status == BfsOutcome::Status::Found;
        bool exact = decide_arrow(g, a, b).is_yes();
        c.expect(exact == brute, "decide_arrow must agree with exhaustive search");
        ++arrow_checked;
      }
    }
    // positives: sample reducts of a and re-decide them
    if (iter % 10 == 0) {
      ReachableSet rs = reachable_elements(g, a, caps);
      size_t taken = 0;
      for (const Element& r : rs.elements) {
        if (taken++ > 4) break;
        c.expect(decide_arrow(g, a, r).is_yes(), "reducts must be decided Yes");
        ++arrow_checked;
      }
    }
    if (!c.ok) break;
  }
  std::ostringstream detail;
  detail << periodic_checked << " periodic confirmations, " << arrow_checked
         << " arrow agreements";
  report(3, "oracle-theorem agreement (500 random instances)", c.ok,
         c.ok ? detail.str() : c.detail);
}

// ---------------------------------------------------------------------------
// 4. No-descent property
// ---------------------------------------------------------------------------
void criterion4() {
  Check c;
  testgen::Rng rng(testgen::seed_from_env(107));
  SearchCaps caps;
  caps.max_depth = 6;
  caps.max_states = 4000;
  int checked = 0;
  for (int iter = 0; iter < 150; ++iter) {
    Graph g = testgen::random_graph(rng, 5, /*row_finite=*/iter % 2 == 0);
    Element a = testgen::random_element(rng, g, 3, 2);
    if (a.is_zero()) continue;
    for (uint32_t n = 1; n <= 4; ++n) {
      auto v = oracle_leq(g, a, a.shift(static_cast<int32_t>(n)), caps);
      if (v.is_yes()) {
        c.expect(v.witness->complement.is_zero(),
                 "a strictly below its shift would break the order");
      }
      ++checked;
    }
    if (!c.ok) break;
  }
  report(4, "no-descent property (a never strictly below x^n a)", c.ok,
         c.ok ? std::to_string(checked) + " shift comparisons" : c.detail);
}

// ---------------------------------------------------------------------------
// 5. Cancellativity
// ---------------------------------------------------------------------------
void criterion5() {
  Check c;
  testgen::Rng rng(testgen::seed_from_env(109));
  SearchCaps caps;
  caps.max_depth = 12;
  caps.max_states = 20000;
  int confirmed = 0;
  for (int iter = 0; iter < 4000 && confirmed < 200; ++iter) {
    Graph g = testgen::random_graph(rng, 4, /*row_finite=*/true);
    Element root = testgen::random_element(rng, g, 2, 1);
    Element cc = testgen::random_element(rng, g, 1, 1);
    if (root.is_zero() || cc.is_zero()) continue;
    // generate a ~ b from a common ancestor
    Element a = root, b = root;
    SearchCaps small;
    small.max_new_count = 1;
    for (int s = 0; s < 3; ++s) {
      auto succ = one_step_successors(g, a, small);
      if (succ.steps.empty()) break;
      a = expand(g, a, succ.steps[rng.below(static_cast<uint32_t>(succ.steps.size()))]);
    }
    for (int s = 0; s < 2; ++s) {
      auto succ = one_step_successors(g, b, small);
      if (succ.steps.empty()) break;
      b = expand(g, b, succ.steps[rng.below(static_cast<uint32_t>(succ.steps.size()))]);
    }
    auto with_c = oracle_equivalent(g, a.add(cc), b.add(cc), caps);
    if (!with_c.is_yes()) continue;  // only triples where the premise holds
    auto plain = oracle_equivalent(g, a, b, caps);
    c.expect(plain.is_yes(), "a + c ~ b + c must cancel to a ~ b");
    ++confirmed;
    if (!c.ok) break;
  }
  c.expect(confirmed >= 200, "needs 200 confirmed triples, got " + std::to_string(confirmed));
  report(5, "cancellativity (200 random triples)", c.ok,
         c.ok ? std::to_string(confirmed) + " triples" : c.detail);
}

// ---------------------------------------------------------------------------
// 6. Canonicalization soundness (concrete-edge shadow model)
// ---------------------------------------------------------------------------
void criterion6() {
  Check c;
  for (const char* which : {"INFB", "IECYC"}) {
    Graph g = std::string(which) == "INFB" ? fixtures::infb() : fixtures::iecyc();
    Vertex v = g.vertex("v");
    auto subsets = concrete::enumerate_subsets(g, v, /*max_count=*/3, /*index_pool=*/4);
    int pairs = 0;
    for (size_t i = 0; i < subsets.size() && c.ok; ++i) {
      for (size_t j = i; j < subsets.size() && c.ok; ++j) {
        if (concrete::range_counts(g, subsets[i]) != concrete::range_counts(g, subsets[j]))
          continue;
        ++pairs;
        c.expect(concrete::common_reduct_within(g, v, subsets[i], subsets[j], 4),
                 std::string(which) + ": equal range counts need a common reduct within depth 4");
        // and the canonical quotient identifies them
        c.expect(canonical_improper(g, v, subsets[i]) == canonical_improper(g, v, subsets[j]),
                 std::string(which) + ": canonicalization must identify the pair");
      }
    }
    c.expect(pairs > 0, std::string(which) + ": no pairs enumerated");
  }
  report(6, "canonicalization soundness (property Q)", c.ok, c.detail);
}

// ---------------------------------------------------------------------------
// 7. Core lemma replay
// ---------------------------------------------------------------------------
void criterion7() {
  Check c;
  testgen::Rng rng(testgen::seed_from_env(113));
  SearchCaps caps;
  caps.max_depth = 10;
  caps.max_states = 8000;
  int witnesses = 0;
  for (int iter = 0; iter < 400 && witnesses < 60; ++iter) {
    Graph g = testgen::random_graph(rng, 4, /*row_finite=*/iter % 2 == 0);
    Element a = testgen::random_element(rng, g, 3, 2);
    if (a.is_zero()) continue;
    if (!stationary_support(g, a.support())) continue;
    auto st = is_stationary(g, a);
    if (!st.is_yes()) continue;
    ++witnesses;
    auto v = verify_core_lemma(g, a, *st.witness, caps, 4);
    c.expect(v.is_yes(), "core lemma replay must succeed with k <= 4");
    if (!c.ok) break;
  }
  c.expect(witnesses >= 40, "needs enough stationary witnesses, got " + std::to_string(witnesses));
  report(7, "core lemma replay over the random corpus", c.ok,
         c.ok ? std::to_string(witnesses) + " witnesses" : c.detail);
}

// ---------------------------------------------------------------------------
// 8. Graded-classification comparator
// ---------------------------------------------------------------------------
void criterion8() {
  Check c;
  CompareReport split = compare_invariants(fixtures::rose2(), fixtures::rose2_outsplit());
  c.expect(!split.decisive, "ROSE2 vs its out-split must be inconclusive");

  CompareReport loop = compare_invariants(fixtures::loop1(), fixtures::point());
  c.expect(loop.decisive, "LOOP1 vs bare vertex must separate");
  bool cycle_cited = false;
  for (const auto& m : loop.mismatches)
    if (m.invariant == "has_cycle" || m.invariant == "acyclic") cycle_cited = true;
  c.expect(cycle_cited, "LOOP1 vs bare vertex must cite cycle existence");

  CompareReport tl = compare_invariants(fixtures::toeplitz(), fixtures::loop1());
  c.expect(tl.decisive, "TOEPLITZ vs LOOP1 must separate");
  bool l_cited = false;
  for (const auto& m : tl.mismatches)
    if (m.invariant == "condition_L") l_cited = true;
  c.expect(l_cited, "TOEPLITZ vs LOOP1 must cite Condition (L)");
  report(8, "graded-classification comparator", c.ok, c.detail);
}

// ---------------------------------------------------------------------------
// 9. Condition (K) cross-check
// ---------------------------------------------------------------------------
void criterion9() {
  Check c;
  for (const auto& [name, g] :
       std::vector<std::pair<const char*, Graph>>{{"LOOP1", fixtures::loop1()},
                                                  {"ROSE2", fixtures::rose2()},
                                                  {"TOEPLITZ", fixtures::toeplitz()},
                                                  {"CLOCK", fixtures::clock()},
                                                  {"E1", fixtures::e1()},
                                                  {"E2", fixtures::e2()},
                                                  {"BIFUR", fixtures::bifur()},
                                                  {"EXV", fixtures::exv()},
                                                  {"TWOLOOP", fixtures::twoloop()}}) {
    c.expect(condition_K(g) == condition_K_via_quotients(g),
             std::string(name) + ": K and quotient-wise L must agree");
  }
  testgen::Rng rng(testgen::seed_from_env(127));
  int checked = 0;
  for (int iter = 0; iter < 100; ++iter) {
    Graph g = testgen::random_graph(rng, 5, /*row_finite=*/true);
    c.expect(condition_K(g) == condition_K_via_quotients(g),
             "random row-finite graph: K mismatch");
    ++checked;
    if (!c.ok) break;
  }
  report(9, "condition (K) cross-check via quotients", c.ok,
         c.ok ? std::to_string(checked) + " random graphs" : c.detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (failures) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
