#pragma once

#include <set>
#include <vector>

#include "talent/axioms.hpp"
#include "talent/connectivity.hpp"
#include "talent/element.hpp"
#include "talent/graph.hpp"
#include "talent/verdict.hpp"

namespace talent {

/// Bounds for the brute-force state-space exploration. Verdicts are exact
/// relative to these caps; every cap hit surfaces as Unknown, never silently.
struct SearchCaps {
  uint32_t max_depth = 12;
  uint32_t max_monomials = 64;
  uint32_t max_new_count = 2;  // counts introduced into Z/W for omega groups
  uint32_t max_states = 50000;
  uint32_t n_max = 0;  // 0 = per-element schedule
};

struct SuccessorSet {
  std::vector<RewriteStep> steps;  // deterministic order, distinct results
  bool truncated = false;          // some A2/A3 enumeration hit max_new_count
};

/// All distinct one-step successors of `a`.
SuccessorSet one_step_successors(const Graph& g, const Element& a, const SearchCaps& caps);

struct ReachableSet {
  std::set<Element> elements;  // includes a
  bool complete = false;       // BFS closed with no cap hit, no truncation
  size_t states_seen = 0;
};

ReachableSet reachable_elements(const Graph& g, const Element& a, const SearchCaps& caps);

/// Raw breadth-first search a ->* b. Independent of the exact decision
/// procedure; used to cross-validate it.
struct BfsOutcome {
  enum class Status { Found, ExhaustedAbsent, Capped } status = Status::Capped;
  Chain chain;  // Found only
  size_t states_seen = 0;
};

BfsOutcome bfs_search(const Graph& g, const Element& a, const Element& b, const SearchCaps& caps);

/// Repeatedly expands every regular monomial once per round ("full
/// expansion"); returns the elements on this canonical diagonal with their
/// chains. Stops early when nothing is expandable.
std::vector<std::pair<Element, Chain>> expansion_diagonal(const Graph& g, const Element& a,
                                                          uint32_t rounds);

Verdict<Chain> oracle_leads_to(const Graph& g, const Element& a, const Element& b,
                               const SearchCaps& caps);

struct EquivWitness {
  Element reduct;
  Chain chain_a;
  Chain chain_b;
};

Verdict<EquivWitness> oracle_equivalent(const Graph& g, const Element& a, const Element& b,
                                        const SearchCaps& caps);

struct LeqWitness {
  Element reduct;      // e with b -> e
  Element kept;        // e_a ⊆ e with a -> e_a
  Element complement;  // c = e - e_a, so a + c ~ b
  Chain chain_b;       // b -> e
  Chain chain_a;       // a -> e_a
};

Verdict<LeqWitness> oracle_leq(const Graph& g, const Element& a, const Element& b,
                               const SearchCaps& caps);

struct Refinement {
  Element b_prime;
  Element b_second;
  size_t steps_prime = 0;
  size_t steps_second = 0;
};

/// Splits a chain a' + a'' ->^n b along the two summands.
Refinement check_refinement(const Graph& g, const Element& a_prime, const Element& a_second,
                            const Element& b, const Chain& chain);

}  // namespace talent
