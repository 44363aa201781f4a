#pragma once

#include <set>
#include <string>
#include <vector>

#include "talent/graph.hpp"

namespace talent {

bool condition_L(const Graph& g);
bool condition_NE(const Graph& g);
/// Every base of a closed simple path bases at least two of them.
bool condition_K(const Graph& g);
/// Brute-force count (capped at `cap`) of closed simple paths based at v with
/// length <= max_len; used to validate condition_K on small graphs.
size_t count_closed_simple_paths(const Graph& g, Vertex v, uint32_t max_len, size_t cap);

std::set<Vertex> hereditary_saturated_closure(const Graph& g, const std::set<Vertex>& s);
std::vector<std::set<Vertex>> hereditary_saturated_sets(const Graph& g);

struct AdmissiblePair {
  std::set<Vertex> H;
  std::set<Vertex> G;

  friend auto operator<=>(const AdmissiblePair&, const AdmissiblePair&) = default;
};

/// G(H): non-regular vertices outside H with finitely many (and some) edges
/// into the complement of H.
std::set<Vertex> breaking_candidates(const Graph& g, const std::set<Vertex>& H);

struct PairLattice {
  std::vector<AdmissiblePair> pairs;              // sorted
  std::vector<std::pair<size_t, size_t>> covers;  // Hasse diagram (lower, upper)
  std::string canonical_form;                     // label-free poset fingerprint

  size_t size() const { return pairs.size(); }
};

bool pair_leq(const AdmissiblePair& p, const AdmissiblePair& q);
PairLattice enumerate_admissible_pairs(const Graph& g);

bool all_comparable_check(const Graph& g);
bool all_periodic_check(const Graph& g);

struct Simplicity {
  bool graded_simple = false;
  bool simple = false;
  bool purely_infinite_simple = false;
};

Simplicity simplicity(const Graph& g);

Graph quotient_by_H(const Graph& g, const std::set<Vertex>& H);
/// Row-finite graphs only: condition (L) of every H-quotient.
bool condition_K_via_quotients(const Graph& g);

struct InvariantVector {
  bool has_cycle = false;
  bool acyclic = false;
  bool has_noexit_cycle = false;
  bool has_exit_cycle = false;
  bool condition_l = false;
  bool condition_k = false;
  bool condition_ne = false;
  bool all_comparable = false;
  bool all_periodic = false;
  bool all_aperiodic = false;
  bool all_incomparable = false;
  bool graded_simple = false;
  bool simple = false;
  bool purely_infinite_simple = false;
  size_t lattice_size = 0;
  std::string lattice_form;

  friend bool operator==(const InvariantVector&, const InvariantVector&) = default;
};

InvariantVector table_row_predicates(const Graph& g);

struct InvariantMismatch {
  std::string invariant;
  std::string value1;
  std::string value2;
  std::string citation;
};

struct CompareReport {
  bool decisive = false;  // true: necessarily non-isomorphic graph monoids
  std::vector<InvariantMismatch> mismatches;
  InvariantVector first;
  InvariantVector second;
};

CompareReport compare_invariants(const Graph& g1, const Graph& g2);

}  // namespace talent
