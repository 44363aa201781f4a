#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "talent/connectivity.hpp"
#include "talent/element.hpp"
#include "talent/graph.hpp"
#include "talent/rewrite.hpp"
#include "talent/verdict.hpp"

namespace talent {

/// Is every generator of V on a cycle or reachable from an on-cycle member
/// of V? (The support shape of elements that regenerate themselves.)
bool stationary_support(const Graph& g, const std::set<Generator>& V);

struct CoreDecomposition {
  Element core;   // a_c: monomials whose generator is on a cycle
  Element exit;   // a_e
  std::set<Generator> core_generators;
  std::set<Generator> exit_generators;
  std::vector<Cycle> core_cycles;
  uint32_t period = 1;  // lcm of minimal cycle lengths over the core
};

CoreDecomposition core_exit_split(const Graph& g, const Element& a);

/// Witness that a regenerates a shifted copy of itself: every monomial index
/// is produced by some source monomial along a positive-length path, with
/// m_i + |p_ij| = m_j + n.
struct StationaryPartition {
  uint32_t n = 0;
  std::vector<Monomial> monomials;            // normal representation of a
  std::vector<size_t> assignment;             // target index j -> source index i
  std::vector<std::vector<GroupId>> paths;    // per target index
};

Verdict<StationaryPartition> find_stationary_partition(const Graph& g, const Element& a,
                                                       uint32_t n_max = 0);
bool validate_stationary_partition(const Graph& g, const Element& a,
                                   const StationaryPartition& sp, std::string* why = nullptr);

struct StationaryWitness {
  uint32_t n = 0;
  Element b;      // a -> x^n a + b
  Chain chain;    // replayable from a
};

Verdict<StationaryWitness> is_stationary(const Graph& g, const Element& a, uint32_t n_max = 0);

/// Complete decision: every path from supp(a) stays regular and is trapped
/// by exit-free cycles.
bool is_periodic(const Graph& g, const Element& a);

struct PeriodicityWitness {
  uint32_t period = 0;
  Element common_reduct;   // reduct of both a and x^n a
  Chain chain_from_a;
  Chain chain_from_shifted;
};

uint32_t periodic_period(const Graph& g, const Element& a);
PeriodicityWitness periodic_witness(const Graph& g, const Element& a);

struct ComparabilityWitness {
  Element stationary_reduct;
  Chain chain_to_reduct;  // a -> reduct
  StationaryWitness stationarity;
  bool core_cycle_has_exit = false;
};

Verdict<ComparabilityWitness> is_comparable(const Graph& g, const Element& a,
                                            const SearchCaps& caps, uint32_t n_max = 0);
Verdict<ComparabilityWitness> is_aperiodic(const Graph& g, const Element& a,
                                           const SearchCaps& caps, uint32_t n_max = 0);

enum class ElementClass { Zero, Periodic, Aperiodic, Incomparable, Unknown };

std::string element_class_name(ElementClass c);

struct Classification {
  ElementClass label = ElementClass::Unknown;
  std::optional<uint32_t> period;
  std::optional<PeriodicityWitness> periodicity;
  std::optional<ComparabilityWitness> comparability;
  std::optional<StationaryWitness> stationarity;  // when a itself is stationary
  std::string certificate;
  SearchCaps caps;
};

Classification classify_element(const Graph& g, const Element& a, const SearchCaps& caps,
                                uint32_t n_max = 0);

struct CoreLemmaWitness {
  uint32_t k = 0;
  Element c;      // a_c -> x^{kn} a + c
  Chain chain;    // from a_c
};

/// Replays the core lemma: finds k and c with a_c -> x^{kn}a + c and
/// c + a_e ~ sum of the shifted change terms.
Verdict<CoreLemmaWitness> verify_core_lemma(const Graph& g, const Element& a,
                                            const StationaryWitness& w, const SearchCaps& caps,
                                            uint32_t k_max = 4);

}  // namespace talent
