#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "talent/axioms.hpp"
#include "talent/element.hpp"
#include "talent/graph.hpp"
#include "talent/verdict.hpp"

namespace talent {

/// A connection g ~> h along a path, with the defining case:
///   1: proper -> proper      2: proper -> improper
///   3: improper -> proper    4: improper -> improper
/// Paths are group-id sequences; parallel edges collapse to group choices.
struct GenPath {
  Generator source;
  Generator target;
  std::vector<GroupId> groups;
  int case_tag = 1;

  size_t length() const { return groups.size(); }
};

/// All connections g ~>^p h of exactly the given length.
std::vector<GenPath> connects(const Graph& g, const Generator& from, const Generator& to,
                              uint32_t length);
bool generator_connects(const Graph& g, const Generator& from, const Generator& to);
bool generator_on_cycle(const Graph& g, const Generator& gen);
/// Length of a shortest positive-length connection gen ~> gen, if any.
std::optional<uint32_t> generator_min_cycle(const Graph& g, const Generator& gen);

/// Witness for a -> b: a partition of b's monomials over a's monomials plus
/// connecting paths of the forced lengths.
struct PathSystem {
  std::vector<Monomial> sources;              // normal representation of a
  std::vector<Monomial> targets;              // normal representation of b
  std::vector<size_t> assignment;             // target j is produced by source assignment[j]
  std::vector<std::vector<GroupId>> paths;    // path for target j

  std::vector<std::vector<size_t>> partition() const;  // I_i per source
};

/// One entry of the per-prefix audit trail of a PathSystem.
struct PrefixAudit {
  size_t source = 0;
  std::vector<GroupId> prefix;
  Vertex vertex = 0;
  std::vector<GroupId> extension_groups;  // groups continuing some path after this prefix
};

std::vector<PrefixAudit> path_system_audit(const Graph& g, const PathSystem& ps);

/// Declarative witness check: lengths, connection cases, and the prefix
/// conditions (necessary for a -> b; the engine guarantees sufficiency).
bool validate_path_system(const Graph& g, const Element& a, const Element& b,
                          const PathSystem& ps, std::string* why = nullptr);

/// Exact decision a -> (targets) + remainder, used by the order oracle and
/// the core-lemma replay. `kept` is the sub-multiset of `e` that a rewrites
/// to exactly; `full` is the materialized reduct of a (kept + produced rest).
struct ArrowRemainder {
  Element kept;
  Element full;
  Chain chain;
};

/// Exact graph-theoretic decision procedure for the relation a -> b.
/// Complete on finite graphs: the verdict is always Yes or No.
class ArrowEngine {
 public:
  struct Impl;

  explicit ArrowEngine(const Graph& g);
  ~ArrowEngine();
  ArrowEngine(const ArrowEngine&) = delete;
  ArrowEngine& operator=(const ArrowEngine&) = delete;

  const Graph& graph() const;

  Verdict<PathSystem> decide(const Element& a, const Element& b, bool a1_only = false);

  /// Chain realizing the last Yes verdict's system (or a fresh decision).
  std::optional<Chain> decide_chain(const Element& a, const Element& b, bool a1_only = false);

  /// Does x^m g -> (multiset of targets) + some remainder hold?
  /// Target offsets are relative to the source degree.
  bool realizable(const Generator& src, const std::vector<std::pair<uint32_t, Generator>>& targets,
                  bool a1_only = false);
  /// Chain for a realizable target set, applied to the monomial x^0 src.
  std::optional<Chain> realize_chain(const Generator& src,
                                     const std::vector<std::pair<uint32_t, Generator>>& targets,
                                     bool a1_only = false);
  /// Paths serving each target of a realizable set, keyed (offset, generator).
  std::optional<std::vector<std::pair<std::pair<uint32_t, Generator>, std::vector<GroupId>>>>
  realize_paths(const Generator& src, const std::vector<std::pair<uint32_t, Generator>>& targets,
                bool a1_only = false);

  /// Enumerates realizations of a -> (every monomial of `targets`) + rest,
  /// feeding each chain (from a) to the visitor until it returns true.
  bool realize_cover_enumerate(const Element& a, const Element& targets, size_t budget,
                               const std::function<bool(const Chain&)>& visit);

  /// Largest-effort search for a sub-multiset e_a of e with a -> e_a exactly.
  std::optional<ArrowRemainder> decide_with_remainder(const Element& a, const Element& e);

 private:
  std::unique_ptr<Impl> impl_;
};

Verdict<PathSystem> decide_arrow(const Graph& g, const Element& a, const Element& b);
Verdict<PathSystem> decide_arrow_a1(const Graph& g, const Element& a, const Element& b);

/// Degree-free support-level connection G -> H with a constructive witness.
struct SupportRealization {
  Generator source;
  Element realized;                        // c_g with supp ⊆ H, degrees relative to 0
  std::vector<std::vector<GroupId>> paths; // one per monomial of `realized`
};

struct SupportSystem {
  std::vector<SupportRealization> parts;  // one per generator of G
};

Verdict<SupportSystem> supports_connect(const Graph& g, const std::set<Generator>& G,
                                        const std::set<Generator>& H);
Verdict<SupportSystem> supports_connect_a1(const Graph& g, const std::set<Generator>& G,
                                           const std::set<Generator>& H);

/// Builds nonzero c with supp(c) ⊆ H and a -> c from a support witness.
Element realize_from_supports(const Graph& g, const Element& a, const SupportSystem& sys);

}  // namespace talent
