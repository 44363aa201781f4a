#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace talent {

using Vertex = uint32_t;
using GroupId = uint32_t;

/// Multiplicity of a parallel-edge group; kOmega encodes infinitely many
/// parallel edges (an infinite emitter's edge bundle).
inline constexpr uint32_t kOmega = std::numeric_limits<uint32_t>::max();

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One bundle of parallel edges src -> rng. Finite groups materialize their
/// edges as (group, index) with index < multiplicity; omega groups materialize
/// indices 0,1,2,... on demand.
struct EdgeGroup {
  Vertex src = 0;
  Vertex rng = 0;
  uint32_t multiplicity = 1;  // >= 1, or kOmega

  bool is_omega() const { return multiplicity == kOmega; }
};

/// A concrete edge of some group.
struct EdgeRef {
  GroupId group = 0;
  uint32_t index = 0;

  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

/// Vertex-simple cycle: base vertex plus the group sequence traversed.
/// omega_parallel is set when some group on the cycle has omega multiplicity,
/// in which case the cycle stands for the whole family of index choices.
struct Cycle {
  Vertex base = 0;
  std::vector<GroupId> groups;
  bool omega_parallel = false;

  size_t length() const { return groups.size(); }
};

/// Finite directed multigraph with parallel-edge groups. Immutable after
/// validation; all queries are pure.
class Graph {
 public:
  static Graph validate(const std::vector<std::string>& vertex_ids,
                        const std::vector<std::tuple<std::string, std::string, uint32_t>>& groups);

  /// Line-based text format: `vertex <id>` / `edges <src> <rng> <mult>`
  /// where <mult> is a positive integer or `*` for omega.
  static Graph parse(const std::string& text);
  static Graph load(const std::string& path);

  size_t vertex_count() const { return names_.size(); }
  size_t group_count() const { return groups_.size(); }
  const std::vector<EdgeGroup>& groups() const { return groups_; }
  const EdgeGroup& group(GroupId g) const { return groups_.at(g); }

  const std::string& name(Vertex v) const { return names_.at(v); }
  std::optional<Vertex> find_vertex(const std::string& id) const;
  Vertex vertex(const std::string& id) const;

  const std::vector<GroupId>& out_groups(Vertex v) const { return out_.at(v); }
  const std::vector<GroupId>& in_groups(Vertex v) const { return in_.at(v); }

  bool is_sink(Vertex v) const { return out_.at(v).empty(); }
  bool is_infinite_emitter(Vertex v) const;
  bool is_regular(Vertex v) const;
  bool is_row_finite() const;

  /// Total multiplicity of all groups v -> w (kOmega-saturating).
  uint32_t multiplicity_to(Vertex v, Vertex w) const;
  /// Distinct range vertices of groups out of v, sorted.
  std::vector<Vertex> out_ranges(Vertex v) const;

  /// All vertices reachable from `start` by a possibly trivial path.
  std::set<Vertex> reachable(const std::set<Vertex>& start) const;
  bool reaches(Vertex from, Vertex to) const;

  /// All vertex-simple cycles through v, parallel edges collapsed to groups.
  std::vector<Cycle> cycles_through(Vertex v) const;
  std::vector<Cycle> all_cycles() const;
  bool cycle_has_exit(const Cycle& c) const;

  bool on_cycle(Vertex v) const;
  /// Length of a shortest cycle through v, if any.
  std::optional<uint32_t> min_cycle_length(Vertex v) const;
  bool is_acyclic() const;
  std::vector<Vertex> sources() const;

  /// exists_path[l][u*n+w] = true iff a path of length exactly l runs u -> w.
  /// Computed up to max_len inclusive.
  std::vector<std::vector<char>> exact_length_table(uint32_t max_len) const;

  std::string to_text() const;

 private:
  std::vector<std::string> names_;
  std::vector<EdgeGroup> groups_;
  std::vector<std::vector<GroupId>> out_;
  std::vector<std::vector<GroupId>> in_;
};

}  // namespace talent
