#include "talent/graph_classify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace talent {

bool condition_L(const Graph& g) {
  for (const Cycle& c : g.all_cycles())
    if (!g.cycle_has_exit(c)) return false;
  return true;
}

bool condition_NE(const Graph& g) {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!g.on_cycle(v)) continue;
    uint64_t out = 0;
    for (GroupId gr : g.out_groups(v)) {
      if (g.group(gr).is_omega()) return false;
      out += g.group(gr).multiplicity;
    }
    if (out != 1) return false;
  }
  return true;
}

bool condition_K(const Graph& g) {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!g.on_cycle(v)) continue;
    // first returns: vertex-simple cycles through v, counted by group choice
    // with parallel multiplicity
    size_t first_returns = 0;
    for (const Cycle& c : g.cycles_through(v)) {
      bool parallel_spare = false;
      for (GroupId gr : c.groups)
        if (g.group(gr).multiplicity > 1) parallel_spare = true;
      first_returns += parallel_spare ? 2 : 1;
      if (first_returns >= 2) break;
    }
    if (first_returns >= 2) continue;
    // a pumpable detour: a cycle avoiding v, reachable from v and reaching v
    bool detour = false;
    for (Vertex u = 0; u < g.vertex_count() && !detour; ++u) {
      if (u == v) continue;
      // cycle through u inside the graph minus v
      std::vector<char> visited(g.vertex_count(), 0);
      std::function<bool(Vertex)> back = [&](Vertex w) -> bool {
        if (w == u) return true;
        if (w == v || visited[w]) return false;
        visited[w] = 1;
        for (GroupId gr : g.out_groups(w))
          if (back(g.group(gr).rng)) return true;
        return false;
      };
      bool on_cycle_avoiding_v = false;
      for (GroupId gr : g.out_groups(u)) {
        Vertex w = g.group(gr).rng;
        if (w == v) continue;
        std::fill(visited.begin(), visited.end(), 0);
        if (back(w)) {
          on_cycle_avoiding_v = true;
          break;
        }
      }
      if (!on_cycle_avoiding_v) continue;
      if (g.reaches(v, u) && g.reaches(u, v)) detour = true;
    }
    if (!detour) return false;
  }
  return true;
}

size_t count_closed_simple_paths(const Graph& g, Vertex v, uint32_t max_len, size_t cap) {
  // closed paths based at v without internal v; other vertices may repeat
  size_t count = 0;
  std::function<void(Vertex, uint32_t)> dfs = [&](Vertex u, uint32_t len) {
    if (count >= cap) return;
    if (len > max_len) return;
    for (GroupId gr : g.out_groups(u)) {
      uint32_t mult = g.group(gr).multiplicity;
      uint64_t ways = g.group(gr).is_omega() ? 2 : mult;  // two omega picks suffice for >= 2
      Vertex w = g.group(gr).rng;
      if (w == v) {
        count += ways;
        if (count >= cap) return;
      } else if (len + 1 <= max_len) {
        for (uint64_t i = 0; i < ways && count < cap; ++i) dfs(w, len + 1);
      }
    }
  };
  dfs(v, 0);
  return std::min(count, cap);
}

std::set<Vertex> hereditary_saturated_closure(const Graph& g, const std::set<Vertex>& s) {
  std::set<Vertex> h = s;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v : std::set<Vertex>(h)) {
      for (GroupId gr : g.out_groups(v))
        if (h.insert(g.group(gr).rng).second) changed = true;
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (h.count(v) || !g.is_regular(v)) continue;
      bool all_in = true;
      for (GroupId gr : g.out_groups(v))
        if (!h.count(g.group(gr).rng)) all_in = false;
      if (all_in) {
        h.insert(v);
        changed = true;
      }
    }
  }
  return h;
}

namespace {

bool is_hereditary_saturated(const Graph& g, const std::set<Vertex>& h) {
  for (Vertex v : h)
    for (GroupId gr : g.out_groups(v))
      if (!h.count(g.group(gr).rng)) return false;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (h.count(v) || !g.is_regular(v)) continue;
    bool all_in = true;
    for (GroupId gr : g.out_groups(v))
      if (!h.count(g.group(gr).rng)) all_in = false;
    if (all_in) return false;
  }
  return true;
}

}  // namespace

std::vector<std::set<Vertex>> hereditary_saturated_sets(const Graph& g) {
  size_t n = g.vertex_count();
  if (n > 20) throw GraphError("hereditary_saturated_sets: graph too large to enumerate");
  std::vector<std::set<Vertex>> out;
  for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::set<Vertex> h;
    for (size_t v = 0; v < n; ++v)
      if (mask & (1ull << v)) h.insert(static_cast<Vertex>(v));
    if (is_hereditary_saturated(g, h)) out.push_back(std::move(h));
  }
  return out;
}

std::set<Vertex> breaking_candidates(const Graph& g, const std::set<Vertex>& H) {
  std::set<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (H.count(v) || g.is_regular(v) || g.is_sink(v)) continue;
    // infinite emitter: edges into the complement must be finitely many, >= 1
    uint64_t into_complement = 0;
    bool infinite = false;
    for (GroupId gr : g.out_groups(v)) {
      if (H.count(g.group(gr).rng)) continue;
      if (g.group(gr).is_omega()) infinite = true;
      into_complement += g.group(gr).multiplicity;
    }
    if (!infinite && into_complement > 0) out.insert(v);
  }
  return out;
}

bool pair_leq(const AdmissiblePair& p, const AdmissiblePair& q) {
  if (!std::includes(q.H.begin(), q.H.end(), p.H.begin(), p.H.end())) return false;
  for (Vertex v : p.G)
    if (!q.G.count(v) && !q.H.count(v)) return false;
  return true;
}

namespace {

std::string poset_canonical_form(const std::vector<std::vector<char>>& leq) {
  // Iterative refinement on (down-set size, up-set size, neighbor colors),
  // with a final sorted fingerprint. Lattices here are tiny.
  size_t n = leq.size();
  std::vector<uint64_t> color(n);
  for (size_t i = 0; i < n; ++i) {
    size_t down = 0, up = 0;
    for (size_t j = 0; j < n; ++j) {
      if (leq[j][i]) ++down;
      if (leq[i][j]) ++up;
    }
    color[i] = down * 1000 + up;
  }
  for (size_t round = 0; round < n; ++round) {
    std::vector<uint64_t> next(n);
    for (size_t i = 0; i < n; ++i) {
      std::vector<uint64_t> lows, highs;
      for (size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (leq[j][i]) lows.push_back(color[j]);
        if (leq[i][j]) highs.push_back(color[j]);
      }
      std::sort(lows.begin(), lows.end());
      std::sort(highs.begin(), highs.end());
      uint64_t h = color[i];
      for (uint64_t x : lows) h = h * 1315423911u + x + 1;
      h = h * 31 + 7;
      for (uint64_t x : highs) h = h * 2654435761u + x + 3;
      next[i] = h;
    }
    color = std::move(next);
  }
  std::vector<uint64_t> sorted = color;
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  out << n << ":";
  for (uint64_t c : sorted) out << c << ",";
  return out.str();
}

}  // namespace

PairLattice enumerate_admissible_pairs(const Graph& g) {
  PairLattice lat;
  for (const std::set<Vertex>& H : hereditary_saturated_sets(g)) {
    std::set<Vertex> cand = breaking_candidates(g, H);
    std::vector<Vertex> cv(cand.begin(), cand.end());
    for (uint64_t mask = 0; mask < (1ull << cv.size()); ++mask) {
      AdmissiblePair p;
      p.H = H;
      for (size_t i = 0; i < cv.size(); ++i)
        if (mask & (1ull << i)) p.G.insert(cv[i]);
      lat.pairs.push_back(std::move(p));
    }
  }
  std::sort(lat.pairs.begin(), lat.pairs.end());
  size_t n = lat.pairs.size();
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) leq[i][j] = pair_leq(lat.pairs[i], lat.pairs[j]);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j || !leq[i][j]) continue;
      bool cover = true;
      for (size_t k = 0; k < n && cover; ++k)
        if (k != i && k != j && leq[i][k] && leq[k][j]) cover = false;
      if (cover) lat.covers.emplace_back(i, j);
    }
  }
  lat.canonical_form = poset_canonical_form(leq);
  return lat;
}

bool all_comparable_check(const Graph& g) {
  // good(v) = on a cycle, or regular with every successor good; well-founded
  // because non-cycle successor chains cannot return.
  std::map<Vertex, int> state;  // 0 unknown, 1 good, -1 in progress
  std::function<bool(Vertex)> good = [&](Vertex v) -> bool {
    auto it = state.find(v);
    if (it != state.end()) return it->second == 1;
    if (g.on_cycle(v)) {
      state[v] = 1;
      return true;
    }
    if (!g.is_regular(v)) {
      state[v] = -1;
      return false;
    }
    state[v] = -1;  // non-cycle dependencies are acyclic; this is a plain miss
    bool ok = true;
    for (GroupId gr : g.out_groups(v))
      if (!good(g.group(gr).rng)) ok = false;
    state[v] = ok ? 1 : -1;
    return ok;
  };
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!good(v)) return false;
  // infinite emitters must be on cycles themselves
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.is_infinite_emitter(v) && !g.on_cycle(v)) return false;
  return true;
}

bool all_periodic_check(const Graph& g) {
  if (!g.is_row_finite()) return false;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v)) return false;
  return condition_NE(g);
}

Graph quotient_by_H(const Graph& g, const std::set<Vertex>& H) {
  if (!is_hereditary_saturated(g, H))
    throw GraphError("quotient_by_H: set is not hereditary and saturated");
  std::vector<std::string> vertices;
  std::vector<std::tuple<std::string, std::string, uint32_t>> groups;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!H.count(v)) vertices.push_back(g.name(v));
  for (const EdgeGroup& eg : g.groups())
    if (!H.count(eg.src) && !H.count(eg.rng))
      groups.emplace_back(g.name(eg.src), g.name(eg.rng), eg.multiplicity);
  return Graph::validate(vertices, groups);
}

bool condition_K_via_quotients(const Graph& g) {
  if (!g.is_row_finite())
    throw GraphError("condition_K_via_quotients requires a row-finite graph");
  for (const std::set<Vertex>& H : hereditary_saturated_sets(g))
    if (!condition_L(quotient_by_H(g, H))) return false;
  return true;
}

Simplicity simplicity(const Graph& g) {
  Simplicity s;
  PairLattice lat = enumerate_admissible_pairs(g);
  s.graded_simple = lat.size() == 2;
  s.simple = s.graded_simple && condition_L(g);
  bool exit_cycle = false;
  for (const Cycle& c : g.all_cycles())
    if (g.cycle_has_exit(c)) exit_cycle = true;
  s.purely_infinite_simple = s.simple && exit_cycle;
  return s;
}

InvariantVector table_row_predicates(const Graph& g) {
  InvariantVector v;
  auto cycles = g.all_cycles();
  v.has_cycle = !cycles.empty();
  v.acyclic = cycles.empty();
  for (const Cycle& c : cycles) {
    if (g.cycle_has_exit(c))
      v.has_exit_cycle = true;
    else
      v.has_noexit_cycle = true;
  }
  v.condition_l = condition_L(g);
  v.condition_k = condition_K(g);
  v.condition_ne = condition_NE(g);
  v.all_comparable = all_comparable_check(g);
  v.all_periodic = all_periodic_check(g);
  v.all_aperiodic = v.all_comparable && v.condition_l;
  v.all_incomparable = v.acyclic;
  Simplicity s = simplicity(g);
  v.graded_simple = s.graded_simple;
  v.simple = s.simple;
  v.purely_infinite_simple = s.purely_infinite_simple;
  PairLattice lat = enumerate_admissible_pairs(g);
  v.lattice_size = lat.size();
  v.lattice_form = lat.canonical_form;
  return v;
}

CompareReport compare_invariants(const Graph& g1, const Graph& g2) {
  CompareReport rep;
  rep.first = table_row_predicates(g1);
  rep.second = table_row_predicates(g2);
  auto flag = [&](bool a, bool b, const std::string& name, const std::string& citation) {
    if (a != b)
      rep.mismatches.push_back(
          InvariantMismatch{name, a ? "true" : "false", b ? "true" : "false", citation});
  };
  const InvariantVector& x = rep.first;
  const InvariantVector& y = rep.second;
  flag(x.acyclic, y.acyclic, "acyclic", "acyclicity is determined by the monoid (item 4)");
  flag(x.has_cycle, y.has_cycle, "has_cycle", "existence of a comparable element (item 4)");
  flag(x.has_noexit_cycle, y.has_noexit_cycle, "has_noexit_cycle",
       "existence of a periodic element (item 5)");
  flag(x.has_exit_cycle, y.has_exit_cycle, "has_exit_cycle",
       "existence of an aperiodic element (item 6)");
  flag(x.condition_l, y.condition_l, "condition_L",
       "no nonzero periodic element iff Condition (L) (item 1)");
  flag(x.condition_k, y.condition_k, "condition_K",
       "quotient-wise freeness of the shift action (item 2)");
  flag(x.condition_ne, y.condition_ne, "condition_NE",
       "no aperiodic element iff no-exit (item 7)");
  flag(x.all_comparable, y.all_comparable, "all_comparable",
       "every element comparable is a monoid property");
  flag(x.all_periodic, y.all_periodic, "all_periodic",
       "every element periodic iff the no-exit row-finite sink-free condition (item 8)");
  flag(x.all_aperiodic, y.all_aperiodic, "all_aperiodic",
       "every nonzero element aperiodic is a monoid property");
  flag(x.graded_simple, y.graded_simple, "graded_simple",
       "the order-ideal lattice is a monoid invariant (item 3)");
  flag(x.simple, y.simple, "simple", "simplicity combines the lattice and Condition (L)");
  flag(x.purely_infinite_simple, y.purely_infinite_simple, "purely_infinite_simple",
       "adds the existence of an aperiodic element");
  if (x.lattice_size != y.lattice_size)
    rep.mismatches.push_back(InvariantMismatch{
        "ideal_lattice_size", std::to_string(x.lattice_size), std::to_string(y.lattice_size),
        "the order-ideal lattices must be isomorphic (item 3)"});
  else if (x.lattice_form != y.lattice_form)
    rep.mismatches.push_back(InvariantMismatch{"ideal_lattice_shape", x.lattice_form,
                                               y.lattice_form,
                                               "the order-ideal lattices must be isomorphic "
                                               "(item 3)"});
  rep.decisive = !rep.mismatches.empty();
  return rep;
}

}  // namespace talent
