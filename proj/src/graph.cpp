#include "talent/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <tuple>

namespace talent {

Graph Graph::validate(const std::vector<std::string>& vertex_ids,
                      const std::vector<std::tuple<std::string, std::string, uint32_t>>& groups) {
  Graph g;
  std::map<std::string, Vertex> index;
  for (const auto& id : vertex_ids) {
    if (id.empty()) throw GraphError("empty vertex id");
    if (index.count(id)) throw GraphError("duplicate vertex id: " + id);
    index[id] = static_cast<Vertex>(g.names_.size());
    g.names_.push_back(id);
  }
  g.out_.resize(g.names_.size());
  g.in_.resize(g.names_.size());
  for (const auto& [src, rng, mult] : groups) {
    auto si = index.find(src);
    auto ri = index.find(rng);
    if (si == index.end()) throw GraphError("unknown vertex in edge group: " + src);
    if (ri == index.end()) throw GraphError("unknown vertex in edge group: " + rng);
    if (mult == 0) throw GraphError("zero multiplicity in edge group " + src + " -> " + rng);
    GroupId id = static_cast<GroupId>(g.groups_.size());
    g.groups_.push_back(EdgeGroup{si->second, ri->second, mult});
    g.out_[si->second].push_back(id);
    g.in_[ri->second].push_back(id);
  }
  return g;
}

Graph Graph::parse(const std::string& text) {
  std::vector<std::string> vertices;
  std::vector<std::tuple<std::string, std::string, uint32_t>> groups;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "vertex") {
      std::string id;
      if (!(ls >> id)) throw GraphError("line " + std::to_string(lineno) + ": vertex id expected");
      vertices.push_back(id);
    } else if (kw == "edges") {
      std::string src, rng, m;
      if (!(ls >> src >> rng >> m))
        throw GraphError("line " + std::to_string(lineno) + ": expected `edges <src> <rng> <mult>`");
      uint32_t mult = 0;
      if (m == "*") {
        mult = kOmega;
      } else {
        try {
          unsigned long parsed = std::stoul(m);
          if (parsed == 0 || parsed >= kOmega) throw std::out_of_range("mult");
          mult = static_cast<uint32_t>(parsed);
        } catch (const std::exception&) {
          throw GraphError("line " + std::to_string(lineno) + ": bad multiplicity `" + m + "`");
        }
      }
      groups.emplace_back(src, rng, mult);
    } else {
      throw GraphError("line " + std::to_string(lineno) + ": unknown keyword `" + kw + "`");
    }
  }
  return validate(vertices, groups);
}

Graph Graph::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw GraphError("cannot open graph file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::optional<Vertex> Graph::find_vertex(const std::string& id) const {
  for (Vertex v = 0; v < names_.size(); ++v)
    if (names_[v] == id) return v;
  return std::nullopt;
}

Vertex Graph::vertex(const std::string& id) const {
  auto v = find_vertex(id);
  if (!v) throw GraphError("unknown vertex: " + id);
  return *v;
}

bool Graph::is_infinite_emitter(Vertex v) const {
  for (GroupId g : out_.at(v))
    if (groups_[g].is_omega()) return true;
  return false;
}

bool Graph::is_regular(Vertex v) const {
  return !out_.at(v).empty() && !is_infinite_emitter(v);
}

bool Graph::is_row_finite() const {
  for (const auto& g : groups_)
    if (g.is_omega()) return false;
  return true;
}

uint32_t Graph::multiplicity_to(Vertex v, Vertex w) const {
  uint64_t total = 0;
  for (GroupId g : out_.at(v)) {
    if (groups_[g].rng != w) continue;
    if (groups_[g].is_omega()) return kOmega;
    total += groups_[g].multiplicity;
  }
  return total >= kOmega ? kOmega - 1 : static_cast<uint32_t>(total);
}

std::vector<Vertex> Graph::out_ranges(Vertex v) const {
  std::set<Vertex> rs;
  for (GroupId g : out_.at(v)) rs.insert(groups_[g].rng);
  return {rs.begin(), rs.end()};
}

std::set<Vertex> Graph::reachable(const std::set<Vertex>& start) const {
  for (Vertex v : start)
    if (v >= names_.size()) throw GraphError("reachable: vertex out of range");
  std::set<Vertex> seen = start;
  std::queue<Vertex> q;
  for (Vertex v : start) q.push(v);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (GroupId g : out_[v]) {
      Vertex w = groups_[g].rng;
      if (seen.insert(w).second) q.push(w);
    }
  }
  return seen;
}

bool Graph::reaches(Vertex from, Vertex to) const {
  return reachable({from}).count(to) > 0;
}

std::vector<Cycle> Graph::cycles_through(Vertex v) const {
  // DFS over vertex-simple paths starting and ending at v; parallel edges
  // are distinguished by group only.
  std::vector<Cycle> result;
  std::vector<GroupId> stack;
  std::vector<char> visited(names_.size(), 0);

  auto dfs = [&](auto&& self, Vertex u) -> void {
    for (GroupId g : out_[u]) {
      Vertex w = groups_[g].rng;
      if (w == v) {
        Cycle c;
        c.base = v;
        c.groups = stack;
        c.groups.push_back(g);
        for (GroupId cg : c.groups)
          if (groups_[cg].is_omega()) c.omega_parallel = true;
        result.push_back(std::move(c));
      } else if (!visited[w]) {
        visited[w] = 1;
        stack.push_back(g);
        self(self, w);
        stack.pop_back();
        visited[w] = 0;
      }
    }
  };
  visited[v] = 1;
  dfs(dfs, v);
  std::sort(result.begin(), result.end(),
            [](const Cycle& a, const Cycle& b) { return a.groups < b.groups; });
  return result;
}

std::vector<Cycle> Graph::all_cycles() const {
  // Enumerate each cycle once, based at its smallest vertex.
  std::vector<Cycle> result;
  for (Vertex v = 0; v < names_.size(); ++v) {
    for (Cycle& c : cycles_through(v)) {
      bool minimal = true;
      Vertex u = v;
      for (GroupId g : c.groups) {
        if (groups_[g].src < v) {
          minimal = false;
          break;
        }
        u = groups_[g].rng;
      }
      (void)u;
      if (minimal) result.push_back(std::move(c));
    }
  }
  return result;
}

bool Graph::cycle_has_exit(const Cycle& c) const {
  if (c.groups.empty()) throw GraphError("cycle_has_exit: empty cycle");
  std::set<GroupId> on_cycle(c.groups.begin(), c.groups.end());
  Vertex u = c.base;
  for (GroupId g : c.groups) {
    if (groups_[g].src != u) throw GraphError("cycle_has_exit: not a cycle of this graph");
    for (GroupId out : out_[u]) {
      if (!on_cycle.count(out)) return true;
      // A group on the cycle with multiplicity >= 2 leaves spare parallel
      // edges, and those are exits.
      if (groups_[out].multiplicity > 1) return true;
    }
    u = groups_[g].rng;
  }
  if (u != c.base) throw GraphError("cycle_has_exit: cycle does not close");
  return false;
}

bool Graph::on_cycle(Vertex v) const {
  for (GroupId g : out_.at(v))
    if (reaches(groups_[g].rng, v)) return true;
  return false;
}

std::optional<uint32_t> Graph::min_cycle_length(Vertex v) const {
  // 1 + shortest path from a successor of v back to v.
  std::optional<uint32_t> best;
  std::vector<int64_t> dist(names_.size(), -1);
  // BFS of distances *to* v over reversed edges.
  std::queue<Vertex> q;
  dist[v] = 0;
  q.push(v);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (GroupId g : in_[u]) {
      Vertex p = groups_[g].src;
      if (dist[p] < 0) {
        dist[p] = dist[u] + 1;
        q.push(p);
      }
    }
  }
  for (GroupId g : out_.at(v)) {
    Vertex w = groups_[g].rng;
    int64_t d = (w == v) ? 0 : dist[w];
    if (d >= 0) {
      uint32_t len = static_cast<uint32_t>(d) + 1;
      if (!best || len < *best) best = len;
    }
  }
  return best;
}

bool Graph::is_acyclic() const {
  for (Vertex v = 0; v < names_.size(); ++v)
    if (on_cycle(v)) return false;
  return true;
}

std::vector<Vertex> Graph::sources() const {
  std::vector<Vertex> result;
  for (Vertex v = 0; v < names_.size(); ++v)
    if (in_[v].empty()) result.push_back(v);
  return result;
}

std::vector<std::vector<char>> Graph::exact_length_table(uint32_t max_len) const {
  size_t n = names_.size();
  std::vector<std::vector<char>> table(max_len + 1, std::vector<char>(n * n, 0));
  for (size_t u = 0; u < n; ++u) table[0][u * n + u] = 1;
  for (uint32_t l = 1; l <= max_len; ++l) {
    for (const auto& g : groups_) {
      for (size_t w = 0; w < n; ++w) {
        if (table[l - 1][g.rng * n + w]) table[l][g.src * n + w] = 1;
      }
    }
  }
  return table;
}

std::string Graph::to_text() const {
  std::ostringstream out;
  for (const auto& nm : names_) out << "vertex " << nm << "\n";
  for (const auto& g : groups_) {
    out << "edges " << names_[g.src] << " " << names_[g.rng] << " ";
    if (g.is_omega())
      out << "*";
    else
      out << g.multiplicity;
    out << "\n";
  }
  return out.str();
}

}  // namespace talent
