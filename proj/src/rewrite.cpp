#include "talent/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace talent {

namespace {

// Enumerates all range-count maps Z over the given ranges with per-range
// count <= cap(range) and at least one positive entry.
void enumerate_counts(const Graph& g, Vertex v, const RangeCounts& base, uint32_t max_new,
                      std::vector<RangeCounts>* out, bool* truncated) {
  std::vector<Vertex> ranges = g.out_ranges(v);
  std::vector<uint32_t> caps(ranges.size());
  std::vector<uint32_t> floors(ranges.size(), 0);
  for (size_t i = 0; i < ranges.size(); ++i) {
    uint32_t avail = g.multiplicity_to(v, ranges[i]);
    uint32_t floor = 0;
    for (const auto& [w, c] : base)
      if (w == ranges[i]) floor = c;
    uint32_t cap = floor + max_new;
    if (avail != kOmega) cap = std::min(cap, avail);
    if (avail == kOmega && cap < kOmega - 1) *truncated = true;
    if (avail != kOmega && floor + max_new < avail) *truncated = true;
    caps[i] = cap;
    floors[i] = floor;
  }
  RangeCounts current;
  uint64_t base_total = counts_total(base);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == ranges.size()) {
      if (counts_total(current) > base_total) out->push_back(current);
      return;
    }
    for (uint32_t c = floors[i]; c <= caps[i]; ++c) {
      if (c > 0) current.emplace_back(ranges[i], c);
      rec(i + 1);
      if (c > 0) current.pop_back();
    }
  };
  rec(0);
}

}  // namespace

SuccessorSet one_step_successors(const Graph& g, const Element& a, const SearchCaps& caps) {
  SuccessorSet out;
  std::set<Element> seen;
  for (const auto& [m, mult] : a.terms()) {
    const Generator& gen = m.gen;
    std::vector<RewriteStep> steps;
    if (gen.is_proper()) {
      Vertex v = gen.vertex();
      if (g.is_regular(v)) {
        steps.push_back(RewriteStep{Axiom::A1, m, {}});
      } else if (g.is_infinite_emitter(v)) {
        std::vector<RangeCounts> zs;
        enumerate_counts(g, v, {}, caps.max_new_count, &zs, &out.truncated);
        for (auto& z : zs) steps.push_back(RewriteStep{Axiom::A2, m, std::move(z)});
      }
    } else {
      std::vector<RangeCounts> ws;
      enumerate_counts(g, gen.vertex(), gen.counts(), caps.max_new_count, &ws, &out.truncated);
      for (auto& w : ws) steps.push_back(RewriteStep{Axiom::A3, m, std::move(w)});
    }
    for (RewriteStep& s : steps) {
      Element succ = expand(g, a, s);
      if (succ.monomial_count() > caps.max_monomials) {
        out.truncated = true;
        continue;
      }
      if (seen.insert(succ).second) out.steps.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

struct BfsState {
  std::map<Element, std::pair<Element, RewriteStep>> parent;  // child -> (parent, step)
  bool truncated = false;
  bool capped = false;
  size_t states = 0;

  Chain chain_to(const Graph& g, const Element& from, const Element& to) const {
    Chain chain;
    Element cur = to;
    while (!(cur == from)) {
      auto it = parent.find(cur);
      if (it == parent.end()) throw RewriteError("bfs chain reconstruction failed");
      chain.push_back(it->second.second);
      cur = it->second.first;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
  }
};

// Generic BFS; visit returns true to stop early.
template <typename Visit>
void bfs(const Graph& g, const Element& a, const SearchCaps& caps, BfsState* st, Visit visit) {
  std::deque<std::pair<Element, uint32_t>> queue;
  std::set<Element> seen;
  queue.push_back({a, 0});
  seen.insert(a);
  st->states = 1;
  if (visit(a)) return;
  while (!queue.empty()) {
    auto [cur, depth] = queue.front();
    queue.pop_front();
    if (depth >= caps.max_depth) {
      st->capped = true;
      continue;
    }
    SuccessorSet succ = one_step_successors(g, cur, caps);
    st->truncated = st->truncated || succ.truncated;
    for (const RewriteStep& step : succ.steps) {
      Element next = expand(g, cur, step);
      if (!seen.insert(next).second) continue;
      if (st->states >= caps.max_states) {
        st->capped = true;
        return;
      }
      st->parent.emplace(next, std::make_pair(cur, step));
      ++st->states;
      if (visit(next)) return;
      queue.push_back({next, depth + 1});
    }
  }
}

}  // namespace

ReachableSet reachable_elements(const Graph& g, const Element& a, const SearchCaps& caps) {
  ReachableSet out;
  BfsState st;
  bfs(g, a, caps, &st, [&](const Element& e) {
    out.elements.insert(e);
    return false;
  });
  out.states_seen = st.states;
  out.complete = !st.capped && !st.truncated;
  return out;
}

BfsOutcome bfs_search(const Graph& g, const Element& a, const Element& b, const SearchCaps& caps) {
  BfsOutcome out;
  BfsState st;
  bool found = false;
  bfs(g, a, caps, &st, [&](const Element& e) {
    if (e == b) {
      found = true;
      return true;
    }
    return false;
  });
  out.states_seen = st.states;
  if (found) {
    out.status = BfsOutcome::Status::Found;
    out.chain = st.chain_to(g, a, b);
  } else if (!st.capped && !st.truncated) {
    out.status = BfsOutcome::Status::ExhaustedAbsent;
  } else {
    out.status = BfsOutcome::Status::Capped;
  }
  return out;
}

std::vector<std::pair<Element, Chain>> expansion_diagonal(const Graph& g, const Element& a,
                                                          uint32_t rounds) {
  std::vector<std::pair<Element, Chain>> out;
  Element cur = a;
  Chain chain;
  out.push_back({cur, chain});
  for (uint32_t r = 0; r < rounds; ++r) {
    bool any = false;
    Element next = cur;
    for (const auto& [m, mult] : cur.terms()) {
      if (!m.gen.is_proper() || !g.is_regular(m.gen.vertex())) continue;
      for (uint64_t i = 0; i < mult; ++i) {
        RewriteStep step{Axiom::A1, m, {}};
        next = expand(g, next, step);
        chain.push_back(step);
        any = true;
      }
    }
    if (!any) break;
    cur = next;
    out.push_back({cur, chain});
  }
  return out;
}

Verdict<Chain> oracle_leads_to(const Graph& g, const Element& a, const Element& b,
                               const SearchCaps& caps) {
  if (a.is_zero() || b.is_zero()) {
    if (a == b) return Verdict<Chain>::yes(Chain{});
    return Verdict<Chain>::no("zero is rewriting-inert");
  }
  BfsOutcome bfsr = bfs_search(g, a, b, caps);
  if (bfsr.status == BfsOutcome::Status::Found) return Verdict<Chain>::yes(bfsr.chain);

  ArrowEngine eng(g);
  auto exact = eng.decide(a, b);
  if (exact.is_no())
    return Verdict<Chain>::no("exact decision refutes: " + exact.certificate);
  // The relation holds; surface the replayed exact witness as the chain.
  auto chain = eng.decide_chain(a, b);
  if (chain) return Verdict<Chain>::yes(*chain, "found by the exact decision beyond search caps");
  return Verdict<Chain>::unknown("search caps exhausted");
}

namespace {

// Sound necessary condition for b to reach an element containing x^d at a
// persistent generator (sink / emitter / improper all pin their vertex at a
// fixed degree).
bool has_supplier(const Graph& g, const Element& b, int32_t degree, Vertex vertex,
                  std::vector<std::vector<char>>* table) {
  int32_t min_deg = b.min_degree();
  if (degree < min_deg) return false;
  uint32_t need = static_cast<uint32_t>(degree - min_deg);
  if (table->size() <= need) *table = g.exact_length_table(need + 4);
  size_t n = g.vertex_count();
  for (const auto& [m, mult] : b.terms()) {
    if (m.degree > degree) continue;
    uint32_t len = static_cast<uint32_t>(degree - m.degree);
    if ((*table)[len][m.gen.vertex() * n + vertex]) return true;
  }
  return false;
}

// Refutes a ~ b when a monomial of one side pins a (degree, vertex) that the
// other side can never supply.
std::optional<std::string> equivalence_obstruction(const Graph& g, const Element& a,
                                                   const Element& b) {
  std::vector<std::vector<char>> table;
  auto check = [&](const Element& x, const Element& y,
                   const char* side) -> std::optional<std::string> {
    for (const auto& [m, mult] : x.terms()) {
      Vertex v = m.gen.vertex();
      bool persistent = m.gen.is_improper() || g.is_sink(v) || g.is_infinite_emitter(v);
      if (!persistent) continue;
      if (!has_supplier(g, y, m.degree, v, &table)) {
        std::ostringstream why;
        why << "monomial at degree " << m.degree << " over " << g.name(v) << " in " << side
            << " cannot be supplied by the other side";
        return why.str();
      }
    }
    return std::nullopt;
  };
  if (auto r = check(a, b, "lhs")) return r;
  if (auto r = check(b, a, "rhs")) return r;
  return std::nullopt;
}

}  // namespace

Verdict<EquivWitness> oracle_equivalent(const Graph& g, const Element& a, const Element& b,
                                        const SearchCaps& caps) {
  if (a == b) return Verdict<EquivWitness>::yes(EquivWitness{a, {}, {}});
  if (a.is_zero() || b.is_zero())
    return Verdict<EquivWitness>::no("zero is equivalent only to itself");

  if (auto why = equivalence_obstruction(g, a, b))
    return Verdict<EquivWitness>::no(*why);

  ArrowEngine eng(g);

  // Candidates reachable from a, each checked exactly from b.
  ReachableSet ra = reachable_elements(g, a, caps);
  for (const Element& c : ra.elements) {
    auto from_b = eng.decide(b, c);
    if (from_b.is_yes()) {
      BfsOutcome oa = bfs_search(g, a, c, caps);
      Chain chain_a = oa.status == BfsOutcome::Status::Found ? oa.chain : Chain{};
      auto chain_b = eng.decide_chain(b, c);
      return Verdict<EquivWitness>::yes(EquivWitness{c, chain_a, chain_b.value_or(Chain{})});
    }
  }
  // Full-expansion diagonal of a (reaches rotation-aligned reducts quickly).
  for (const auto& [c, chain] : expansion_diagonal(g, a, caps.max_depth)) {
    auto from_b = eng.decide(b, c);
    if (from_b.is_yes()) {
      auto chain_b = eng.decide_chain(b, c);
      return Verdict<EquivWitness>::yes(EquivWitness{c, chain, chain_b.value_or(Chain{})});
    }
  }

  if (ra.complete) {
    ReachableSet rb = reachable_elements(g, b, caps);
    if (rb.complete)
      return Verdict<EquivWitness>::no("both reachable sets exhausted with no common reduct");
  }
  return Verdict<EquivWitness>::unknown("no common reduct within caps");
}

Verdict<LeqWitness> oracle_leq(const Graph& g, const Element& a, const Element& b,
                               const SearchCaps& caps) {
  if (a.is_zero()) {
    return Verdict<LeqWitness>::yes(LeqWitness{b, Element{}, b, {}, {}});
  }
  if (b.is_zero()) return Verdict<LeqWitness>::no("nonzero is never below zero");

  ArrowEngine eng(g);
  auto try_candidate = [&](const Element& e, const Chain& chain_b)
      -> std::optional<Verdict<LeqWitness>> {
    auto r = eng.decide_with_remainder(a, e);
    if (!r) return std::nullopt;
    return Verdict<LeqWitness>::yes(
        LeqWitness{e, r->kept, e.subtract(r->kept), chain_b, r->chain});
  };

  ReachableSet rb = reachable_elements(g, b, caps);
  for (const Element& e : rb.elements) {
    if (auto v = try_candidate(e, Chain{})) {
      // reconstruct the chain b -> e for the witness
      BfsOutcome ob = bfs_search(g, b, e, caps);
      v->witness->chain_b = ob.status == BfsOutcome::Status::Found ? ob.chain : Chain{};
      return *v;
    }
  }
  for (const auto& [e, chain] : expansion_diagonal(g, b, caps.max_depth)) {
    if (auto v = try_candidate(e, chain)) return *v;
  }
  if (rb.complete) return Verdict<LeqWitness>::no("reachable set of b exhausted with no witness");
  return Verdict<LeqWitness>::unknown("no witness within caps");
}

Refinement check_refinement(const Graph& g, const Element& a_prime, const Element& a_second,
                            const Element& b, const Chain& chain) {
  Element whole = a_prime.add(a_second);
  Element left = a_prime;
  Element right = a_second;
  size_t steps_left = 0, steps_right = 0;
  for (const RewriteStep& step : chain) {
    if (whole.multiplicity(step.target) == 0)
      throw RewriteError("check_refinement: chain does not apply");
    Element yield = axiom_yield(g, step);
    whole = whole.subtract(Element::monomial(step.target.degree, step.target.gen)).add(yield);
    if (left.multiplicity(step.target) > 0) {
      left = left.subtract(Element::monomial(step.target.degree, step.target.gen)).add(yield);
      ++steps_left;
    } else if (right.multiplicity(step.target) > 0) {
      right = right.subtract(Element::monomial(step.target.degree, step.target.gen)).add(yield);
      ++steps_right;
    } else {
      throw RewriteError("check_refinement: step target in neither summand");
    }
  }
  if (!(whole == b)) throw RewriteError("check_refinement: chain does not produce b");
  return Refinement{left, right, steps_left, steps_right};
}

}  // namespace talent
