#include "talent/classify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace talent {

namespace {

std::vector<Monomial> flatten(const Element& a) {
  std::vector<Monomial> out;
  for (const auto& [m, c] : a.terms())
    for (uint64_t i = 0; i < c; ++i) out.push_back(m);
  return out;
}

uint64_t lcm64(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return a | b;
  return a / std::gcd(a, b) * b;
}

}  // namespace

bool stationary_support(const Graph& g, const std::set<Generator>& V) {
  if (V.empty()) return false;
  std::vector<Generator> on_cycle;
  for (const Generator& gen : V)
    if (generator_on_cycle(g, gen)) on_cycle.push_back(gen);
  if (on_cycle.empty()) return false;
  for (const Generator& gen : V) {
    if (generator_on_cycle(g, gen)) continue;
    bool reached = false;
    for (const Generator& h : on_cycle)
      if (generator_connects(g, h, gen)) {
        reached = true;
        break;
      }
    if (!reached) return false;
  }
  return true;
}

CoreDecomposition core_exit_split(const Graph& g, const Element& a) {
  if (a.is_zero()) throw ElementError("core_exit_split: zero element");
  if (!stationary_support(g, a.support()))
    throw ElementError("core_exit_split: support is not stationary");
  CoreDecomposition out;
  uint64_t period = 1;
  for (const auto& [m, c] : a.terms()) {
    if (generator_on_cycle(g, m.gen)) {
      out.core.insert(m, c);
      out.core_generators.insert(m.gen);
    } else {
      out.exit.insert(m, c);
      out.exit_generators.insert(m.gen);
    }
  }
  for (const Generator& gen : out.core_generators) {
    auto n_g = generator_min_cycle(g, gen);
    if (!n_g) throw ElementError("core generator lost its cycle");
    period = lcm64(period, *n_g);
    for (const Cycle& c : g.cycles_through(gen.vertex())) out.core_cycles.push_back(c);
  }
  out.period = static_cast<uint32_t>(period);
  return out;
}

namespace {

uint32_t default_n_max(const Element& a, uint32_t core_period) {
  uint32_t spread = static_cast<uint32_t>(a.max_degree() - a.min_degree());
  uint64_t n = static_cast<uint64_t>(core_period) *
               (1 + spread + static_cast<uint64_t>(a.monomial_count()));
  return static_cast<uint32_t>(std::min<uint64_t>(n, 1u << 16));
}

}  // namespace

Verdict<StationaryPartition> find_stationary_partition(const Graph& g, const Element& a,
                                                       uint32_t n_max) {
  using V = Verdict<StationaryPartition>;
  if (a.is_zero()) return V::no("zero element has no stationary partition");
  if (!stationary_support(g, a.support()))
    return V::no("support is not stationary: some generator is neither on a cycle nor fed by one");

  CoreDecomposition split = core_exit_split(g, a);
  uint32_t p0 = split.period == 0 ? 1 : split.period;
  if (n_max == 0) n_max = default_n_max(a, p0);

  std::vector<Monomial> ms = flatten(a);
  size_t K = ms.size();
  ArrowEngine eng(g);

  for (uint64_t n = p0; n <= n_max; n += p0) {
    // assignment of every index j to a producing index i
    std::vector<size_t> assign(K, 0);
    std::function<bool(size_t)> pick = [&](size_t j) -> bool {
      if (j == K) {
        // group targets by source and check joint realizability
        for (size_t i = 0; i < K; ++i) {
          std::vector<std::pair<uint32_t, Generator>> targets;
          for (size_t t = 0; t < K; ++t) {
            if (assign[t] != i) continue;
            int64_t len = ms[t].degree + static_cast<int64_t>(n) - ms[i].degree;
            targets.emplace_back(static_cast<uint32_t>(len), ms[t].gen);
          }
          if (targets.empty()) continue;
          if (!eng.realizable(ms[i].gen, targets)) return false;
        }
        return true;
      }
      for (size_t i = 0; i < K; ++i) {
        int64_t len = ms[j].degree + static_cast<int64_t>(n) - ms[i].degree;
        if (len < 1) continue;
        assign[j] = i;
        if (pick(j + 1)) return true;
      }
      return false;
    };
    if (!pick(0)) continue;

    StationaryPartition sp;
    sp.n = static_cast<uint32_t>(n);
    sp.monomials = ms;
    sp.assignment = assign;
    sp.paths.resize(K);
    for (size_t i = 0; i < K; ++i) {
      std::vector<std::pair<uint32_t, Generator>> targets;
      std::vector<size_t> indices;
      for (size_t t = 0; t < K; ++t) {
        if (assign[t] != i) continue;
        targets.emplace_back(static_cast<uint32_t>(ms[t].degree + n - ms[i].degree), ms[t].gen);
        indices.push_back(t);
      }
      if (targets.empty()) continue;
      auto paths = eng.realize_paths(ms[i].gen, targets);
      if (!paths) return V::no("internal: realizability lost during witness extraction");
      std::vector<char> used(paths->size(), 0);
      for (size_t t : indices) {
        auto key = std::make_pair(static_cast<uint32_t>(ms[t].degree + n - ms[i].degree),
                                  ms[t].gen);
        for (size_t c = 0; c < paths->size(); ++c) {
          if (used[c] || !((*paths)[c].first == key)) continue;
          sp.paths[t] = (*paths)[c].second;
          used[c] = 1;
          break;
        }
      }
    }
    return V::yes(std::move(sp));
  }
  return V::unknown("no stationarity witness with n ≤ " + std::to_string(n_max));
}

bool validate_stationary_partition(const Graph& g, const Element& a,
                                   const StationaryPartition& sp, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (sp.n == 0) return fail("n must be positive");
  std::vector<Monomial> ms = flatten(a);
  if (ms != sp.monomials) return fail("monomials do not match the element");
  size_t K = ms.size();
  if (sp.assignment.size() != K || sp.paths.size() != K) return fail("arity mismatch");
  for (size_t j = 0; j < K; ++j) {
    size_t i = sp.assignment[j];
    if (i >= K) return fail("assignment out of range");
    int64_t len = ms[j].degree + static_cast<int64_t>(sp.n) - ms[i].degree;
    if (len < 1) return fail("paths must have positive length");
    if (static_cast<int64_t>(sp.paths[j].size()) != len)
      return fail("path length must be m_j + n - m_i");
    Vertex at = ms[i].gen.vertex();
    for (size_t s = 0; s < sp.paths[j].size(); ++s) {
      GroupId gr = sp.paths[j][s];
      if (gr >= g.group_count() || g.group(gr).src != at) return fail("broken path");
      if (s == 0 && ms[i].gen.is_improper()) {
        uint32_t avail = g.multiplicity_to(at, g.group(gr).rng);
        uint32_t used = ms[i].gen.count_of(g.group(gr).rng);
        if (avail != kOmega && avail <= used)
          return fail("improper source must leave outside its own edge set");
      }
      at = g.group(gr).rng;
    }
    if (at != ms[j].gen.vertex()) return fail("path does not reach the target generator");
  }
  // joint realizability per source (the degree equation alone is not enough)
  ArrowEngine eng(g);
  for (size_t i = 0; i < K; ++i) {
    std::vector<std::pair<uint32_t, Generator>> targets;
    for (size_t t = 0; t < K; ++t)
      if (sp.assignment[t] == i)
        targets.emplace_back(static_cast<uint32_t>(ms[t].degree + sp.n - ms[i].degree),
                             ms[t].gen);
    if (!targets.empty() && !eng.realizable(ms[i].gen, targets))
      return fail("assigned targets are not jointly realizable from their source");
  }
  if (why) why->clear();
  return true;
}

Verdict<StationaryWitness> is_stationary(const Graph& g, const Element& a, uint32_t n_max) {
  using V = Verdict<StationaryWitness>;
  if (a.is_zero()) throw ElementError("is_stationary: zero element");
  auto sp = find_stationary_partition(g, a, n_max);
  if (sp.is_no()) return V::no(sp.certificate);
  if (sp.is_unknown()) return V::unknown(sp.certificate);

  const StationaryPartition& part = *sp.witness;
  std::vector<Monomial> ms = part.monomials;
  ArrowEngine eng(g);
  Chain chain;
  for (size_t i = 0; i < ms.size(); ++i) {
    std::vector<std::pair<uint32_t, Generator>> targets;
    for (size_t t = 0; t < ms.size(); ++t)
      if (part.assignment[t] == i)
        targets.emplace_back(static_cast<uint32_t>(ms[t].degree + part.n - ms[i].degree),
                             ms[t].gen);
    if (targets.empty()) continue;
    auto local = eng.realize_chain(ms[i].gen, targets);
    if (!local) return V::no("internal: witness chain extraction failed");
    Chain shifted = shift_chain(*local, ms[i].degree);
    chain.insert(chain.end(), shifted.begin(), shifted.end());
  }
  Element final_elem = replay_chain(g, a, chain);
  Element shifted_a = a.shift(static_cast<int32_t>(part.n));
  if (!final_elem.contains(shifted_a))
    return V::no("internal: replay does not contain the shifted element");
  StationaryWitness w;
  w.n = part.n;
  w.b = final_elem.subtract(shifted_a);
  w.chain = std::move(chain);
  return V::yes(std::move(w));
}

bool is_periodic(const Graph& g, const Element& a) {
  if (a.is_zero()) return true;
  std::set<Vertex> start;
  for (const Generator& gen : a.support()) {
    if (gen.is_improper()) return false;
    if (!g.is_regular(gen.vertex())) return false;
    start.insert(gen.vertex());
  }
  for (Vertex v : g.reachable(start)) {
    if (!g.is_regular(v)) return false;
    if (g.on_cycle(v)) {
      // no-exit cycles: exactly one outgoing edge
      uint64_t out = 0;
      for (GroupId gr : g.out_groups(v)) out += g.group(gr).multiplicity;
      if (out != 1) return false;
    }
  }
  return true;
}

uint32_t periodic_period(const Graph& g, const Element& a) {
  if (a.is_zero() || !is_periodic(g, a)) throw ElementError("periodic_period: not periodic");
  std::set<Vertex> start;
  for (const Generator& gen : a.support()) start.insert(gen.vertex());
  uint64_t period = 1;
  std::set<Vertex> seen;
  for (Vertex v : g.reachable(start)) {
    if (!g.on_cycle(v) || seen.count(v)) continue;
    auto len = g.min_cycle_length(v);
    period = lcm64(period, *len);
    // mark the whole cycle as handled
    Vertex u = v;
    for (uint32_t s = 0; s < *len; ++s) {
      seen.insert(u);
      u = g.group(g.out_groups(u).front()).rng;
    }
  }
  return static_cast<uint32_t>(period);
}

PeriodicityWitness periodic_witness(const Graph& g, const Element& a) {
  PeriodicityWitness w;
  w.period = periodic_period(g, a);
  // expand until every generator is on a cycle
  Element cur = a;
  Chain expand_chain;
  for (;;) {
    std::optional<Monomial> pick;
    for (const auto& [m, c] : cur.terms())
      if (!g.on_cycle(m.gen.vertex())) {
        pick = m;
        break;
      }
    if (!pick) break;
    RewriteStep step{Axiom::A1, *pick, {}};
    expand_chain.push_back(step);
    cur = expand(g, cur, step);
  }
  // rotate every monomial n steps (each on-cycle vertex has one edge)
  Chain rotate_chain;
  Element rotated = cur;
  for (uint32_t s = 0; s < w.period; ++s) {
    Element next = rotated;
    for (const auto& [m, c] : rotated.terms()) {
      for (uint64_t i = 0; i < c; ++i) {
        RewriteStep step{Axiom::A1, m, {}};
        rotate_chain.push_back(step);
        next = expand(g, next, step);
      }
    }
    rotated = next;
  }
  w.common_reduct = rotated;
  w.chain_from_a = expand_chain;
  w.chain_from_a.insert(w.chain_from_a.end(), rotate_chain.begin(), rotate_chain.end());
  w.chain_from_shifted = shift_chain(expand_chain, static_cast<int32_t>(w.period));
  return w;
}

Verdict<ComparabilityWitness> is_comparable(const Graph& g, const Element& a,
                                            const SearchCaps& caps, uint32_t n_max) {
  using V = Verdict<ComparabilityWitness>;
  if (a.is_zero()) throw ElementError("is_comparable: zero element");

  // Certificate 1: no cycle is reachable from the support.
  std::set<Vertex> start;
  bool some_gen_on_cycle = false;
  for (const Generator& gen : a.support()) {
    if (generator_on_cycle(g, gen)) some_gen_on_cycle = true;
    if (gen.is_proper()) {
      start.insert(gen.vertex());
    } else {
      for (Vertex w : g.out_ranges(gen.vertex())) {
        uint32_t avail = g.multiplicity_to(gen.vertex(), w);
        if (avail == kOmega || avail > gen.count_of(w)) start.insert(w);
      }
    }
  }
  std::set<Vertex> reach = g.reachable(start);
  std::vector<Vertex> cycles_reachable;
  for (Vertex v : reach)
    if (g.on_cycle(v)) cycles_reachable.push_back(v);
  if (cycles_reachable.empty() && !some_gen_on_cycle)
    return V::no("no cycle is reachable from the support; stationary reducts need a core");

  // Certificate 2: a persistent generator (sink, emitter, improper) that no
  // reachable cycle feeds and that is not itself on a cycle.
  for (const auto& [m, mult] : a.terms()) {
    Vertex u = m.gen.vertex();
    bool persistent =
        m.gen.is_improper() || g.is_sink(u) || g.is_infinite_emitter(u);
    if (!persistent) continue;
    if (g.on_cycle(u)) continue;
    bool fed = false;
    for (Vertex w : cycles_reachable)
      if (g.reaches(w, u)) {
        fed = true;
        break;
      }
    if (!fed)
      return V::no("persistent generator over " + g.name(u) +
                   " is not on a cycle and no reachable cycle feeds it");
  }

  // Search for a stationary reduct.
  ReachableSet rs = reachable_elements(g, a, caps);
  bool saw_unknown = !rs.complete;
  ArrowEngine eng(g);
  for (const Element& r : rs.elements) {
    if (!stationary_support(g, r.support())) continue;
    auto st = is_stationary(g, r, n_max);
    if (st.is_yes()) {
      ComparabilityWitness w;
      w.stationary_reduct = r;
      BfsOutcome chain = bfs_search(g, a, r, caps);
      w.chain_to_reduct = chain.status == BfsOutcome::Status::Found ? chain.chain : Chain{};
      w.stationarity = *st.witness;
      CoreDecomposition split = core_exit_split(g, r);
      for (const Cycle& c : split.core_cycles)
        if (g.cycle_has_exit(c)) w.core_cycle_has_exit = true;
      // improper cores: a spare parallel edge is an exit
      if (!w.core_cycle_has_exit)
        for (const Generator& gen : split.core_generators)
          if (gen.is_improper()) w.core_cycle_has_exit = true;
      return V::yes(std::move(w));
    }
    if (st.is_unknown()) saw_unknown = true;
  }
  if (saw_unknown) return V::unknown("no stationary reduct found within caps");
  return V::no("reachable set exhausted; no reduct has a stationarity witness");
}

Verdict<ComparabilityWitness> is_aperiodic(const Graph& g, const Element& a,
                                           const SearchCaps& caps, uint32_t n_max) {
  using V = Verdict<ComparabilityWitness>;
  if (a.is_zero()) return V::no("zero is periodic");
  if (is_periodic(g, a)) return V::no("element is periodic");
  auto cmp = is_comparable(g, a, caps, n_max);
  if (cmp.is_yes()) return cmp;
  if (cmp.is_no()) return V::no("incomparable: " + cmp.certificate);
  return V::unknown(cmp.certificate);
}

std::string element_class_name(ElementClass c) {
  switch (c) {
    case ElementClass::Zero: return "zero";
    case ElementClass::Periodic: return "periodic";
    case ElementClass::Aperiodic: return "aperiodic";
    case ElementClass::Incomparable: return "incomparable";
    case ElementClass::Unknown: return "unknown";
  }
  return "?";
}

Classification classify_element(const Graph& g, const Element& a, const SearchCaps& caps,
                                uint32_t n_max) {
  Classification out;
  out.caps = caps;
  if (a.is_zero()) {
    out.label = ElementClass::Zero;
    out.certificate = "zero element (periodic by convention)";
    return out;
  }
  if (is_periodic(g, a)) {
    out.label = ElementClass::Periodic;
    out.periodicity = periodic_witness(g, a);
    out.period = out.periodicity->period;
    return out;
  }
  auto cmp = is_comparable(g, a, caps, n_max);
  if (cmp.is_yes()) {
    out.label = ElementClass::Aperiodic;
    out.comparability = std::move(cmp.witness);
    auto self = find_stationary_partition(g, a, n_max);
    if (self.is_yes()) {
      auto st = is_stationary(g, a, n_max);
      if (st.is_yes()) out.stationarity = std::move(st.witness);
    }
    return out;
  }
  if (cmp.is_no()) {
    out.label = ElementClass::Incomparable;
    out.certificate = cmp.certificate;
    return out;
  }
  out.label = ElementClass::Unknown;
  out.certificate = cmp.certificate;
  return out;
}

Verdict<CoreLemmaWitness> verify_core_lemma(const Graph& g, const Element& a,
                                            const StationaryWitness& w, const SearchCaps& caps,
                                            uint32_t k_max) {
  using V = Verdict<CoreLemmaWitness>;
  if (a.is_zero()) throw ElementError("verify_core_lemma: zero element");
  Element expected = a.shift(static_cast<int32_t>(w.n)).add(w.b);
  if (!(replay_chain(g, a, w.chain) == expected))
    throw RewriteError("verify_core_lemma: invalid stationarity witness");

  CoreDecomposition split = core_exit_split(g, a);
  ArrowEngine eng(g);
  for (uint32_t k = 1; k <= k_max; ++k) {
    Element target = a.shift(static_cast<int32_t>(k * w.n));
    Element change_sum;
    for (uint32_t i = 0; i < k; ++i)
      change_sum = change_sum.add(w.b.shift(static_cast<int32_t>(i * w.n)));
    std::optional<CoreLemmaWitness> found;
    eng.realize_cover_enumerate(split.core, target, /*budget=*/400, [&](const Chain& chain) {
      Element full = replay_chain(g, split.core, chain);
      if (!full.contains(target)) return false;
      Element c = full.subtract(target);
      auto equiv = oracle_equivalent(g, c.add(split.exit), change_sum, caps);
      if (equiv.is_yes()) {
        found = CoreLemmaWitness{k, c, chain};
        return true;
      }
      return false;
    });
    if (found) return V::yes(std::move(*found));
  }
  return V::unknown("no (k, c) within k ≤ " + std::to_string(k_max));
}

}  // namespace talent
