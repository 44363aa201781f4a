#include "talent/json_io.hpp"

namespace talent {

namespace {

json counts_to_json(const Graph& g, const RangeCounts& rc) {
  json out = json::object();
  for (const auto& [w, c] : rc) out[g.name(w)] = c;
  return out;
}

RangeCounts counts_from_json(const Graph& g, const json& j) {
  RangeCounts rc;
  for (auto it = j.begin(); it != j.end(); ++it)
    rc.emplace_back(g.vertex(it.key()), it.value().get<uint32_t>());
  std::sort(rc.begin(), rc.end());
  return rc;
}

}  // namespace

json graph_to_json(const Graph& g) {
  json out;
  out["vertices"] = json::array();
  for (Vertex v = 0; v < g.vertex_count(); ++v) out["vertices"].push_back(g.name(v));
  out["edges"] = json::array();
  for (const EdgeGroup& eg : g.groups()) {
    json e;
    e["src"] = g.name(eg.src);
    e["rng"] = g.name(eg.rng);
    if (eg.is_omega())
      e["mult"] = "*";
    else
      e["mult"] = eg.multiplicity;
    out["edges"].push_back(e);
  }
  return out;
}

json element_to_json(const Graph& g, const Element& a) {
  json out;
  out["text"] = format_element(g, a);
  out["monomials"] = json::array();
  for (const auto& [m, c] : a.terms()) {
    json jm;
    jm["degree"] = m.degree;
    jm["generator"] = format_generator(g, m.gen);
    jm["multiplicity"] = c;
    out["monomials"].push_back(jm);
  }
  return out;
}

json step_to_json(const Graph& g, const RewriteStep& s) {
  json out;
  out["axiom"] = axiom_name(s.axiom);
  out["degree"] = s.target.degree;
  out["generator"] = format_generator(g, s.target.gen);
  out["params"] = counts_to_json(g, s.params);
  return out;
}

json chain_to_json(const Graph& g, const Chain& c) {
  json out = json::array();
  for (const RewriteStep& s : c) out.push_back(step_to_json(g, s));
  return out;
}

Chain chain_from_json(const Graph& g, const json& j) {
  Chain chain;
  for (const json& js : j) {
    RewriteStep s;
    std::string ax = js.at("axiom").get<std::string>();
    if (ax == "A1")
      s.axiom = Axiom::A1;
    else if (ax == "A2")
      s.axiom = Axiom::A2;
    else if (ax == "A3")
      s.axiom = Axiom::A3;
    else
      throw RewriteError("unknown axiom tag: " + ax);
    s.target.degree = js.at("degree").get<int32_t>();
    s.target.gen = parse_generator(g, js.at("generator").get<std::string>());
    s.params = counts_from_json(g, js.at("params"));
    chain.push_back(std::move(s));
  }
  return chain;
}

json path_system_to_json(const Graph& g, const PathSystem& ps) {
  json out;
  out["sources"] = json::array();
  for (const Monomial& m : ps.sources) out["sources"].push_back(format_monomial(g, m, 1));
  out["targets"] = json::array();
  for (const Monomial& m : ps.targets) out["targets"].push_back(format_monomial(g, m, 1));
  out["partition"] = ps.partition();
  out["paths"] = json::array();
  for (size_t j = 0; j < ps.paths.size(); ++j) {
    json jp;
    jp["target"] = j;
    jp["source"] = ps.assignment[j];
    jp["groups"] = ps.paths[j];
    out["paths"].push_back(jp);
  }
  out["audit"] = json::array();
  for (const PrefixAudit& e : path_system_audit(g, ps)) {
    json ja;
    ja["source"] = e.source;
    ja["prefix"] = e.prefix;
    ja["vertex"] = g.name(e.vertex);
    ja["extension_groups"] = e.extension_groups;
    out["audit"].push_back(ja);
  }
  return out;
}

json stationary_partition_to_json(const Graph& g, const StationaryPartition& sp) {
  json out;
  out["n"] = sp.n;
  out["monomials"] = json::array();
  for (const Monomial& m : sp.monomials) out["monomials"].push_back(format_monomial(g, m, 1));
  out["assignment"] = sp.assignment;
  out["paths"] = sp.paths;
  return out;
}

json classification_to_json(const Graph& g, const Classification& c) {
  json out;
  out["label"] = element_class_name(c.label);
  if (c.period) out["period"] = *c.period;
  if (!c.certificate.empty()) out["certificate"] = c.certificate;
  if (c.periodicity) {
    out["periodicity"]["period"] = c.periodicity->period;
    out["periodicity"]["common_reduct"] = format_element(g, c.periodicity->common_reduct);
    out["periodicity"]["chain_from_element"] = chain_to_json(g, c.periodicity->chain_from_a);
    out["periodicity"]["chain_from_shifted"] =
        chain_to_json(g, c.periodicity->chain_from_shifted);
  }
  if (c.comparability) {
    out["comparability"]["stationary_reduct"] =
        format_element(g, c.comparability->stationary_reduct);
    out["comparability"]["chain_to_reduct"] = chain_to_json(g, c.comparability->chain_to_reduct);
    out["comparability"]["n"] = c.comparability->stationarity.n;
    out["comparability"]["change"] = format_element(g, c.comparability->stationarity.b);
    out["comparability"]["core_cycle_has_exit"] = c.comparability->core_cycle_has_exit;
  }
  if (c.stationarity) {
    out["stationarity"]["n"] = c.stationarity->n;
    out["stationarity"]["change"] = format_element(g, c.stationarity->b);
    out["stationarity"]["chain"] = chain_to_json(g, c.stationarity->chain);
  }
  json caps;
  caps["depth"] = c.caps.max_depth;
  caps["monomials"] = c.caps.max_monomials;
  caps["newcount"] = c.caps.max_new_count;
  caps["states"] = c.caps.max_states;
  caps["nmax"] = c.caps.n_max;
  out["caps"] = caps;
  return out;
}

json invariant_vector_to_json(const InvariantVector& v) {
  json out;
  out["has_cycle"] = v.has_cycle;
  out["acyclic"] = v.acyclic;
  out["has_noexit_cycle"] = v.has_noexit_cycle;
  out["has_exit_cycle"] = v.has_exit_cycle;
  out["condition_L"] = v.condition_l;
  out["condition_K"] = v.condition_k;
  out["condition_NE"] = v.condition_ne;
  out["all_comparable"] = v.all_comparable;
  out["all_periodic"] = v.all_periodic;
  out["all_aperiodic"] = v.all_aperiodic;
  out["all_incomparable"] = v.all_incomparable;
  out["graded_simple"] = v.graded_simple;
  out["simple"] = v.simple;
  out["purely_infinite_simple"] = v.purely_infinite_simple;
  out["ideal_lattice_size"] = v.lattice_size;
  out["ideal_lattice_form"] = v.lattice_form;
  return out;
}

json lattice_to_json(const Graph& g, const PairLattice& lat) {
  json out;
  out["pairs"] = json::array();
  for (const AdmissiblePair& p : lat.pairs) {
    json jp;
    jp["H"] = json::array();
    for (Vertex v : p.H) jp["H"].push_back(g.name(v));
    jp["G"] = json::array();
    for (Vertex v : p.G) jp["G"].push_back(g.name(v));
    out["pairs"].push_back(jp);
  }
  out["covers"] = json::array();
  for (const auto& [lo, hi] : lat.covers) out["covers"].push_back({lo, hi});
  out["canonical_form"] = lat.canonical_form;
  return out;
}

json compare_report_to_json(const CompareReport& rep) {
  json out;
  out["verdict"] = rep.decisive ? "necessarily non-isomorphic" : "inconclusive";
  out["mismatches"] = json::array();
  for (const InvariantMismatch& m : rep.mismatches) {
    json jm;
    jm["invariant"] = m.invariant;
    jm["first"] = m.value1;
    jm["second"] = m.value2;
    jm["citation"] = m.citation;
    out["mismatches"].push_back(jm);
  }
  out["first"] = invariant_vector_to_json(rep.first);
  out["second"] = invariant_vector_to_json(rep.second);
  return out;
}

}  // namespace talent
