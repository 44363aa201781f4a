#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "talent/classify.hpp"
#include "talent/connectivity.hpp"
#include "talent/dot.hpp"
#include "talent/graph_classify.hpp"
#include "talent/json_io.hpp"
#include "talent/rewrite.hpp"

using namespace talent;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;

SearchCaps parse_caps(const std::string& spec) {
  SearchCaps caps;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--caps expects key=value pairs");
    std::string key = item.substr(0, eq);
    uint32_t value = static_cast<uint32_t>(std::stoul(item.substr(eq + 1)));
    if (value == 0) throw CLI::ValidationError("caps must be positive");
    if (key == "depth")
      caps.max_depth = value;
    else if (key == "monomials")
      caps.max_monomials = value;
    else if (key == "newcount")
      caps.max_new_count = value;
    else if (key == "states")
      caps.max_states = value;
    else if (key == "nmax")
      caps.n_max = value;
    else
      throw CLI::ValidationError("unknown cap: " + key);
  }
  return caps;
}

void print_chain(const Graph& g, const Chain& chain, const Element& from) {
  Element cur = from;
  std::cout << "    " << format_element(g, cur) << "\n";
  for (const RewriteStep& s : chain) {
    cur = expand(g, cur, s);
    std::cout << "  ->[" << axiom_name(s.axiom) << " at "
              << format_monomial(g, s.target, 1) << "] " << format_element(g, cur) << "\n";
  }
}

struct Options {
  std::string graph_path;
  std::string elem_text;
  std::string from_text;
  std::string to_text;
  std::string caps_text;
  bool as_json = false;
  bool trace = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"talent: compute with the graded monoid of a directed graph"};
  app.require_subcommand(1);

  Options opt;
  std::string graph2_path;

  auto add_common = [&](CLI::App* sub, bool needs_elem) {
    sub->add_option("--graph,-g", opt.graph_path, "graph file")->required();
    if (needs_elem) sub->add_option("--elem,-e", opt.elem_text, "element text")->required();
    sub->add_option("--caps", opt.caps_text, "depth=..,monomials=..,newcount=..,states=..,nmax=..");
    sub->add_flag("--json", opt.as_json, "JSON report");
    sub->add_flag("--trace", opt.trace, "print witness chains");
  };

  auto* classify_elem = app.add_subcommand("classify-element", "classify an element");
  add_common(classify_elem, true);

  auto* classify_graph = app.add_subcommand("classify-graph", "whole-graph predicates");
  add_common(classify_graph, false);

  auto* arrow = app.add_subcommand("arrow", "decide a -> b");
  add_common(arrow, false);
  arrow->add_option("--from", opt.from_text, "source element")->required();
  arrow->add_option("--to", opt.to_text, "target element")->required();

  auto* equiv = app.add_subcommand("equiv", "decide a ~ b (within caps)");
  add_common(equiv, false);
  equiv->add_option("--from", opt.from_text, "first element")->required();
  equiv->add_option("--to", opt.to_text, "second element")->required();

  auto* leq = app.add_subcommand("leq", "decide a ≤ b (within caps)");
  add_common(leq, false);
  leq->add_option("--from", opt.from_text, "smaller element")->required();
  leq->add_option("--to", opt.to_text, "larger element")->required();

  auto* stationary = app.add_subcommand("stationary", "stationarity witness search");
  add_common(stationary, true);

  auto* ideals = app.add_subcommand("ideals", "admissible-pair lattice");
  add_common(ideals, false);

  auto* compare = app.add_subcommand("compare", "invariant comparison of two graphs");
  compare->add_option("first", opt.graph_path, "first graph file")->required();
  compare->add_option("second", graph2_path, "second graph file")->required();
  compare->add_flag("--json", opt.as_json, "JSON report");

  auto* dot = app.add_subcommand("dot", "DOT export");
  add_common(dot, false);
  dot->add_option("--elem,-e", opt.elem_text, "element to annotate");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compare->parsed()) {
      Graph g1 = Graph::load(opt.graph_path);
      Graph g2 = Graph::load(graph2_path);
      CompareReport rep = compare_invariants(g1, g2);
      if (opt.as_json) {
        std::cout << compare_report_to_json(rep).dump(2) << "\n";
      } else {
        std::cout << (rep.decisive ? "necessarily non-isomorphic graph monoids"
                                   : "inconclusive: all computed invariants match")
                  << "\n";
        for (const InvariantMismatch& m : rep.mismatches)
          std::cout << "  " << m.invariant << ": " << m.value1 << " vs " << m.value2 << "  ("
                    << m.citation << ")\n";
      }
      return kExitOk;
    }

    Graph g = Graph::load(opt.graph_path);
    SearchCaps caps = opt.caps_text.empty() ? SearchCaps{} : parse_caps(opt.caps_text);

    if (classify_elem->parsed() || stationary->parsed()) {
      Element a = parse_element(g, opt.elem_text);
      if (stationary->parsed()) {
        auto v = find_stationary_partition(g, a, caps.n_max);
        if (opt.as_json) {
          json out;
          out["verdict"] = v.is_yes() ? "yes" : (v.is_no() ? "no" : "unknown");
          if (v.is_yes()) out["partition"] = stationary_partition_to_json(g, *v.witness);
          if (!v.certificate.empty()) out["certificate"] = v.certificate;
          std::cout << out.dump(2) << "\n";
        } else if (v.is_yes()) {
          std::cout << "STATIONARY with n=" << v.witness->n << "\n";
          if (opt.trace) {
            auto st = is_stationary(g, a, caps.n_max);
            if (st.is_yes()) print_chain(g, st.witness->chain, a);
          }
        } else {
          std::cout << (v.is_no() ? "NOT STATIONARY: " : "UNKNOWN: ") << v.certificate << "\n";
        }
        return v.is_unknown() ? kExitUnknown : kExitOk;
      }
      Classification c = classify_element(g, a, caps, caps.n_max);
      if (opt.as_json) {
        std::cout << classification_to_json(g, c).dump(2) << "\n";
      } else {
        std::ostringstream line;
        switch (c.label) {
          case ElementClass::Zero:
            line << "ZERO (periodic by convention)";
            break;
          case ElementClass::Periodic:
            line << "PERIODIC with period " << *c.period;
            break;
          case ElementClass::Aperiodic:
            line << (c.stationarity ? "STATIONARY, comparable, aperiodic" : "comparable, aperiodic");
            if (c.stationarity) line << "; witness n=" << c.stationarity->n;
            else if (c.comparability) line << "; stationary reduct "
                                           << format_element(g, c.comparability->stationary_reduct);
            break;
          case ElementClass::Incomparable:
            line << "INCOMPARABLE: " << c.certificate;
            break;
          case ElementClass::Unknown:
            line << "UNKNOWN: " << c.certificate;
            break;
        }
        std::cout << line.str() << "\n";
        if (opt.trace && c.comparability)
          print_chain(g, c.comparability->stationarity.chain, c.comparability->stationary_reduct);
        if (opt.trace && c.periodicity) print_chain(g, c.periodicity->chain_from_a, a);
      }
      return c.label == ElementClass::Unknown ? kExitUnknown : kExitOk;
    }

    if (classify_graph->parsed()) {
      InvariantVector v = table_row_predicates(g);
      if (opt.as_json) {
        json out = invariant_vector_to_json(v);
        out["graph"] = graph_to_json(g);
        std::cout << out.dump(2) << "\n";
      } else {
        auto yn = [](bool b) { return b ? "yes" : "no"; };
        std::cout << "cycles: " << yn(v.has_cycle) << " (no-exit: " << yn(v.has_noexit_cycle)
                  << ", with-exit: " << yn(v.has_exit_cycle) << ")\n"
                  << "Condition (L): " << yn(v.condition_l) << "\n"
                  << "Condition (K): " << yn(v.condition_k) << "\n"
                  << "Condition (NE): " << yn(v.condition_ne) << "\n"
                  << "all comparable: " << yn(v.all_comparable) << "\n"
                  << "all periodic: " << yn(v.all_periodic) << "\n"
                  << "all aperiodic: " << yn(v.all_aperiodic) << "\n"
                  << "all incomparable: " << yn(v.all_incomparable) << "\n"
                  << "graded simple: " << yn(v.graded_simple) << ", simple: " << yn(v.simple)
                  << ", purely infinite simple: " << yn(v.purely_infinite_simple) << "\n"
                  << "ideal lattice size: " << v.lattice_size << "\n";
      }
      return kExitOk;
    }

    if (arrow->parsed() || equiv->parsed() || leq->parsed()) {
      Element a = parse_element(g, opt.from_text);
      Element b = parse_element(g, opt.to_text);
      if (arrow->parsed()) {
        auto v = decide_arrow(g, a, b);
        if (opt.as_json) {
          json out;
          out["verdict"] = v.is_yes() ? "yes" : "no";
          if (v.is_yes()) out["path_system"] = path_system_to_json(g, *v.witness);
          if (!v.certificate.empty()) out["certificate"] = v.certificate;
          std::cout << out.dump(2) << "\n";
        } else {
          std::cout << (v.is_yes() ? "Yes: the relation holds" : "No: " + v.certificate) << "\n";
          if (v.is_yes() && opt.trace) {
            ArrowEngine eng(g);
            if (auto chain = eng.decide_chain(a, b)) print_chain(g, *chain, a);
          }
        }
        return kExitOk;
      }
      if (equiv->parsed()) {
        auto v = oracle_equivalent(g, a, b, caps);
        if (opt.as_json) {
          json out;
          out["verdict"] = v.is_yes() ? "yes" : (v.is_no() ? "no" : "unknown");
          if (v.is_yes()) {
            out["common_reduct"] = format_element(g, v.witness->reduct);
            out["chain_from_first"] = chain_to_json(g, v.witness->chain_a);
            out["chain_from_second"] = chain_to_json(g, v.witness->chain_b);
          }
          if (!v.certificate.empty()) out["certificate"] = v.certificate;
          std::cout << out.dump(2) << "\n";
        } else if (v.is_yes()) {
          std::cout << "Yes: common reduct " << format_element(g, v.witness->reduct) << "\n";
          if (opt.trace) {
            print_chain(g, v.witness->chain_a, a);
            print_chain(g, v.witness->chain_b, b);
          }
        } else {
          std::cout << (v.is_no() ? "No: " : "Unknown: ") << v.certificate << "\n";
        }
        return v.is_unknown() ? kExitUnknown : kExitOk;
      }
      auto v = oracle_leq(g, a, b, caps);
      if (opt.as_json) {
        json out;
        out["verdict"] = v.is_yes() ? "yes" : (v.is_no() ? "no" : "unknown");
        if (v.is_yes()) {
          out["reduct"] = format_element(g, v.witness->reduct);
          out["kept"] = format_element(g, v.witness->kept);
          out["complement"] = format_element(g, v.witness->complement);
        }
        if (!v.certificate.empty()) out["certificate"] = v.certificate;
        std::cout << out.dump(2) << "\n";
      } else if (v.is_yes()) {
        std::cout << "Yes: via reduct " << format_element(g, v.witness->reduct)
                  << " with complement " << format_element(g, v.witness->complement) << "\n";
      } else {
        std::cout << (v.is_no() ? "No: " : "Unknown: ") << v.certificate << "\n";
      }
      return v.is_unknown() ? kExitUnknown : kExitOk;
    }

    if (ideals->parsed()) {
      PairLattice lat = enumerate_admissible_pairs(g);
      if (opt.as_json) {
        std::cout << lattice_to_json(g, lat).dump(2) << "\n";
      } else {
        std::cout << "admissible pairs: " << lat.size() << "\n";
        for (const AdmissiblePair& p : lat.pairs) {
          std::cout << "  H={";
          bool first = true;
          for (Vertex v : p.H) {
            if (!first) std::cout << ",";
            std::cout << g.name(v);
            first = false;
          }
          std::cout << "} G={";
          first = true;
          for (Vertex v : p.G) {
            if (!first) std::cout << ",";
            std::cout << g.name(v);
            first = false;
          }
          std::cout << "}\n";
        }
      }
      return kExitOk;
    }

    if (dot->parsed()) {
      std::optional<Element> annotate;
      if (!opt.elem_text.empty()) annotate = parse_element(g, opt.elem_text);
      std::cout << export_dot(g, annotate);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
