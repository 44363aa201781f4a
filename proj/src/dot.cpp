#include "talent/dot.hpp"

#include <sstream>

#include "talent/classify.hpp"
#include "talent/connectivity.hpp"

namespace talent {

std::string export_dot(const Graph& g, const std::optional<Element>& annotate) {
  std::set<Vertex> core, exit;
  if (annotate && !annotate->is_zero()) {
    for (const Generator& gen : annotate->support()) {
      if (generator_on_cycle(g, gen))
        core.insert(gen.vertex());
      else
        exit.insert(gen.vertex());
    }
  }
  std::ostringstream out;
  out << "digraph E {\n";
  out << "  rankdir=LR;\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    out << "  \"" << g.name(v) << "\"";
    if (core.count(v))
      out << " [style=filled fillcolor=lightblue label=\"" << g.name(v) << " (core)\"]";
    else if (exit.count(v))
      out << " [style=filled fillcolor=orange label=\"" << g.name(v) << " (exit)\"]";
    out << ";\n";
  }
  for (const EdgeGroup& eg : g.groups()) {
    out << "  \"" << g.name(eg.src) << "\" -> \"" << g.name(eg.rng) << "\"";
    if (eg.is_omega())
      out << " [style=bold label=\"\xCF\x89\"]";
    else if (eg.multiplicity > 1)
      out << " [label=\"x" << eg.multiplicity << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace talent
