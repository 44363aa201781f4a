#include "talent/axioms.hpp"

namespace talent {

std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::A1: return "A1";
    case Axiom::A2: return "A2";
    case Axiom::A3: return "A3";
  }
  return "?";
}

Element axiom_yield(const Graph& g, const RewriteStep& step) {
  const Monomial& m = step.target;
  const Generator& gen = m.gen;
  Element out;
  switch (step.axiom) {
    case Axiom::A1: {
      if (!gen.is_proper() || !g.is_regular(gen.vertex()))
        throw RewriteError("A1 applies only to regular proper vertices");
      if (!step.params.empty()) throw RewriteError("A1 takes no parameters");
      for (GroupId gr : g.out_groups(gen.vertex())) {
        const EdgeGroup& eg = g.group(gr);
        out.insert(Monomial{m.degree + 1, Generator::proper(eg.rng)}, eg.multiplicity);
      }
      return out;
    }
    case Axiom::A2: {
      if (!gen.is_proper() || !g.is_infinite_emitter(gen.vertex()))
        throw RewriteError("A2 applies only to infinite emitters");
      check_improper(g, gen.vertex(), step.params);
      out.insert(Monomial{m.degree, Generator::improper(gen.vertex(), step.params)});
      for (const auto& [w, c] : step.params)
        out.insert(Monomial{m.degree + 1, Generator::proper(w)}, c);
      return out;
    }
    case Axiom::A3: {
      if (!gen.is_improper()) throw RewriteError("A3 applies only to improper vertices");
      const RangeCounts& z = gen.counts();
      const RangeCounts& w = step.params;
      check_improper(g, gen.vertex(), w);
      if (!counts_leq(z, w) || counts_total(w) == counts_total(z))
        throw RewriteError("A3 parameter must be a strict superset of the generator's edge set");
      out.insert(Monomial{m.degree, Generator::improper(gen.vertex(), w)});
      for (const auto& [rv, c] : counts_minus(w, z))
        out.insert(Monomial{m.degree + 1, Generator::proper(rv)}, c);
      return out;
    }
  }
  throw RewriteError("unreachable");
}

Element expand(const Graph& g, const Element& a, const RewriteStep& step) {
  if (a.multiplicity(step.target) == 0) throw RewriteError("step target not present in element");
  Element out = a;
  out.remove(step.target);
  return out.add(axiom_yield(g, step));
}

Element replay_chain(const Graph& g, const Element& from, const Chain& chain) {
  Element cur = from;
  for (const RewriteStep& s : chain) cur = expand(g, cur, s);
  return cur;
}

Chain shift_chain(const Chain& chain, int32_t n) {
  Chain out = chain;
  for (RewriteStep& s : out) s.target.degree += n;
  return out;
}

}  // namespace talent
