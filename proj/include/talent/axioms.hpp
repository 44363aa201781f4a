#pragma once

#include <string>
#include <vector>

#include "talent/element.hpp"
#include "talent/graph.hpp"

namespace talent {

struct RewriteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Axiom { A1, A2, A3 };

std::string axiom_name(Axiom a);

/// One application of a defining axiom to a single monomial.
///   A1: target is a regular proper vertex; params empty.
///   A2: target is an infinite-emitter proper vertex; params = Z (range counts).
///   A3: target is an improper vertex q_Z; params = W, a strict superset of Z.
struct RewriteStep {
  Axiom axiom = Axiom::A1;
  Monomial target;
  RangeCounts params;
};

using Chain = std::vector<RewriteStep>;

/// The replacement multiset for one copy of the target monomial.
Element axiom_yield(const Graph& g, const RewriteStep& step);

/// Validates the step against `a` (target present, axiom applicable,
/// parameters well-formed) and returns the rewritten element.
Element expand(const Graph& g, const Element& a, const RewriteStep& step);

/// Applies a whole chain, validating every step.
Element replay_chain(const Graph& g, const Element& from, const Chain& chain);

/// Shifts every step's degree by n (chains are degree-translation covariant).
Chain shift_chain(const Chain& chain, int32_t n);

}  // namespace talent
