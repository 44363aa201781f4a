#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "talent/graph.hpp"

namespace talent {

struct ElementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Range-count map of an improper vertex: range vertex -> positive count.
/// Kept sorted by vertex; this is the canonical quotient of concrete edge
/// subsets (only ranges and counts feed the defining relations).
using RangeCounts = std::vector<std::pair<Vertex, uint32_t>>;

/// A generator of the free monoid: a proper vertex, or an improper vertex
/// q_Z^v canonicalized by the range-count multiset of Z.
class Generator {
 public:
  Generator() = default;
  static Generator proper(Vertex v) { return Generator(v, {}); }
  static Generator improper(Vertex v, RangeCounts counts);

  bool is_proper() const { return counts_.empty(); }
  bool is_improper() const { return !counts_.empty(); }
  Vertex vertex() const { return v_; }
  const RangeCounts& counts() const { return counts_; }

  uint32_t count_of(Vertex range) const;
  uint64_t total_count() const;

  friend auto operator<=>(const Generator&, const Generator&) = default;

 private:
  Generator(Vertex v, RangeCounts counts) : v_(v), counts_(std::move(counts)) {}
  Vertex v_ = 0;
  RangeCounts counts_;
};

/// True iff z <= w pointwise (every count in z is covered by w).
bool counts_leq(const RangeCounts& z, const RangeCounts& w);
RangeCounts counts_minus(const RangeCounts& w, const RangeCounts& z);
RangeCounts counts_union_max(const RangeCounts& a, const RangeCounts& b);
uint64_t counts_total(const RangeCounts& z);

/// Validates Z against the graph: v must be an infinite emitter, each range
/// must be the range of some group out of v, counts within total multiplicity.
void check_improper(const Graph& g, Vertex v, const RangeCounts& counts);

struct Monomial {
  int32_t degree = 0;
  Generator gen;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Element of the free graded monoid in normal representation: a finite
/// multiset of monomials. Immutable value semantics.
class Element {
 public:
  Element() = default;
  static Element monomial(int32_t degree, Generator g, uint64_t mult = 1);
  static Element proper(int32_t degree, Vertex v, uint64_t mult = 1) {
    return monomial(degree, Generator::proper(v), mult);
  }

  bool is_zero() const { return terms_.empty(); }
  uint64_t monomial_count() const;       // with multiplicity
  size_t distinct_count() const { return terms_.size(); }
  const std::map<Monomial, uint64_t>& terms() const { return terms_; }

  uint64_t multiplicity(const Monomial& m) const;
  std::set<Generator> support() const;

  Element add(const Element& other) const;
  /// Removes `other` as a sub-multiset; throws if not contained.
  Element subtract(const Element& other) const;
  bool contains(const Element& other) const;
  Element shift(int32_t n) const;

  void insert(const Monomial& m, uint64_t mult = 1);
  void remove(const Monomial& m, uint64_t mult = 1);

  int32_t min_degree() const;
  int32_t max_degree() const;

  friend Element operator+(const Element& a, const Element& b) { return a.add(b); }
  friend auto operator<=>(const Element&, const Element&) = default;

 private:
  std::map<Monomial, uint64_t> terms_;
};

/// Concrete finite nonempty set of edges out of one infinite emitter.
struct EdgeSubset {
  Vertex source = 0;
  std::vector<EdgeRef> edges;
};

/// Canonicalizes a concrete edge subset to the improper generator keyed by
/// its range-count multiset.
Generator canonical_improper(const Graph& g, Vertex v, const EdgeSubset& z);

std::string format_generator(const Graph& g, const Generator& gen);
std::string format_monomial(const Graph& g, const Monomial& m, uint64_t mult);
std::string format_element(const Graph& g, const Element& a);

/// Grammar: expr := term ('+' term)*; term := [coeff] [power] gen;
/// power := 'x' | 'x^' integer; gen := vertex | 'q(' vertex '){' v ':' n ... '}'.
/// "0" denotes the zero element. Whitespace-insensitive.
Element parse_element(const Graph& g, const std::string& text);
Generator parse_generator(const Graph& g, const std::string& text);

}  // namespace talent
