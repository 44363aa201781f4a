#include "talent/element.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace talent {

Generator Generator::improper(Vertex v, RangeCounts counts) {
  std::sort(counts.begin(), counts.end());
  if (counts.empty()) throw ElementError("improper generator needs a nonempty range-count set");
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i].second == 0) throw ElementError("improper generator: zero count");
    if (i > 0 && counts[i].first == counts[i - 1].first)
      throw ElementError("improper generator: duplicate range");
  }
  return Generator(v, std::move(counts));
}

uint32_t Generator::count_of(Vertex range) const {
  for (const auto& [w, c] : counts_)
    if (w == range) return c;
  return 0;
}

uint64_t Generator::total_count() const {
  uint64_t t = 0;
  for (const auto& [w, c] : counts_) t += c;
  return t;
}

bool counts_leq(const RangeCounts& z, const RangeCounts& w) {
  for (const auto& [v, c] : z) {
    uint32_t cw = 0;
    for (const auto& [v2, c2] : w)
      if (v2 == v) cw = c2;
    if (c > cw) return false;
  }
  return true;
}

RangeCounts counts_minus(const RangeCounts& w, const RangeCounts& z) {
  RangeCounts out;
  for (const auto& [v, c] : w) {
    uint32_t cz = 0;
    for (const auto& [v2, c2] : z)
      if (v2 == v) cz = c2;
    if (c > cz) out.emplace_back(v, c - cz);
  }
  return out;
}

RangeCounts counts_union_max(const RangeCounts& a, const RangeCounts& b) {
  std::map<Vertex, uint32_t> m;
  for (const auto& [v, c] : a) m[v] = std::max(m[v], c);
  for (const auto& [v, c] : b) m[v] = std::max(m[v], c);
  return {m.begin(), m.end()};
}

uint64_t counts_total(const RangeCounts& z) {
  uint64_t t = 0;
  for (const auto& [v, c] : z) t += c;
  return t;
}

void check_improper(const Graph& g, Vertex v, const RangeCounts& counts) {
  if (!g.is_infinite_emitter(v))
    throw ElementError("improper generator at non-infinite-emitter " + g.name(v));
  if (counts.empty()) throw ElementError("improper generator: empty edge set");
  for (const auto& [w, c] : counts) {
    uint32_t avail = g.multiplicity_to(v, w);
    if (avail == 0)
      throw ElementError("improper generator: " + g.name(w) + " is not a range of " + g.name(v));
    if (avail != kOmega && c > avail)
      throw ElementError("improper generator: count exceeds multiplicity toward " + g.name(w));
  }
}

Element Element::monomial(int32_t degree, Generator g, uint64_t mult) {
  Element e;
  if (mult > 0) e.terms_[Monomial{degree, std::move(g)}] = mult;
  return e;
}

uint64_t Element::monomial_count() const {
  uint64_t n = 0;
  for (const auto& [m, c] : terms_) n += c;
  return n;
}

uint64_t Element::multiplicity(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

std::set<Generator> Element::support() const {
  std::set<Generator> s;
  for (const auto& [m, c] : terms_) s.insert(m.gen);
  return s;
}

Element Element::add(const Element& other) const {
  Element out = *this;
  for (const auto& [m, c] : other.terms_) out.terms_[m] += c;
  return out;
}

bool Element::contains(const Element& other) const {
  for (const auto& [m, c] : other.terms_)
    if (multiplicity(m) < c) return false;
  return true;
}

Element Element::subtract(const Element& other) const {
  Element out = *this;
  for (const auto& [m, c] : other.terms_) out.remove(m, c);
  return out;
}

Element Element::shift(int32_t n) const {
  Element out;
  for (const auto& [m, c] : terms_) out.terms_[Monomial{m.degree + n, m.gen}] = c;
  return out;
}

void Element::insert(const Monomial& m, uint64_t mult) {
  if (mult == 0) return;
  terms_[m] += mult;
}

void Element::remove(const Monomial& m, uint64_t mult) {
  auto it = terms_.find(m);
  if (it == terms_.end() || it->second < mult)
    throw ElementError("remove: monomial multiplicity underflow");
  it->second -= mult;
  if (it->second == 0) terms_.erase(it);
}

int32_t Element::min_degree() const {
  if (terms_.empty()) throw ElementError("min_degree of zero element");
  return terms_.begin()->first.degree;
}

int32_t Element::max_degree() const {
  if (terms_.empty()) throw ElementError("max_degree of zero element");
  return terms_.rbegin()->first.degree;
}

Generator canonical_improper(const Graph& g, Vertex v, const EdgeSubset& z) {
  if (z.edges.empty()) throw ElementError("canonical_improper: empty edge set");
  if (z.source != v) throw ElementError("canonical_improper: edge set not rooted at the vertex");
  std::map<Vertex, uint32_t> counts;
  std::set<EdgeRef> seen;
  for (const EdgeRef& e : z.edges) {
    if (e.group >= g.group_count())
      throw ElementError("canonical_improper: unknown edge group");
    const EdgeGroup& grp = g.group(e.group);
    if (grp.src != v) throw ElementError("canonical_improper: edge not out of the vertex");
    if (!grp.is_omega() && e.index >= grp.multiplicity)
      throw ElementError("canonical_improper: edge index out of range");
    if (!seen.insert(e).second) throw ElementError("canonical_improper: duplicate edge");
    counts[grp.rng] += 1;
  }
  RangeCounts rc(counts.begin(), counts.end());
  check_improper(g, v, rc);
  return Generator::improper(v, std::move(rc));
}

std::string format_generator(const Graph& g, const Generator& gen) {
  if (gen.is_proper()) return g.name(gen.vertex());
  std::ostringstream out;
  out << "q(" << g.name(gen.vertex()) << "){";
  bool first = true;
  for (const auto& [w, c] : gen.counts()) {
    if (!first) out << ",";
    first = false;
    out << g.name(w) << ":" << c;
  }
  out << "}";
  return out.str();
}

std::string format_monomial(const Graph& g, const Monomial& m, uint64_t mult) {
  std::ostringstream out;
  if (mult != 1) out << mult << " ";
  if (m.degree == 1)
    out << "x ";
  else if (m.degree != 0)
    out << "x^" << m.degree << " ";
  out << format_generator(g, m.gen);
  return out.str();
}

std::string format_element(const Graph& g, const Element& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    if (!first) out << " + ";
    first = false;
    out << format_monomial(g, m, c);
  }
  return out.str();
}

namespace {

struct Lexer {
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw ElementError("element parse error at position " + std::to_string(i) +
                         ": expected '" + std::string(1, c) + "'");
  }
  std::string ident() {
    skip();
    size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
      ++i;
    if (start == i)
      throw ElementError("element parse error at position " + std::to_string(i) +
                         ": identifier expected");
    return s.substr(start, i - start);
  }
  int64_t integer() {
    skip();
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i || (i - start == 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      throw ElementError("element parse error at position " + std::to_string(i) +
                         ": integer expected");
    return std::stoll(s.substr(start, i - start));
  }
  bool at_digit() {
    skip();
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  }
};

Generator parse_gen_inner(Lexer& lx, const Graph& g) {
  std::string id = lx.ident();
  if (id == "q" && lx.peek() == '(') {
    lx.expect('(');
    std::string vid = lx.ident();
    lx.expect(')');
    lx.expect('{');
    RangeCounts counts;
    while (true) {
      std::string wid = lx.ident();
      lx.expect(':');
      int64_t c = lx.integer();
      if (c <= 0) throw ElementError("improper count must be positive");
      counts.emplace_back(g.vertex(wid), static_cast<uint32_t>(c));
      lx.eat(',');
      if (lx.peek() == '}') break;
    }
    lx.expect('}');
    Vertex v = g.vertex(vid);
    Generator gen = Generator::improper(v, std::move(counts));
    check_improper(g, v, gen.counts());
    return gen;
  }
  return Generator::proper(g.vertex(id));
}

}  // namespace

Element parse_element(const Graph& g, const std::string& text) {
  Lexer lx{text};
  if (lx.eof()) throw ElementError("empty element text");
  Element result;
  if (lx.peek() == '0') {
    lx.expect('0');
    if (!lx.eof()) throw ElementError("junk after zero element");
    return result;
  }
  while (true) {
    uint64_t coeff = 1;
    if (lx.at_digit()) {
      int64_t c = lx.integer();
      if (c <= 0) throw ElementError("coefficient must be positive");
      coeff = static_cast<uint64_t>(c);
    }
    int32_t degree = 0;
    // 'x' introduces the shift unless it begins a longer identifier.
    lx.skip();
    if (lx.i < lx.s.size() && lx.s[lx.i] == 'x') {
      size_t save = lx.i;
      std::string id = lx.ident();
      if (id == "x") {
        if (lx.peek() == '^') {
          lx.expect('^');
          degree = static_cast<int32_t>(lx.integer());
        } else {
          degree = 1;
        }
      } else {
        lx.i = save;  // identifier starting with x: it is the generator
      }
    }
    Generator gen = parse_gen_inner(lx, g);
    result.insert(Monomial{degree, gen}, coeff);
    if (!lx.eat('+')) break;
  }
  if (!lx.eof()) throw ElementError("junk at end of element text");
  return result;
}

Generator parse_generator(const Graph& g, const std::string& text) {
  Lexer lx{text};
  Generator gen = parse_gen_inner(lx, g);
  if (!lx.eof()) throw ElementError("junk at end of generator text");
  return gen;
}

}  // namespace talent
