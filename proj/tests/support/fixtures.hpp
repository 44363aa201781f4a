#pragma once

#include <string>

#include "talent/graph.hpp"

namespace talent::fixtures {

inline Graph loop1() {
  return Graph::parse("vertex v\nedges v v 1\n");
}

inline Graph rose2() {
  return Graph::parse("vertex v\nedges v v 1\nedges v v 1\n");
}

inline Graph toeplitz() {
  return Graph::parse("vertex v\nvertex w\nedges v v 1\nedges v w 1\n");
}

inline Graph clock() {
  return Graph::parse("vertex v\nvertex w\nedges v w 1\nedges w w 1\n");
}

inline Graph e1() {
  return Graph::parse("vertex v1\nvertex w1\nedges v1 w1 1\n");
}

inline Graph e2() {
  return Graph::parse("vertex v2\nvertex m\nvertex w2\nedges v2 m 1\nedges m w2 1\n");
}

inline Graph bifur() {
  return Graph::parse("vertex u\nvertex v\nvertex w\nedges v u 1\nedges v w 1\n");
}

inline Graph infb() {
  return Graph::parse("vertex v\nvertex w\nedges v w *\nedges w w 1\n");
}

inline Graph iecyc() {
  return Graph::parse("vertex v\nvertex w\nvertex u\nedges v w 1\nedges w v 1\nedges v u *\n");
}

// u -> v <- w, the both-feed-one graph
inline Graph exv() {
  return Graph::parse("vertex u\nvertex v\nvertex w\nedges u v 1\nedges w v 1\n");
}

// v1 (loop) -> v2 (loop)
inline Graph twoloop() {
  return Graph::parse(
      "vertex v1\nvertex v2\nedges v1 v1 1\nedges v1 v2 1\nedges v2 v2 1\n");
}

// the out-split companion of rose2: two vertices, each looped, cross edges
inline Graph rose2_outsplit() {
  return Graph::parse(
      "vertex a\nvertex b\nedges a a 1\nedges a b 1\nedges b b 1\nedges b a 1\n");
}

// single vertex, no edges
inline Graph point() {
  return Graph::parse("vertex v\n");
}

}  // namespace talent::fixtures
