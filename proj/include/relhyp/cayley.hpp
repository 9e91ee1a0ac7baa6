#ifndef RELHYP_CAYLEY_HPP_
#define RELHYP_CAYLEY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relhyp/backend.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

// A combinatorial path in the relative Cayley graph: base vertex, label and
// the prefix evaluations. vertices[i+1] = vertices[i] * letter[i].
struct PathInGraph {
  Elem base;
  Word label;
  std::vector<Elem> vertices;  // label.length() + 1 entries
  bool closed = false;

  Elem start() const { return vertices.front(); }
  Elem end() const { return vertices.back(); }
};

struct ComponentWitness {
  size_t other;     // index of the connected component
  Elem connector;   // element of H_lambda carrying one vertex to the other
};

// One H_lambda-component: a maximal run of H_lambda-letters of the path.
// For closed paths the run may wrap around the seam; `begin` is the index of
// the first letter and `length` the number of letters (indices mod n).
struct HComponent {
  uint32_t lambda;
  size_t begin;
  size_t length;
  bool isolated;
  std::vector<ComponentWitness> witnesses;
};

struct ComponentReport {
  std::vector<HComponent> components;
  bool cyclic = false;  // scanned as a cycle
};

// Traces w from base; closed iff the endpoints coincide.
PathInGraph trace(Elem base, const Word& w, const GroupBackend& b);

// H-components of the path with the connected/isolated classification. Two
// same-peripheral components are connected iff some vertex of one differs
// from some vertex of the other by an element of H_lambda (a connector of
// length at most 1). Closed paths are scanned as cycles by default.
ComponentReport components(const PathInGraph& path, const GroupBackend& b);
ComponentReport components(const PathInGraph& path, const GroupBackend& b,
                           bool scan_as_cycle);

// Product of the component's letters in G.
Elem component_label(const PathInGraph& path, const HComponent& c,
                     const GroupBackend& b);

// Deterministic geodesic representative (lexicographically least).
Word geodesic_word(Elem g, const GroupBackend& b);

// DOT export of the ball of the given radius: X-edges solid, peripheral
// coset edges dashed and colored per peripheral.
std::string ball_dot(const GroupBackend& b, size_t radius);

}  // namespace relhyp

#endif  // RELHYP_CAYLEY_HPP_
