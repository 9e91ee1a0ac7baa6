#ifndef RELHYP_HYPERBOLICITY_HPP_
#define RELHYP_HYPERBOLICITY_HPP_

#include <cstdint>
#include <vector>

#include "relhyp/backend.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

// Rips-condition probe: the least delta such that every geodesic triangle
// with vertices in the ball is delta-slim on vertices, using one
// deterministic geodesic per vertex pair. A lower-bound certificate for the
// hyperbolicity constant of the whole graph.
struct DeltaCertificate {
  size_t radius;
  size_t delta_ball;
  size_t triangle_count;
  Word worst_a, worst_b, worst_c;  // corners of a witness triangle
};

DeltaCertificate estimate_delta(const GroupBackend& b, size_t radius);

// Searches for g with N(g h g^-1) <= 4*delta + 1 over all elements of h.
// Candidates are tried in order of increasing relative length. Throws
// NotFound with `search_exhausted` distinguishing an exhausted finite
// search (invalid delta) from a radius cutoff.
Elem conjugate_into_ball(const SubgroupHandle& h, const GroupBackend& b,
                         size_t delta);

}  // namespace relhyp

#endif  // RELHYP_HYPERBOLICITY_HPP_
