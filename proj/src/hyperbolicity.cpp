#include "relhyp/hyperbolicity.hpp"

#include <algorithm>
#include <map>

#include "relhyp/cayley.hpp"
#include "relhyp/errors.hpp"

namespace relhyp {

namespace {

// Vertices of the deterministic geodesic between u and v (one per unordered
// pair: the label is read from the canonically smaller endpoint).
std::vector<Elem> side_vertices(Elem u, Elem v, const GroupBackend& b) {
  if (b.elem_less(v, u)) std::swap(u, v);
  Word label = b.geodesic_word(b.mul(b.inv(u), v));
  std::vector<Elem> out{u};
  Elem cur = u;
  for (const Letter& l : label) {
    cur = b.mul(cur, b.evaluate(Word(std::vector<Letter>{l})));
    out.push_back(cur);
  }
  return out;
}

size_t dist(Elem u, Elem v, const GroupBackend& b) {
  return b.relative_length(b.mul(b.inv(u), v)).value;
}

}  // namespace

DeltaCertificate estimate_delta(const GroupBackend& b, size_t radius) {
  auto ball = b.ball(radius);
  std::vector<Elem> pts;
  for (const auto& [e, w] : ball) {
    (void)w;
    pts.push_back(e);
  }

  DeltaCertificate cert;
  cert.radius = radius;
  cert.delta_ball = 0;
  cert.triangle_count = 0;

  std::map<std::pair<Elem, Elem>, std::vector<Elem>> sides;
  auto side = [&](Elem u, Elem v) -> const std::vector<Elem>& {
    auto key = std::minmax(u, v);
    auto it = sides.find({key.first, key.second});
    if (it == sides.end())
      it = sides.emplace(std::make_pair(key.first, key.second),
                         side_vertices(u, v, b)).first;
    return it->second;
  };

  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      for (size_t k = j + 1; k < pts.size(); ++k) {
        ++cert.triangle_count;
        Elem corners[3] = {pts[i], pts[j], pts[k]};
        size_t worst = 0;
        for (int sidx = 0; sidx < 3; ++sidx) {
          const auto& ab = side(corners[sidx], corners[(sidx + 1) % 3]);
          const auto& bc = side(corners[(sidx + 1) % 3], corners[(sidx + 2) % 3]);
          const auto& ca = side(corners[(sidx + 2) % 3], corners[sidx]);
          for (Elem p : ab) {
            size_t best = SIZE_MAX;
            for (Elem q : bc) best = std::min(best, dist(p, q, b));
            for (Elem q : ca) best = std::min(best, dist(p, q, b));
            worst = std::max(worst, best);
          }
        }
        if (worst > cert.delta_ball) {
          cert.delta_ball = worst;
          cert.worst_a = b.geodesic_word(pts[i]);
          cert.worst_b = b.geodesic_word(pts[j]);
          cert.worst_c = b.geodesic_word(pts[k]);
        }
      }
    }
  }
  return cert;
}

Elem conjugate_into_ball(const SubgroupHandle& h, const GroupBackend& b,
                         size_t delta) {
  const size_t target = 4 * delta + 1;

  // Candidate conjugators in order of increasing length, then canonically.
  std::vector<Elem> candidates;
  bool finite_search = true;
  if (auto elems = b.list_elements()) {
    candidates = *elems;
  } else {
    finite_search = false;
    size_t norm = 0;
    for (Elem e : h.elements)
      norm = std::max(norm, b.relative_length(e).value);
    size_t cap = norm + target + 1;
    for (const auto& [e, w] : b.ball(cap)) {
      (void)w;
      candidates.push_back(e);
    }
  }
  std::sort(candidates.begin(), candidates.end(), [&](Elem a, Elem c) {
    size_t la = b.relative_length(a).value, lc = b.relative_length(c).value;
    if (la != lc) return la < lc;
    return b.elem_less(a, c);
  });

  for (Elem g : candidates) {
    Elem gi = b.inv(g);
    bool ok = true;
    for (Elem x : h.elements) {
      if (b.relative_length(b.mul(b.mul(g, x), gi)).value > target) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw NotFound(finite_search
                     ? "no conjugator exists in the finite group: delta is "
                       "not a valid hyperbolicity constant for this graph"
                     : "no conjugator within the search radius: raise the "
                       "radius or certify delta",
                 finite_search);
}

}  // namespace relhyp
