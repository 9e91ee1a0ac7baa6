#include "relhyp/cayley.hpp"

#include <map>
#include <set>
#include <sstream>

#include "relhyp/errors.hpp"

namespace relhyp {

PathInGraph trace(Elem base, const Word& w, const GroupBackend& b) {
  PathInGraph path;
  path.base = base;
  path.label = w;
  path.vertices.reserve(w.length() + 1);
  path.vertices.push_back(base);
  Elem cur = base;
  for (const Letter& l : w) {
    cur = b.mul(cur, b.evaluate(Word(std::vector<Letter>{l})));
    path.vertices.push_back(cur);
  }
  path.closed = path.vertices.front() == path.vertices.back();
  return path;
}

// Vertex indices spanned by a component, in original path indexing.
static std::vector<size_t> component_vertices(const HComponent& c, size_t n,
                                              bool cyclic) {
  std::vector<size_t> out;
  for (size_t k = 0; k <= c.length; ++k) {
    size_t v = c.begin + k;
    if (cyclic) v %= n;
    out.push_back(v);
  }
  return out;
}

ComponentReport components(const PathInGraph& path, const GroupBackend& b) {
  return components(path, b, path.closed);
}

ComponentReport components(const PathInGraph& path, const GroupBackend& b,
                           bool scan_as_cycle) {
  ComponentReport rep;
  const Word& w = path.label;
  const size_t n = w.length();
  rep.cyclic = scan_as_cycle && path.closed && n > 0;

  // Maximal H_lambda-runs; for cycles a run may wrap across the seam, so
  // scanning starts at a position that does not continue its predecessor.
  if (!rep.cyclic) {
    size_t i = 0;
    while (i < n) {
      if (!w[i].is_h()) {
        ++i;
        continue;
      }
      uint32_t lam = w[i].lambda();
      size_t j = i;
      while (j < n && w[j].is_h() && w[j].lambda() == lam) ++j;
      rep.components.push_back({lam, i, j - i, true, {}});
      i = j;
    }
  } else {
    bool all_same = w[0].is_h();
    for (size_t i = 1; all_same && i < n; ++i)
      all_same = w[i].is_h() && w[i].lambda() == w[0].lambda();
    if (all_same) {
      rep.components.push_back({w[0].lambda(), 0, n, true, {}});
    } else {
      size_t s = 0;
      for (size_t i = 0; i < n; ++i) {
        size_t prev = (i + n - 1) % n;
        bool continues = w[i].is_h() && w[prev].is_h() &&
                         w[i].lambda() == w[prev].lambda();
        if (!continues) {
          s = i;
          break;
        }
      }
      size_t k = 0;
      while (k < n) {
        size_t i = (s + k) % n;
        if (!w[i].is_h()) {
          ++k;
          continue;
        }
        uint32_t lam = w[i].lambda();
        size_t len = 0;
        while (k < n) {
          size_t j = (s + k) % n;
          if (!(w[j].is_h() && w[j].lambda() == lam)) break;
          ++len;
          ++k;
        }
        rep.components.push_back({lam, i, len, true, {}});
      }
    }
  }

  // Connectivity: any vertex pair differing by an element of H_lambda.
  for (size_t a = 0; a < rep.components.size(); ++a) {
    for (size_t c = a + 1; c < rep.components.size(); ++c) {
      if (rep.components[a].lambda != rep.components[c].lambda) continue;
      uint32_t lam = rep.components[a].lambda;
      std::optional<Elem> connector;
      for (size_t u : component_vertices(rep.components[a], n, rep.cyclic)) {
        for (size_t v : component_vertices(rep.components[c], n, rep.cyclic)) {
          Elem diff = b.mul(b.inv(path.vertices[u]), path.vertices[v]);
          if (b.membership(diff, lam)) {
            connector = diff;
            break;
          }
        }
        if (connector) break;
      }
      if (connector) {
        rep.components[a].isolated = false;
        rep.components[c].isolated = false;
        rep.components[a].witnesses.push_back({c, *connector});
        rep.components[c].witnesses.push_back({a, b.inv(*connector)});
      }
    }
  }
  return rep;
}

Elem component_label(const PathInGraph& path, const HComponent& c,
                     const GroupBackend& b) {
  const size_t n = path.label.length();
  Elem v = b.identity();
  for (size_t k = 0; k < c.length; ++k) {
    size_t i = c.begin + k;
    if (path.closed && n > 0) i %= n;
    v = b.mul(v, b.evaluate(Word(std::vector<Letter>{path.label[i]})));
  }
  return v;
}

Word geodesic_word(Elem g, const GroupBackend& b) {
  if (!b.relative_length(g).exact)
    throw NotComputable("backend has no exact relative length here");
  return b.geodesic_word(g);
}

std::string ball_dot(const GroupBackend& b, size_t radius) {
  auto ball = b.ball(radius);
  std::set<Elem> in_ball;
  for (const auto& [e, w] : ball) in_ball.insert(e);

  static const char* kPalette[] = {"blue",   "red",    "darkgreen",
                                   "orange", "purple", "brown"};
  std::ostringstream os;
  os << "graph ball {\n";
  for (const auto& [e, w] : ball) {
    (void)w;
    os << "  \"" << b.elem_repr(e) << "\";\n";
  }
  std::set<std::pair<Elem, Elem>> seen;
  for (const auto& [e, w] : ball) {
    (void)w;
    for (const auto& [l, img] : b.alphabet()) {
      Elem u = b.mul(e, img);
      if (!in_ball.count(u) || u == e) continue;
      auto key = std::minmax(e, u);
      if (!seen.insert({key.first, key.second}).second) continue;
      os << "  \"" << b.elem_repr(e) << "\" -- \"" << b.elem_repr(u) << "\"";
      if (l.is_x()) {
        os << " [label=\"" << b.presentation().x_generators[l.gen] << "\"]";
      } else {
        os << " [style=dashed, color="
           << kPalette[l.lambda() % (sizeof(kPalette) / sizeof(*kPalette))]
           << "]";
      }
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace relhyp
