#include "relhyp/backend.hpp"

#include <algorithm>
#include <set>

#include "relhyp/errors.hpp"

namespace relhyp {

bool SubgroupHandle::contains(Elem g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

SubgroupHandle conjugate_subgroup(const SubgroupHandle& h, Elem g) {
  SubgroupHandle out;
  out.backend = h.backend;
  out.conjugated_by = g;
  const GroupBackend& b = *h.backend;
  Elem gi = b.inv(g);
  for (Elem e : h.elements) out.elements.push_back(b.mul(b.mul(g, e), gi));
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

std::vector<SubgroupHandle> GroupBackend::list_subgroups() const {
  auto elems = list_elements();
  if (!elems) throw NotComputable("subgroup enumeration needs a finite backend");

  auto closure = [&](std::vector<Elem> gens) {
    std::set<Elem> seen(gens.begin(), gens.end());
    seen.insert(identity());
    std::vector<Elem> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
      std::vector<Elem> next;
      for (Elem a : frontier)
        for (Elem g : gens) {
          Elem p = mul(a, g);
          if (seen.insert(p).second) next.push_back(p);
          p = mul(a, inv(g));
          if (seen.insert(p).second) next.push_back(p);
        }
      frontier = std::move(next);
    }
    return std::vector<Elem>(seen.begin(), seen.end());
  };

  // Every subgroup is reached by extending a known one with one generator.
  std::set<std::vector<Elem>> found;
  found.insert({identity()});
  std::vector<std::vector<Elem>> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<std::vector<Elem>> next;
    for (const auto& sub : frontier) {
      for (Elem g : *elems) {
        if (std::binary_search(sub.begin(), sub.end(), g)) continue;
        std::vector<Elem> gens = sub;
        gens.push_back(g);
        std::vector<Elem> bigger = closure(gens);
        if (found.insert(bigger).second) next.push_back(std::move(bigger));
      }
    }
    frontier = std::move(next);
  }

  std::vector<SubgroupHandle> out;
  for (const auto& s : found)
    out.push_back(SubgroupHandle{this, s, std::nullopt});
  return out;
}

}  // namespace relhyp
