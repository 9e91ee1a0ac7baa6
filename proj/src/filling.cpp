#include "relhyp/filling.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <unordered_map>

#include "relhyp/cayley.hpp"
#include "relhyp/errors.hpp"
#include "relhyp/reducedness.hpp"

namespace relhyp {

namespace {

// Byte-coded alphabet over X u X^-1 u (finite peripheral letters), with the
// rewriting rule table: every way to replace a contiguous piece of a cell
// boundary by the inverse of the rest, for all Q-cells (peripheral words of
// length <= 3 representing 1) and all cyclic conjugates of the relators and
// their inverses.
class FillingEngine {
 public:
  explicit FillingEngine(const RelativePresentation& pres) : pres_(pres) {
    for (uint32_t g = 0; g < pres.x_generators.size(); ++g) {
      add_code(Letter::x(g, 1));
      add_code(Letter::x(g, -1));
    }
    for (uint32_t lam = 0; lam < pres.num_peripherals(); ++lam) {
      const Peripheral& peri = pres.peripheral(lam);
      if (!peri.is_finite_table())
        throw NotComputable("filling search needs finite-table peripherals");
      for (uint32_t e = 0; e < peri.size(); ++e)
        if (e != peri.identity()) add_code(Letter::h(lam, e));
    }
    if (letters_.size() > 250) throw NotComputable("alphabet too large");
    for (size_t c = 0; c < letters_.size(); ++c)
      inv_code_.push_back(code_of(inverse_letter(letters_[c], pres)));

    build_q_rules();
    build_r_rules();
  }

  const RelativePresentation& presentation() const { return pres_; }

  struct Rule {
    std::string pattern;
    std::string replacement;
    bool is_relator;
    size_t relator = 0;
    int sign = 1;
    size_t shift = 0;
    size_t split = 0;
    uint32_t lambda = 0;
  };

  const std::vector<Rule>& rules() const { return rules_; }

  std::string encode(const Word& w) const {
    std::string s;
    s.reserve(w.length());
    for (const Letter& l : w) s.push_back((char)code_of(l));
    return s;
  }

  Word decode(const std::string& s) const {
    std::vector<Letter> ls;
    for (char c : s) ls.push_back(letters_[(uint8_t)c]);
    return Word(std::move(ls));
  }

  bool is_x_code(uint8_t c) const { return letters_[c].is_x(); }

  // Cancel x x^-1 pairs (stack pass); peripheral letters never cancel freely.
  std::string x_reduce(const std::string& s) const {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
      uint8_t c = (uint8_t)ch;
      if (!out.empty() && is_x_code((uint8_t)out.back()) && is_x_code(c) &&
          inv_code_[(uint8_t)out.back()] == c)
        out.pop_back();
      else
        out.push_back(ch);
    }
    return out;
  }

  std::string splice(const std::string& s, size_t pos, size_t len,
                     const std::string& repl) const {
    std::string out = s.substr(0, pos);
    out += repl;
    out += s.substr(pos + len);
    return x_reduce(out);
  }

 private:
  uint8_t code_of(const Letter& l) const {
    auto it = index_.find(l);
    return it->second;
  }

  void add_code(const Letter& l) {
    index_.emplace(l, (uint8_t)letters_.size());
    letters_.push_back(l);
  }

  void add_rule(Rule r) {
    if (r.pattern == r.replacement) return;
    auto key = std::make_pair(r.pattern, r.replacement);
    if (!rule_index_.emplace(key, rules_.size()).second) return;
    rules_.push_back(std::move(r));
  }

  void build_q_rules() {
    for (uint32_t lam = 0; lam < pres_.num_peripherals(); ++lam) {
      const Peripheral& peri = pres_.peripheral(lam);
      std::vector<uint32_t> nontrivial;
      for (uint32_t e = 0; e < peri.size(); ++e)
        if (e != peri.identity()) nontrivial.push_back(e);
      auto code = [&](uint32_t e) {
        return (char)code_of(Letter::h(lam, e));
      };
      for (uint32_t a : nontrivial) {
        for (uint32_t b : nontrivial) {
          uint32_t ab = peri.multiply(a, b);
          std::string pat{code(a), code(b)};
          if (peri.is_identity(ab)) {
            // Pair cell: delete / insert.
            add_rule({pat, "", false, 0, 1, 0, 0, lam});
            add_rule({"", pat, false, 0, 1, 0, 0, lam});
          } else {
            // Triangle cell: merge, split, delete, insert.
            std::string prod{code(ab)};
            add_rule({pat, prod, false, 0, 1, 0, 0, lam});
            add_rule({prod, pat, false, 0, 1, 0, 0, lam});
            std::string tri{code(a), code(b), code(peri.inverse(ab))};
            add_rule({tri, "", false, 0, 1, 0, 0, lam});
            add_rule({"", tri, false, 0, 1, 0, 0, lam});
          }
        }
      }
    }
  }

  void build_r_rules() {
    for (size_t j = 0; j < pres_.relators.size(); ++j) {
      for (int sign : {1, -1}) {
        Word r = sign > 0 ? pres_.relators[j] : inverse(pres_.relators[j], pres_);
        const size_t n = r.length();
        if (n == 0) continue;
        for (size_t shift = 0; shift < n; ++shift) {
          Word rot = cyclic_shift(r, shift);
          std::string cell = encode(rot);
          for (size_t k = 0; k <= n; ++k) {
            std::string pat = cell.substr(0, k);
            std::string rest = cell.substr(k);
            std::string repl;
            for (size_t i = rest.size(); i-- > 0;)
              repl.push_back((char)inv_code_[(uint8_t)rest[i]]);
            add_rule({pat, repl, true, j, sign, shift, k, 0});
          }
        }
      }
    }
  }

  const RelativePresentation& pres_;
  std::vector<Letter> letters_;
  std::map<Letter, uint8_t> index_;
  std::vector<uint8_t> inv_code_;
  std::vector<Rule> rules_;
  std::map<std::pair<std::string, std::string>, size_t> rule_index_;
};

constexpr uint64_t pack_cost(uint64_t rel, uint64_t area) {
  return (rel << 32) | area;
}
constexpr uint64_t cost_rel(uint64_t c) { return c >> 32; }
constexpr uint64_t cost_area(uint64_t c) { return c & 0xffffffffull; }

struct SearchOutcome {
  bool reached = false;
  uint64_t cost = 0;
  size_t shift_used = 0;
  std::vector<std::pair<size_t, size_t>> steps;  // (rule id, pos), in order
  uint64_t min_cost_pruned = UINT64_MAX;   // cheapest successor lost to cost caps
  uint64_t min_length_pruned = UINT64_MAX; // cheapest successor lost to max_length
};

// Dijkstra from the cyclic shifts of `start` to the empty word.
SearchOutcome search_to_trivial(const FillingEngine& eng, const Word& start,
                                const FillBudget& budget) {
  const size_t max_len =
      budget.max_length ? budget.max_length
                        : start.length() + 2 * extract_omega(eng.presentation()).M;

  std::vector<std::string> states;
  std::unordered_map<std::string, uint32_t> index;
  std::vector<uint64_t> dist;
  // parent: state, rule, pos; seeds carry the shift in `pos` with rule
  // SIZE_MAX.
  struct Parent {
    uint32_t state;
    size_t rule;
    size_t pos;
  };
  std::vector<Parent> parent;

  auto intern = [&](const std::string& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    uint32_t id = (uint32_t)states.size();
    states.push_back(s);
    index.emplace(s, id);
    dist.push_back(UINT64_MAX);
    parent.push_back({UINT32_MAX, 0, 0});
    return id;
  };

  using QEntry = std::pair<uint64_t, uint32_t>;
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> queue;

  const size_t n = start.length();
  for (size_t k = 0; k < std::max<size_t>(n, 1); ++k) {
    Word rot = cyclic_shift(start, k);
    std::string s = eng.x_reduce(eng.encode(rot));
    uint32_t id = intern(s);
    if (dist[id] == UINT64_MAX || dist[id] > 0) {
      dist[id] = 0;
      parent[id] = {UINT32_MAX, SIZE_MAX, k};
      queue.push({0, id});
    }
    if (n == 0) break;
  }

  SearchOutcome out;
  while (!queue.empty()) {
    auto [cost, id] = queue.top();
    queue.pop();
    if (cost != dist[id]) continue;  // stale
    if (states[id].empty()) {
      out.reached = true;
      out.cost = cost;
      // Reconstruct the move list.
      std::vector<std::pair<size_t, size_t>> rev;
      uint32_t cur = id;
      while (parent[cur].rule != SIZE_MAX) {
        rev.push_back({parent[cur].rule, parent[cur].pos});
        cur = parent[cur].state;
      }
      out.shift_used = parent[cur].pos;
      out.steps.assign(rev.rbegin(), rev.rend());
      return out;
    }
    const std::string s = states[id];
    for (size_t ri = 0; ri < eng.rules().size(); ++ri) {
      const auto& rule = eng.rules()[ri];
      uint64_t step = pack_cost(rule.is_relator ? 1 : 0, 1);
      uint64_t ncost = cost + step;
      const std::string& pat = rule.pattern;
      size_t pos = 0;
      for (;;) {
        if (pat.empty()) {
          if (pos > s.size()) break;
        } else {
          pos = s.find(pat, pos);
          if (pos == std::string::npos) break;
        }
        if (cost_rel(ncost) > budget.max_rel_area ||
            cost_area(ncost) > budget.max_area) {
          out.min_cost_pruned = std::min(out.min_cost_pruned, ncost);
        } else {
          std::string next = eng.splice(s, pos, pat.size(), rule.replacement);
          if (next.size() > max_len) {
            out.min_length_pruned = std::min(out.min_length_pruned, ncost);
          } else {
            uint32_t nid = intern(next);
            if (ncost < dist[nid]) {
              dist[nid] = ncost;
              parent[nid] = {id, ri, pos};
              queue.push({ncost, nid});
            }
          }
        }
        ++pos;
      }
    }
  }
  return out;
}

}  // namespace

FillingResult fill(const Word& w, const GroupBackend& b, const FillBudget& budget) {
  if (!b.is_trivial(w)) throw NotNullHomotopic();
  FillingEngine eng(b.presentation());
  SearchOutcome sr = search_to_trivial(eng, w, budget);
  if (!sr.reached) {
    uint64_t bound = std::min(sr.min_cost_pruned, sr.min_length_pruned);
    if (bound == UINT64_MAX)
      throw NotComputable("no filling within the search space (internal)");
    throw BudgetExceeded(cost_rel(bound), cost_area(bound));
  }
  FillingResult res;
  res.rel_area = cost_rel(sr.cost);
  res.area = cost_area(sr.cost);
  // Dijkstra settles the whole cheaper frontier; the result is the minimum
  // over fillings whose intermediate words stay within max_length, and it is
  // unconditionally minimal unless the cost caps cut off a cheaper branch.
  res.exact = sr.cost <= sr.min_cost_pruned;
  res.shift_used = sr.shift_used;

  // Expand the step list into a replayable script.
  Word cur = cyclic_shift(w, sr.shift_used);
  std::string s = eng.x_reduce(eng.encode(cur));
  for (auto [ri, pos] : sr.steps) {
    const auto& rule = eng.rules()[ri];
    FillMove mv;
    mv.is_relator = rule.is_relator;
    mv.relator = rule.relator;
    mv.sign = rule.sign;
    mv.shift = rule.shift;
    mv.split = rule.split;
    mv.lambda = rule.lambda;
    mv.pos = pos;
    mv.matched = eng.decode(rule.pattern);
    mv.replacement = eng.decode(rule.replacement);
    res.script.push_back(mv);
    s = eng.splice(s, pos, rule.pattern.size(), rule.replacement);
  }
  if (!s.empty()) throw NotComputable("script reconstruction failed (internal)");
  return res;
}

bool replay_script(const Word& w, const FillingResult& r,
                   const RelativePresentation& p) {
  FillingEngine eng(p);
  std::string s = eng.x_reduce(eng.encode(cyclic_shift(w, r.shift_used)));
  size_t rel = 0, area = 0;
  for (const FillMove& mv : r.script) {
    std::string pat = eng.encode(mv.matched);
    if (mv.pos + pat.size() > s.size()) return false;
    if (s.substr(mv.pos, pat.size()) != pat) return false;
    s = eng.splice(s, mv.pos, pat.size(), eng.encode(mv.replacement));
    area += 1;
    if (mv.is_relator) rel += 1;
  }
  return s.empty() && rel == r.rel_area && area == r.area;
}

bool verify_sandwich(const Word& w, const FillingResult& r, size_t M) {
  if (!(r.rel_area <= r.area)) return false;
  return r.area <= (M + 1) * r.rel_area + 2 * w.length();
}

IsolatedBoundReport verify_isolated_bound(const Word& cycle,
                                          const GroupBackend& b,
                                          const OmegaReport& omega,
                                          const FillBudget& budget) {
  FillingResult fr = fill(cycle, b, budget);
  IsolatedBoundReport rep;
  rep.rel_area = fr.rel_area;
  rep.bound = omega.M * fr.rel_area;

  PathInGraph path = trace(b.identity(), cycle, b);
  ComponentReport comps = components(path, b);
  for (const auto& c : comps.components) {
    if (!c.isolated) continue;
    ++rep.isolated_count;
    Elem label = component_label(path, c, b);
    std::vector<Elem> gens;
    for (uint32_t e : omega.per_peripheral[c.lambda])
      gens.push_back(
          b.evaluate(Word(std::vector<Letter>{Letter::h(c.lambda, e)})));
    auto d = subgroup_distances(b, gens, {label});
    if (!d[0])
      throw OmegaMembershipFails(b.elem_repr(label) + " (component at " +
                                 std::to_string(c.begin) + ", peripheral #" +
                                 std::to_string(c.lambda + 1) + ")");
    rep.component_lengths.push_back(*d[0]);
    rep.sum += *d[0];
  }
  rep.holds = rep.sum <= rep.bound;
  return rep;
}

std::vector<Word> enumerate_null_homotopic(size_t n, const GroupBackend& b) {
  auto alphabet = b.alphabet();
  std::vector<Word> out;
  // Depth-first over all words of length <= n, with running products.
  std::vector<size_t> choice;
  std::vector<Elem> prods{b.identity()};
  std::vector<Letter> letters;
  out.push_back(Word());  // the empty cycle
  for (;;) {
    if (choice.size() < n) {
      choice.push_back(0);
    } else {
      while (!choice.empty() && ++choice.back() >= alphabet.size()) {
        choice.pop_back();
        letters.pop_back();
        prods.pop_back();
      }
      if (choice.empty()) break;
      letters.pop_back();
      prods.pop_back();
    }
    const auto& [l, img] = alphabet[choice.back()];
    letters.push_back(l);
    prods.push_back(b.mul(prods.back(), img));
    if (prods.back() == b.identity()) out.push_back(Word(letters));
  }
  return out;
}

DehnSample dehn_sample(size_t n, const GroupBackend& b,
                       const FillBudget& budget) {
  DehnSample sample;
  sample.n = n;
  sample.max_area.assign(n + 1, 0);
  sample.max_rel_area.assign(n + 1, 0);

  // Fill one representative per cyclic-shift-and-inverse class; area is
  // invariant on the class (fill seeds all shifts; mirror symmetry of the
  // rule set covers the inverse).
  std::vector<Word> all = enumerate_null_homotopic(n, b);
  std::map<Word, Word> rep_of;  // class representative -> original
  const RelativePresentation& pres = b.presentation();
  for (const Word& w : all) {
    Word best = w;
    for (size_t k = 0; k < w.length(); ++k) {
      Word rot = cyclic_shift(w, k);
      if (rot < best) best = rot;
      Word irot = inverse(rot, pres);
      if (irot < best) best = irot;
    }
    if (!rep_of.count(best)) rep_of.emplace(best, w);
  }

  for (const auto& [rep, orig] : rep_of) {
    (void)rep;
    FillingResult fr = fill(orig, b, budget);
    ++sample.cycles_filled;
    size_t k = orig.length();
    if (fr.area > sample.max_area[k]) {
      sample.max_area[k] = fr.area;
      sample.witness_area = orig;
    }
    if (fr.rel_area > sample.max_rel_area[k]) {
      sample.max_rel_area[k] = fr.rel_area;
      sample.witness_rel_area = orig;
    }
  }
  for (size_t k = 1; k <= n; ++k) {
    sample.max_area[k] = std::max(sample.max_area[k], sample.max_area[k - 1]);
    sample.max_rel_area[k] =
        std::max(sample.max_rel_area[k], sample.max_rel_area[k - 1]);
    uint64_t need = (sample.max_rel_area[k] + k - 1) / k;  // ceil
    sample.c_hat = std::max(sample.c_hat, need);
  }
  return sample;
}

}  // namespace relhyp
