#include "relhyp/shrink.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "relhyp/bounds.hpp"
#include "relhyp/cayley.hpp"
#include "relhyp/errors.hpp"
#include "relhyp/reducedness.hpp"

namespace relhyp {

void validate_bijective(const NormedWordSet& s, const GroupBackend& b) {
  std::set<Elem> seen;
  for (const Word& w : s.words) {
    Elem e = b.evaluate(w);
    if (!seen.insert(e).second)
      throw PreconditionViolated(word_to_string(w, b.presentation()),
                                 "two words represent the same element");
    if (!s.target.contains(e))
      throw PreconditionViolated(word_to_string(w, b.presentation()),
                                 "element outside the target subgroup");
  }
}

namespace {

mpz_class k_power(const GroupBackend& b, const OmegaReport& omega, uint64_t C,
                  const mpz_class& exponent) {
  mpz_class K = K_value(b.presentation(), omega, C);
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), K.get_mpz_t(), exponent.get_ui());
  return out;
}

void require_geodesic(const Word& w, const GroupBackend& b) {
  RelLength rl = b.relative_length(b.evaluate(w));
  if (!rl.exact || rl.value != w.length())
    throw PreconditionViolated(word_to_string(w, b.presentation()),
                               "not geodesic");
}

ShrinkGuarantee check_outcome(const NormedWordSet& s,
                              const std::vector<Word>& originals,
                              const ShrinkOutcome& out, const GroupBackend& b,
                              const mpq_class& floor, bool u_norm_required) {
  ShrinkGuarantee g;
  auto ns = s.norm();
  auto n1 = out.S1.norm();
  g.norm_dropped = !n1 || (ns && *n1 < *ns);
  g.cardinality_floor = floor;
  g.floor_met = mpq_class((unsigned long)out.S1.words.size()) >= floor;
  g.u_norm_ok = !u_norm_required || (ns && out.U.length() < *ns);
  g.conjugation_verified = true;
  Elem u = b.evaluate(out.U);
  for (size_t i = 0; i < out.S1.words.size(); ++i) {
    Elem lhs = b.evaluate(out.S1.words[i]);
    Elem rhs = b.mul(b.mul(u, b.evaluate(originals[i])), b.inv(u));
    if (lhs != rhs) g.conjugation_verified = false;
  }
  return g;
}

}  // namespace

ShrinkOutcome shrink_cyclic(const NormedWordSet& s, const GroupBackend& b,
                            const OmegaReport& omega, uint64_t C,
                            bool force_full) {
  const RelativePresentation& pres = b.presentation();
  if (s.words.empty())
    throw PreconditionViolated("S", "must be nonempty");
  if (s.words.size() == 1 && s.words[0].empty())
    throw PreconditionViolated("S", "must differ from {eps}");
  validate_bijective(s, b);
  for (const Word& w : s.words) {
    require_geodesic(w, b);
    if (!is_cyclically_reduced(w, pres))
      throw PreconditionViolated(word_to_string(w, pres),
                                 "not cyclically reduced");
  }
  const size_t N = *s.norm();
  mpz_class kn = k_power(b, omega, C, mpz_class((unsigned long)N));
  mpq_class floor =
      mpq_class((unsigned long)s.words.size()) / mpq_class(kn) - 1;

  ShrinkOutcome out;
  auto early_out = [&]() {
    out.U = Word();
    out.S1.words.clear();
    out.S1.target = s.target;
    out.tag = ShrinkOutcome::Case::EarlyOut;
    out.guarantee = check_outcome(s, {}, out, b, floor, true);
    return out;
  };
  if (!force_full && mpz_class((unsigned long)s.words.size()) <= kn)
    return early_out();

  // Split off the words that are not doubly Lambda-reduced and shorten each.
  std::vector<Word> awords;
  for (const Word& w : s.words)
    if (!is_doubly_lambda_reduced(w, b)) awords.push_back(w);
  if (awords.empty()) return early_out();

  struct Shortened {
    Word original, tw, wdot;
  };
  std::vector<Shortened> shortened;
  for (const Word& w : awords) {
    ShorteningResult r = shorten(w, b, omega, C);
    shortened.push_back({w, r.U, r.W1});
  }

  // Bucket by the group element of the terminal subword T_W.
  std::map<Elem, std::vector<size_t>, std::function<bool(Elem, Elem)>> buckets(
      [&b](Elem x, Elem y) { return b.elem_less(x, y); });
  for (size_t i = 0; i < shortened.size(); ++i)
    buckets[b.evaluate(shortened[i].tw)].push_back(i);
  const std::vector<size_t>* best = nullptr;
  for (const auto& [key, idxs] : buckets) {
    (void)key;
    if (!best || idxs.size() > best->size()) best = &idxs;
  }

  // U is the canonically least T_W of the bucket; all of them represent the
  // same element, which is what the conjugation uses.
  std::vector<Word> originals;
  out.U = shortened[(*best)[0]].tw;
  for (size_t i : *best)
    if (shortened[i].tw < out.U) out.U = shortened[i].tw;
  for (size_t i : *best) {
    out.S1.words.push_back(shortened[i].wdot);
    originals.push_back(shortened[i].original);
  }
  out.S1.target = conjugate_subgroup(s.target, b.evaluate(out.U));
  out.tag = ShrinkOutcome::Case::Bucketed;
  out.guarantee = check_outcome(s, originals, out, b, floor, true);
  return out;
}

ShrinkOutcome shrink_peripheral_endpoints(const NormedWordSet& s, uint32_t i,
                                          const GroupBackend& b,
                                          const OmegaReport& omega,
                                          uint64_t C) {
  const RelativePresentation& pres = b.presentation();
  const Peripheral& peri = pres.peripheral(i);
  if (s.words.empty()) throw PreconditionViolated("S", "must be nonempty");
  validate_bijective(s, b);
  for (const Word& w : s.words) {
    require_geodesic(w, b);
    if (w.length() < 3)
      throw PreconditionViolated(word_to_string(w, pres), "length < 3");
    if (!(w.first().is_h() && w.first().lambda() == i && w.last().is_h() &&
          w.last().lambda() == i))
      throw PreconditionViolated(word_to_string(w, pres),
                                 "endpoints not in H_i");
  }
  const size_t N = *s.norm();
  mpz_class k2n = k_power(b, omega, C, mpz_class(2 * (unsigned long)N));
  mpq_class floor = mpq_class((unsigned long)s.words.size()) /
                    (mpq_class(4) * mpq_class(k2n));

  // Pivot: the minimal-length word, ties by shortlex.
  Word pivot = s.words[0];
  for (const Word& w : s.words)
    if (w < pivot) pivot = w;

  std::vector<Word> a1, a2, a3;
  for (const Word& w : s.words) {
    bool front = peri.is_identity(peri.multiply(pivot.last().elem, w.first().elem));
    bool back = peri.is_identity(peri.multiply(w.last().elem, pivot.first().elem));
    if (front) a1.push_back(w);
    if (back) a2.push_back(w);
    if (!front && !back) a3.push_back(w);
  }

  ShrinkOutcome out;
  std::vector<Word> chosen;
  std::vector<Word> originals;

  if (4 * a1.size() >= s.words.size()) {
    out.tag = ShrinkOutcome::Case::CancelFront;
    out.U = Word(std::vector<Letter>{pivot.last()});
    chosen = a1;
  } else if (4 * a2.size() >= s.words.size()) {
    out.tag = ShrinkOutcome::Case::CancelBack;
    out.U = Word(std::vector<Letter>{inverse_letter(pivot.first(), pres)});
    chosen = a2;
  } else {
    // Case 3: form W* = P w1..wn Q u1..uk and split by whether its square
    // stays Lambda-reduced.
    std::vector<Word> a3r, a3u;
    for (const Word& w : a3) {
      uint32_t P = peri.multiply(pivot.last().elem, w.first().elem);
      uint32_t Q = peri.multiply(w.last().elem, pivot.first().elem);
      Word wstar(std::vector<Letter>{Letter::h(i, P)});
      wstar.append(w.subword(1, w.length() - 1));
      wstar.push_back(Letter::h(i, Q));
      wstar.append(pivot.subword(1, pivot.length() - 1));
      if (is_lambda_reduced(wstar * wstar, b))
        a3r.push_back(w);
      else
        a3u.push_back(w);
    }
    bool reduced_half = 2 * a3r.size() >= a3.size();
    out.tag = reduced_half ? ShrinkOutcome::Case::SquareReduced
                           : ShrinkOutcome::Case::SquareUnreduced;
    const std::vector<Word>& pool = reduced_half ? a3r : a3u;
    // Bucket by the terminal letter and conjugate by it.
    std::map<uint32_t, std::vector<Word>> buckets;
    for (const Word& w : pool) buckets[w.last().elem].push_back(w);
    const std::vector<Word>* best = nullptr;
    uint32_t best_key = 0;
    for (const auto& [key, ws] : buckets) {
      if (!best || ws.size() > best->size()) {
        best = &ws;
        best_key = key;
      }
    }
    out.U = Word(std::vector<Letter>{Letter::h(i, best_key)});
    chosen = *best;
  }

  for (const Word& w : chosen) {
    out.S1.words.push_back(reduce(out.U * w * inverse(out.U, pres), pres));
    originals.push_back(w);
  }
  out.S1.target = conjugate_subgroup(s.target, b.evaluate(out.U));
  out.guarantee = check_outcome(s, originals, out, b, floor, false);
  return out;
}

PartitionResult partition_special(const std::vector<Elem>& elements,
                                  const GroupBackend& b) {
  const RelativePresentation& pres = b.presentation();
  const uint32_t m = (uint32_t)pres.num_peripherals();

  PartitionResult res;
  res.input_size = elements.size();
  if (elements.empty()) {
    res.tag = PartitionResult::Tag::Special0;
    res.floor_met = true;
    return res;
  }

  std::vector<std::vector<Elem>> special(m + 1);  // [0] plus i = 1..m
  std::vector<std::vector<Elem>> member(m);
  for (Elem g : elements) {
    Word w = geodesic_word(g, b);
    bool tagged = false;
    if (is_cyclically_reduced(w, pres)) {
      special[0].push_back(g);
      tagged = true;
    }
    if (w.length() >= 3 && w.first().is_h() && w.last().is_h() &&
        w.first().lambda() == w.last().lambda()) {
      special[w.first().lambda() + 1].push_back(g);
      tagged = true;
    }
    for (uint32_t j = 0; j < m; ++j) {
      if (b.membership(g, j)) {
        member[j].push_back(g);
        tagged = true;
      }
    }
    if (!tagged)
      throw NotComputable("element escapes the (2m+1)-cover (internal)");
  }

  size_t best_size = 0;
  for (uint32_t c = 0; c <= m; ++c) {
    if (special[c].size() > best_size) {
      best_size = special[c].size();
      res.tag = c == 0 ? PartitionResult::Tag::Special0
                       : PartitionResult::Tag::SpecialI;
      res.index = c == 0 ? 0 : c - 1;
      res.cls = special[c];
    }
  }
  for (uint32_t j = 0; j < m; ++j) {
    if (member[j].size() > best_size) {
      best_size = member[j].size();
      res.tag = PartitionResult::Tag::MemberOfH;
      res.index = j;
      res.cls = member[j];
    }
  }
  res.floor_met = res.cls.size() * (2 * m + 1) >= elements.size();
  return res;
}

DescentTrace descend(const SubgroupHandle& h, const GroupBackend& b,
                     const OmegaReport& omega, uint64_t C) {
  const RelativePresentation& pres = b.presentation();
  const uint32_t m = (uint32_t)pres.num_peripherals();
  auto all = b.list_elements();
  if (!all) throw NotComputable("descent needs a finite backend");

  // Exhaustive non-parabolicity check: no conjugate lies inside a
  // peripheral. The trivial subgroup is admitted as a degenerate success.
  if (h.elements.size() > 1) {
    for (Elem g : *all) {
      SubgroupHandle conj = conjugate_subgroup(h, g);
      for (uint32_t j = 0; j < m; ++j) {
        bool inside = true;
        for (Elem e : conj.elements)
          if (!b.membership(e, j)) {
            inside = false;
            break;
          }
        if (inside) throw ParabolicSubgroup();
      }
    }
  }

  DescentTrace trace;
  trace.conjugator = b.identity();
  trace.ell = 0;
  for (Elem e : h.elements)
    trace.ell = std::max(trace.ell, b.relative_length(e).value);

  std::vector<Elem> cur(h.elements);
  trace.terminal_in_peripheral = false;
  trace.terminal_j = 0;

  size_t guard = 0;
  while (!cur.empty()) {
    if (++guard > trace.ell + 4)
      throw NotComputable("descent failed to terminate (internal)");
    // Terminal: the surviving set lies inside a peripheral.
    bool inside = false;
    for (uint32_t j = 0; j < m && !inside; ++j) {
      inside = true;
      for (Elem e : cur)
        if (!b.membership(e, j)) {
          inside = false;
          break;
        }
      if (inside) {
        trace.terminal_in_peripheral = true;
        trace.terminal_j = j;
      }
    }
    if (inside) break;

    DescentStep step;
    step.partition = partition_special(cur, b);
    SubgroupHandle target = conjugate_subgroup(h, trace.conjugator);

    if (step.partition.tag == PartitionResult::Tag::MemberOfH) {
      cur = step.partition.cls;
      step.set_size_after = cur.size();
      trace.steps.push_back(std::move(step));
      continue;  // next iteration hits the terminal check
    }

    NormedWordSet s;
    s.target = target;
    for (Elem g : step.partition.cls) s.words.push_back(geodesic_word(g, b));

    if (step.partition.tag == PartitionResult::Tag::Special0) {
      // A 0-special class of only the identity is already peripheral.
      if (s.words.size() == 1 && s.words[0].empty()) {
        cur = step.partition.cls;
        step.set_size_after = cur.size();
        trace.steps.push_back(std::move(step));
        break;
      }
      step.shrink = shrink_cyclic(s, b, omega, C);
    } else {
      step.shrink = shrink_peripheral_endpoints(s, step.partition.index, b,
                                                omega, C);
    }
    trace.conjugator = b.mul(b.evaluate(step.shrink->U), trace.conjugator);
    cur.clear();
    for (const Word& w : step.shrink->S1.words) cur.push_back(b.evaluate(w));
    std::sort(cur.begin(), cur.end());
    cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
    step.set_size_after = cur.size();
    trace.steps.push_back(std::move(step));
  }
  if (!cur.empty() && !trace.terminal_in_peripheral) {
    // Loop left a set already inside a peripheral via the member branch.
    for (uint32_t j = 0; j < m; ++j) {
      bool inside = true;
      for (Elem e : cur)
        if (!b.membership(e, j)) {
          inside = false;
          break;
        }
      if (inside) {
        trace.terminal_in_peripheral = true;
        trace.terminal_j = j;
        break;
      }
    }
  }

  // Claim checks with the accumulated conjugator.
  SubgroupHandle hg = conjugate_subgroup(h, trace.conjugator);
  trace.conjugator_length = b.relative_length(trace.conjugator).value;
  trace.conjugator_length_ok =
      2 * trace.conjugator_length <= trace.ell * (trace.ell - 1);

  auto intersection_with = [&](uint32_t j) {
    std::vector<Elem> out;
    for (Elem e : hg.elements)
      if (b.membership(e, j)) out.push_back(e);
    return out;
  };
  // Pick j: the terminal peripheral when the descent ended inside one,
  // otherwise the index minimizer.
  std::optional<uint32_t> best_j;
  size_t best_index = 0;
  for (uint32_t j = 0; j < m; ++j) {
    size_t inter = intersection_with(j).size();
    size_t index = hg.elements.size() / inter;
    if (!best_j || index < best_index) {
      best_j = j;
      best_index = index;
    }
  }
  if (trace.terminal_in_peripheral) {
    best_j = trace.terminal_j;
    best_index =
        hg.elements.size() / intersection_with(trace.terminal_j).size();
  }
  if (!best_j) throw NotComputable("presentation has no peripherals");
  trace.terminal_j = *best_j;
  trace.index_value = (unsigned long)best_index;
  trace.index_bound = k_power(
      b, omega, C,
      mpz_class((unsigned long)(trace.ell * trace.ell + 2 * trace.ell)));
  trace.claim1_holds = trace.index_value <= trace.index_bound;

  // Normal core of H^g cap H_j inside H^g.
  std::vector<Elem> inter = intersection_with(*best_j);
  std::set<Elem> core(inter.begin(), inter.end());
  for (Elem x : hg.elements) {
    std::set<Elem> conj;
    Elem xi = b.inv(x);
    for (Elem e : inter) conj.insert(b.mul(b.mul(x, e), xi));
    std::set<Elem> keep;
    for (Elem e : core)
      if (conj.count(e)) keep.insert(e);
    core = std::move(keep);
  }
  trace.core_order = core.size();
  trace.core_bound =
      k_power(b, omega, C,
              mpz_class((unsigned long)(trace.ell * trace.ell + 1))) +
      1;
  trace.claim2_holds =
      mpz_class((unsigned long)trace.core_order) <= trace.core_bound;
  return trace;
}

}  // namespace relhyp
