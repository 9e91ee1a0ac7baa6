#include "relhyp/verify_suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "relhyp/bounds.hpp"
#include "relhyp/cayley.hpp"
#include "relhyp/errors.hpp"
#include "relhyp/hyperbolicity.hpp"
#include "relhyp/reducedness.hpp"
#include "relhyp/shrink.hpp"

namespace relhyp {

std::vector<Word> enumerate_words(size_t n, const GroupBackend& b) {
  auto alphabet = b.alphabet();
  std::vector<Word> out{Word()};
  std::vector<Word> layer{Word()};
  for (size_t len = 1; len <= n; ++len) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (const auto& [l, img] : alphabet) {
        (void)img;
        Word e = w;
        e.push_back(l);
        next.push_back(e);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

namespace {

std::string counts(size_t checked, size_t violations) {
  std::ostringstream os;
  os << checked << " checked, " << violations << " violations";
  return os.str();
}

// Finite subgroup generated by a set of elements, or nullopt past the cap.
std::optional<std::vector<Elem>> closure_of(const GroupBackend& b,
                                            const std::vector<Elem>& gens,
                                            size_t cap = 512) {
  std::set<Elem> seen{b.identity()};
  std::vector<Elem> frontier{b.identity()};
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (Elem a : frontier) {
      for (Elem g : gens) {
        for (Elem p : {b.mul(a, g), b.mul(a, b.inv(g))}) {
          if (seen.insert(p).second) {
            if (seen.size() > cap) return std::nullopt;
            next.push_back(p);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return std::vector<Elem>(seen.begin(), seen.end());
}

// All size-<=k subsets of pool indices with pairwise distinct evaluations.
template <typename Fn>
void for_each_subset(const std::vector<Word>& pool, const GroupBackend& b,
                     size_t max_set, Fn&& fn) {
  std::vector<Elem> evals;
  for (const Word& w : pool) evals.push_back(b.evaluate(w));
  std::vector<size_t> pick;
  std::function<void(size_t)> rec = [&](size_t from) {
    if (!pick.empty()) fn(pick);
    if (pick.size() == max_set) return;
    for (size_t i = from; i < pool.size(); ++i) {
      bool dup = false;
      for (size_t p : pick)
        if (evals[p] == evals[i]) {
          dup = true;
          break;
        }
      if (dup) continue;
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

}  // namespace

SuiteReport run_words_suite(const GroupBackend& b, const SuiteParams& p) {
  const RelativePresentation& pres = b.presentation();
  SuiteReport rep;
  std::vector<Word> words = enumerate_words(p.max_len, b);

  size_t viol_reduce = 0, viol_syl = 0, viol_cyc = 0, viol_inv = 0;
  for (const Word& w : words) {
    Word r = reduce(w, pres);
    if (reduce(r, pres) != r || r.length() > w.length() ||
        b.evaluate(w) != b.evaluate(r))
      ++viol_reduce;
    for (const Syllable& s : syllables(r))
      if (s.kind == Syllable::Kind::HRun && s.length() != 1) ++viol_syl;
    Word wi = inverse(w, pres);
    if (inverse(wi, pres) != w || b.evaluate(wi) != b.inv(b.evaluate(w)))
      ++viol_inv;
    if (r == w) {
      // Cyclic reducedness matches "w^k stays reduced" for k <= 4.
      bool cyc = is_cyclically_reduced(w, pres);
      Word power = w;
      bool stable = true;
      for (int k = 2; k <= 4; ++k) {
        power = power * w;
        if (reduce(power, pres) != power) {
          stable = false;
          break;
        }
      }
      if (cyc != stable) ++viol_cyc;
    }
  }
  rep.add("reduce: idempotent, length-non-increasing, backend-equal",
          viol_reduce == 0, counts(words.size(), viol_reduce));
  rep.add("reduced words have singleton H-syllables", viol_syl == 0,
          counts(words.size(), viol_syl));
  rep.add("cyclically reduced iff powers stay reduced (k<=4)", viol_cyc == 0,
          counts(words.size(), viol_cyc));
  rep.add("inverse is an involution and matches the backend", viol_inv == 0,
          counts(words.size(), viol_inv));

  // Component connectivity: symmetric, and transitive per peripheral within
  // one path; components partition the H-letter positions.
  size_t viol_comp = 0, viol_lambda = 0, checked_lambda = 0;
  for (const Word& w : words) {
    PathInGraph path = trace(b.identity(), w, b);
    ComponentReport cr = components(path, b, false);
    std::set<size_t> hpos;
    for (const auto& c : cr.components)
      for (size_t k = 0; k < c.length; ++k) hpos.insert(c.begin + k);
    size_t expect = 0;
    for (const Letter& l : w)
      if (l.is_h()) ++expect;
    if (hpos.size() != expect) ++viol_comp;
    for (size_t a = 0; a < cr.components.size(); ++a)
      for (const auto& wit : cr.components[a].witnesses) {
        bool found = false;
        for (const auto& back : cr.components[wit.other].witnesses)
          if (back.other == a) found = true;
        if (!found) ++viol_comp;
      }
    // Transitivity within one lambda.
    for (size_t a = 0; a < cr.components.size(); ++a)
      for (const auto& w1 : cr.components[a].witnesses)
        for (const auto& w2 : cr.components[w1.other].witnesses) {
          if (w2.other == a) continue;
          bool direct = false;
          for (const auto& w3 : cr.components[a].witnesses)
            if (w3.other == w2.other) direct = true;
          if (!direct) ++viol_comp;
        }

    // The two Lambda-reducedness characterizations agree.
    if (is_h_reduced(w)) {
      ++checked_lambda;
      bool by_syllables = is_lambda_reduced(w, b);
      bool by_components = true;
      for (const auto& c : cr.components)
        if (!c.isolated) by_components = false;
      if (by_syllables != by_components) ++viol_lambda;
    }
  }
  rep.add("components partition H-positions; connectivity symmetric and "
          "transitive",
          viol_comp == 0, counts(words.size(), viol_comp));
  rep.add("Lambda-reduced: syllable and component characterizations agree",
          viol_lambda == 0, counts(checked_lambda, viol_lambda));

  // Geodesic words from the ball are reduced and have geodesic prefixes.
  size_t viol_geo = 0, ball_count = 0;
  try {
    for (const auto& [e, wit] : b.ball(p.radius)) {
      ++ball_count;
      if (reduce(wit, pres) != wit) ++viol_geo;
      if (b.relative_length(e).value != wit.length()) ++viol_geo;
      if (b.evaluate(wit) != e) ++viol_geo;
    }
    rep.add("ball witnesses are reduced geodesics", viol_geo == 0,
            counts(ball_count, viol_geo));
  } catch (const BallUnavailable&) {
    rep.add("ball witnesses are reduced geodesics", true, "skipped (no ball)");
  }
  return rep;
}

SuiteReport run_filling_suite(const GroupBackend& b, const OmegaReport& omega,
                              const SuiteParams& p) {
  const RelativePresentation& pres = b.presentation();
  SuiteReport rep;
  std::vector<Word> cycles = enumerate_null_homotopic(p.fill_len, b);

  // One representative per shift-and-inverse class.
  std::map<Word, Word> reps;
  for (const Word& w : cycles) {
    Word best = w;
    for (size_t k = 0; k < w.length(); ++k) {
      Word rot = cyclic_shift(w, k);
      if (rot < best) best = rot;
      Word irot = inverse(rot, pres);
      if (irot < best) best = irot;
    }
    reps.emplace(best, w);
  }

  size_t viol_zero = 0, viol_replay = 0, viol_sandwich = 0, viol_lemma = 0;
  size_t inexact = 0;
  size_t worst_slack = SIZE_MAX;
  for (const auto& [rep_word, w] : reps) {
    (void)rep_word;
    FillingResult fr = fill(w, b);
    if (!fr.exact) ++inexact;
    if ((fr.rel_area == 0) != (reduce(w, pres).empty())) ++viol_zero;
    if (!replay_script(w, fr, pres)) ++viol_replay;
    if (!verify_sandwich(w, fr, omega.M)) ++viol_sandwich;
    IsolatedBoundReport ib = verify_isolated_bound(w, b, omega);
    if (!ib.holds) ++viol_lemma;
    if (ib.isolated_count > 0)
      worst_slack = std::min(worst_slack, ib.bound - ib.sum);
  }
  std::ostringstream slack;
  slack << counts(reps.size(), viol_lemma);
  if (worst_slack != SIZE_MAX) slack << ", worst slack " << worst_slack;
  rep.add("fill: rel_area = 0 iff trivial in the free product",
          viol_zero == 0, counts(reps.size(), viol_zero));
  rep.add("fill: scripts replay to the empty word", viol_replay == 0,
          counts(reps.size(), viol_replay));
  rep.add("area sandwich rel <= area <= (M+1) rel + 2 len",
          viol_sandwich == 0, counts(reps.size(), viol_sandwich));
  rep.add("isolated components: Omega membership and M*Area^rel bound",
          viol_lemma == 0, slack.str());
  rep.add("fill: all fillings exact", inexact == 0,
          counts(reps.size(), inexact));

  DehnSample ds = dehn_sample(std::min<size_t>(p.fill_len, 6), b);
  bool c_ok = true;
  std::ostringstream cd;
  cd << "c_hat = " << ds.c_hat;
  if (pres.constants) {
    c_ok = ds.c_hat <= pres.constants->C;
    cd << ", certified C = " << pres.constants->C;
  }
  rep.add("dehn sample: certified C consistent at this scale", c_ok, cd.str());
  return rep;
}

SuiteReport run_shrink_suite(const GroupBackend& b, const OmegaReport& omega,
                             uint64_t C, const SuiteParams& p) {
  const RelativePresentation& pres = b.presentation();
  SuiteReport rep;
  std::vector<Word> words = enumerate_words(p.max_len, b);

  // Pool for the cyclically-reduced lemma.
  std::vector<Word> cyc_pool;
  for (const Word& w : words) {
    Elem e = b.evaluate(w);
    RelLength rl = b.relative_length(e);
    if (!rl.exact || rl.value != w.length()) continue;
    if (!is_cyclically_reduced(w, pres)) continue;
    cyc_pool.push_back(w);
  }
  size_t checked = 0, viol = 0;
  for_each_subset(cyc_pool, b, p.max_set, [&](const std::vector<size_t>& pick) {
    if (pick.size() == 1 && cyc_pool[pick[0]].empty()) return;  // S = {eps}
    std::vector<Elem> gens;
    NormedWordSet s;
    for (size_t i : pick) {
      s.words.push_back(cyc_pool[i]);
      gens.push_back(b.evaluate(cyc_pool[i]));
    }
    auto closure = closure_of(b, gens);
    if (!closure) return;  // no finite subgroup contains the set
    s.target = SubgroupHandle{&b, *closure, std::nullopt};
    ++checked;
    ShrinkOutcome out = shrink_cyclic(s, b, omega, C);
    if (!(out.guarantee.norm_dropped && out.guarantee.floor_met &&
          out.guarantee.conjugation_verified && out.guarantee.u_norm_ok))
      ++viol;
  });
  rep.add("cyclic-set lemma: norm drop, conjugacy, floor |S|/K^N - 1",
          viol == 0, counts(checked, viol));

  // Pool for the same-endpoints lemma, per peripheral.
  size_t checked_p = 0, viol_p = 0;
  for (uint32_t i = 0; i < pres.num_peripherals(); ++i) {
    std::vector<Word> pool;
    for (const Word& w : words) {
      if (w.length() < 3) continue;
      if (!(w.first().is_h() && w.first().lambda() == i && w.last().is_h() &&
            w.last().lambda() == i))
        continue;
      RelLength rl = b.relative_length(b.evaluate(w));
      if (!rl.exact || rl.value != w.length()) continue;
      pool.push_back(w);
    }
    for_each_subset(pool, b, p.max_set, [&](const std::vector<size_t>& pick) {
      std::vector<Elem> gens;
      NormedWordSet s;
      for (size_t k : pick) {
        s.words.push_back(pool[k]);
        gens.push_back(b.evaluate(pool[k]));
      }
      auto closure = closure_of(b, gens);
      if (!closure) return;
      s.target = SubgroupHandle{&b, *closure, std::nullopt};
      ++checked_p;
      ShrinkOutcome out = shrink_peripheral_endpoints(s, i, b, omega, C);
      if (!(out.guarantee.norm_dropped && out.guarantee.floor_met &&
            out.guarantee.conjugation_verified && out.U.length() == 1))
        ++viol_p;
    });
  }
  rep.add("same-endpoints lemma: norm drop, conjugacy, floor |S|/(4K^{2N})",
          viol_p == 0, counts(checked_p, viol_p));

  // Partition floor on every subset up to size 6 (finite backends).
  if (auto elems = b.list_elements()) {
    size_t checked_s = 0, viol_s = 0;
    const size_t cap = std::min<size_t>(elems->size(), 6);
    std::vector<size_t> pick;
    std::function<void(size_t)> rec = [&](size_t from) {
      if (!pick.empty()) {
        std::vector<Elem> sub;
        for (size_t i : pick) sub.push_back((*elems)[i]);
        ++checked_s;
        PartitionResult pr = partition_special(sub, b);
        if (!pr.floor_met) ++viol_s;
      }
      if (pick.size() == cap) return;
      for (size_t i = from; i < elems->size(); ++i) {
        pick.push_back(i);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
    rep.add("partition: largest class meets the 1/(2m+1) floor", viol_s == 0,
            counts(checked_s, viol_s));

    // Descent with the two Claims on every non-parabolic subgroup.
    size_t checked_d = 0, viol_d = 0, parabolic = 0;
    uint64_t delta = pres.constants ? pres.constants->delta : 1;
    OrderBoundReport ob = order_bound(pres, omega, C, delta, false);
    for (const SubgroupHandle& sub : b.list_subgroups()) {
      try {
        DescentTrace t = descend(sub, b, omega, C);
        ++checked_d;
        bool ok = t.claim1_holds && t.claim2_holds && t.conjugator_length_ok;
        for (const DescentStep& st : t.steps) {
          if (!st.partition.floor_met) ok = false;
          if (st.shrink &&
              !(st.shrink->guarantee.norm_dropped &&
                st.shrink->guarantee.floor_met &&
                st.shrink->guarantee.conjugation_verified))
            ok = false;
        }
        if (!ob.bound.at_least(sub.elements.size())) ok = false;
        if (!ok) ++viol_d;
      } catch (const ParabolicSubgroup&) {
        ++parabolic;
      }
    }
    std::ostringstream det;
    det << counts(checked_d, viol_d) << ", " << parabolic
        << " parabolic subgroups skipped";
    rep.add("descent: step floors, Claims 1-2, |H| within the order bound",
            viol_d == 0, det.str());
  }
  return rep;
}

SuiteReport run_bounds_suite(const GroupBackend& b, const OmegaReport& omega,
                             const SuiteParams& p) {
  (void)p;
  const RelativePresentation& pres = b.presentation();
  SuiteReport rep;

  // Order algorithm vs table order.
  if (auto elems = b.list_elements()) {
    uint64_t C = pres.constants ? pres.constants->C : 1;
    uint64_t delta = pres.constants ? pres.constants->delta : 1;
    std::optional<BoundExpression> bound;
    try {
      bound = order_bound(pres, omega, C, delta, false).bound;
    } catch (const EmptyAlphabet&) {
    }
    size_t checked = 0, viol = 0, parabolic = 0;
    for (Elem e : *elems) {
      uint64_t table_order = 1;
      Elem x = e;
      while (x != b.identity()) {
        x = b.mul(x, e);
        ++table_order;
      }
      try {
        OrderResult r = element_order(geodesic_word(e, b), b, bound);
        ++checked;
        if (!std::holds_alternative<Order>(r) ||
            std::get<Order>(r).value != table_order)
          ++viol;
      } catch (const ParabolicInput&) {
        ++parabolic;
      }
    }
    std::ostringstream det;
    det << counts(checked, viol) << ", " << parabolic << " gated as parabolic";
    rep.add("element_order agrees with the multiplication table", viol == 0,
            det.str());
  }

  // K and the bound depend only on cardinalities: reordering relators or
  // renaming generators changes nothing.
  bool invariant = true;
  try {
    uint64_t C = pres.constants ? pres.constants->C : 1;
    KReport base = compute_K(pres, omega, C);
    RelativePresentation shuffled = pres;
    std::reverse(shuffled.relators.begin(), shuffled.relators.end());
    OmegaReport om2 = extract_omega(shuffled);
    KReport again = compute_K(shuffled, om2, C);
    invariant = base.K.base() == again.K.base() &&
                base.K.exponent() == again.K.exponent();
    rep.add("K invariant under relator reordering", invariant, "");
  } catch (const EmptyAlphabet&) {
    rep.add("K invariant under relator reordering", true,
            "skipped (empty X u Omega)");
  }

  // The torsion-free bound divides the factorial bound.
  try {
    uint64_t C = pres.constants ? pres.constants->C : 1;
    uint64_t delta = pres.constants ? pres.constants->delta : 1;
    OrderBoundReport with = order_bound(pres, omega, C, delta, false);
    OrderBoundReport without = order_bound(pres, omega, C, delta, true);
    auto wf = with.bound.log2_with_factorial();
    bool ok = without.bound.log2_pre_factorial() <=
              (wf.overflow ? HUGE_VAL : wf.hi) + 1e-9;
    rep.add("pre-factorial bound below the factorial bound", ok, "");
  } catch (const EmptyAlphabet&) {
    rep.add("pre-factorial bound below the factorial bound", true,
            "skipped (empty X u Omega)");
  }
  return rep;
}

SuiteReport run_hyperbolicity_suite(const GroupBackend& b,
                                    const SuiteParams& p) {
  SuiteReport rep;
  bool monotone = true;
  size_t last = 0;
  std::ostringstream seq;
  for (size_t r = 0; r <= p.radius; ++r) {
    DeltaCertificate cert = estimate_delta(b, r);
    if (cert.delta_ball < last) monotone = false;
    if (cert.delta_ball > r) monotone = false;
    last = cert.delta_ball;
    if (r) seq << " ";
    seq << cert.delta_ball;
  }
  rep.add("delta_ball monotone in the radius and bounded by it", monotone,
          "deltas: " + seq.str());

  if (auto elems = b.list_elements()) {
    (void)elems;
    // delta from the probe at the full diameter, then Theorem-style search.
    size_t diameter = 0;
    for (Elem e : *b.list_elements())
      diameter = std::max(diameter, b.relative_length(e).value);
    size_t delta = std::max<size_t>(1, estimate_delta(b, diameter).delta_ball);
    size_t checked = 0, failed = 0;
    for (const SubgroupHandle& sub : b.list_subgroups()) {
      ++checked;
      try {
        Elem g = conjugate_into_ball(sub, b, delta);
        SubgroupHandle conj = conjugate_subgroup(sub, g);
        for (Elem e : conj.elements)
          if (b.relative_length(e).value > 4 * delta + 1) ++failed;
      } catch (const NotFound&) {
        ++failed;
      }
    }
    std::ostringstream det;
    det << counts(checked, failed) << ", delta = " << delta;
    rep.add("finite subgroups conjugate into the 4*delta+1 ball", failed == 0,
            det.str());
  }
  return rep;
}

}  // namespace relhyp
