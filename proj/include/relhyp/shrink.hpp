#ifndef RELHYP_SHRINK_HPP_
#define RELHYP_SHRINK_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relhyp/backend.hpp"
#include "relhyp/presentation.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

// A finite word set that bijectively represents a subset of a finite
// subgroup: distinct words evaluate to distinct elements, all inside the
// target. The norm is the maximum word length (nullopt for the empty set).
struct NormedWordSet {
  std::vector<Word> words;
  SubgroupHandle target;

  std::optional<size_t> norm() const {
    if (words.empty()) return std::nullopt;
    size_t n = 0;
    for (const Word& w : words) n = std::max(n, w.length());
    return n;
  }
};

// Throws PreconditionViolated if the set does not bijectively represent a
// subset of its target subgroup.
void validate_bijective(const NormedWordSet& s, const GroupBackend& b);

struct ShrinkGuarantee {
  bool norm_dropped;
  mpq_class cardinality_floor;  // the lemma's lower bound on |S1|
  bool floor_met;
  bool conjugation_verified;  // every S1 element equals U s U^-1
  bool u_norm_ok;             // ||U|| < N(S) (cyclic lemma only)
};

struct ShrinkOutcome {
  enum class Case {
    EarlyOut,       // |S| <= K^{N(S)}: U = eps, S1 = empty
    Bucketed,       // cyclic lemma deep branch
    CancelFront,    // peripheral lemma case 1 (V+ W- = 1)
    CancelBack,     // peripheral lemma case 2 (W+ V- = 1)
    SquareReduced,  // peripheral lemma case 3.1
    SquareUnreduced // peripheral lemma case 3.2
  };
  Word U;
  NormedWordSet S1;
  Case tag;
  ShrinkGuarantee guarantee;
};

// The cyclically-reduced-set lemma: requires a nonempty set different from
// {eps} of geodesic, cyclically reduced words. `force_full` skips the
// early-out to exercise the bucketing branch (testing aid); conclusions are
// verified either way.
ShrinkOutcome shrink_cyclic(const NormedWordSet& s, const GroupBackend& b,
                            const OmegaReport& omega, uint64_t C,
                            bool force_full = false);

// The same-peripheral-endpoints lemma: every word geodesic, of length >= 3,
// with first and last letters in H_i \ {1}.
ShrinkOutcome shrink_peripheral_endpoints(const NormedWordSet& s, uint32_t i,
                                          const GroupBackend& b,
                                          const OmegaReport& omega, uint64_t C);

// Classification of a finite subset of G by the shape of the deterministic
// geodesics: 0-special (cyclically reduced), i-special (length >= 3 with
// H_i endpoints) or inside a peripheral. Returns the largest class, which
// always covers at least |S|/(2m+1).
struct PartitionResult {
  enum class Tag { Special0, SpecialI, MemberOfH };
  Tag tag;
  uint32_t index = 0;  // i for SpecialI, j for MemberOfH
  std::vector<Elem> cls;
  size_t input_size = 0;
  bool floor_met = false;
};
PartitionResult partition_special(const std::vector<Elem>& elements,
                                  const GroupBackend& b);

// One descent step record.
struct DescentStep {
  PartitionResult partition;
  std::optional<ShrinkOutcome> shrink;  // absent for terminal member-of-H steps
  size_t set_size_after;
};

// Full descent trace for a finite non-parabolic subgroup, ending when the
// surviving set lies in a peripheral or is exhausted, plus the two index
// and core cardinality checks with the accumulated conjugator.
struct DescentTrace {
  std::vector<DescentStep> steps;
  Elem conjugator;
  size_t ell;  // N(H)
  bool terminal_in_peripheral;
  uint32_t terminal_j;  // peripheral of the claim-1 check
  // Claim 1: |H^g : (H^g cap H_j)| <= K^{l^2+2l} and |g| <= l(l-1)/2.
  mpz_class index_value;
  mpz_class index_bound;
  bool claim1_holds;
  size_t conjugator_length;
  bool conjugator_length_ok;
  // Claim 2: |N| <= K^{l^2+1} + 1 for the normal core N of H^g cap H_j.
  size_t core_order;
  mpz_class core_bound;
  bool claim2_holds;
};
DescentTrace descend(const SubgroupHandle& h, const GroupBackend& b,
                     const OmegaReport& omega, uint64_t C);

}  // namespace relhyp

#endif  // RELHYP_SHRINK_HPP_
