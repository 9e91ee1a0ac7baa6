#ifndef RELHYP_REDUCEDNESS_HPP_
#define RELHYP_REDUCEDNESS_HPP_

#include <optional>
#include <vector>

#include "relhyp/backend.hpp"
#include "relhyp/presentation.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

// BFS distances inside the subgroup generated by `gens` (symmetrized), in
// the word metric over `gens`. Stops once every target is resolved; targets
// outside the subgroup come back empty. Throws NotComputable if the search
// cannot settle the targets within the expansion cap.
std::vector<std::optional<size_t>> subgroup_distances(
    const GroupBackend& b, const std::vector<Elem>& gens,
    const std::vector<Elem>& targets, size_t expansion_cap = 1000000);

// True iff w (with all H-syllables of length 1) has, for every pair of
// same-peripheral syllables, an in-between segment evaluating outside that
// peripheral. Adjacent same-peripheral letters raise NotReduced; free
// x x^-1 pairs are permitted, so squares of cyclically reduced words can be
// tested directly.
bool is_lambda_reduced(const Word& w, const GroupBackend& b);

// Cyclically reduced with Lambda-reduced square; the empty word qualifies.
bool is_doubly_lambda_reduced(const Word& w, const GroupBackend& b);

// Certificate that the conjugating word of a shortening lies in <X u Omega>
// with controlled length.
struct OmegaLengthCertificate {
  size_t u_length_x_omega;  // measured |U|_{X u Omega}
  size_t bound;             // (2MC+1)||w||
  bool holds;
  bool membership_ok;       // U in <X u Omega>
};

struct ShorteningResult {
  enum class Case { NotCyclic, ConnectedBack, ConnectedForward };

  Word U;   // nonempty terminal subword of the input
  Word W1;  // shorter conjugate: W1 = U w U^-1 in G
  Case tag;
  // Connected component pair in w^2 (letter indices; second is in [0,||w||)),
  // meaningful for the two connected cases.
  size_t first_index = 0;
  size_t second_index = 0;
  std::optional<OmegaLengthCertificate> certificate;
};

// Constructive shortening of a geodesic, non-doubly-Lambda-reduced word.
// Requires w not a single H-letter. Throws NotGeodesic,
// AlreadyDoublyReduced, PreconditionViolated.
ShorteningResult shorten(const Word& w, const GroupBackend& b,
                         const OmegaReport& omega,
                         std::optional<uint64_t> C = std::nullopt);

// Iterates shorten (re-taking geodesic representatives) until the word is
// doubly Lambda-reduced or a single H-letter; conjugacy is verified on the
// backend at every step. Terminates in at most ||w|| steps.
struct ShorteningTrace {
  std::vector<ShorteningResult> steps;
  Word final_word;
  Elem conjugator;  // final = conjugator * w * conjugator^-1 in G
  bool terminal_is_h_letter;
  bool conjugacy_verified;
};
ShorteningTrace shorten_to_doubly_reduced(const Word& w, const GroupBackend& b,
                                          const OmegaReport& omega);

// Verification of the two length estimates for a doubly Lambda-reduced word
// with finite-order image: |f|_{X u Omega} <= (2MC+1)||W|| and
// sum |U_i|_Omega <= 2MC||W|| over the H-syllables U_i.
struct OsinEstimateReport {
  uint64_t order;
  bool f_in_span;            // f in <X u Omega>
  size_t f_length;           // |f|_{X u Omega}
  size_t bound_f;            // (2MC+1)||W||
  bool first_holds;
  std::vector<size_t> syllable_lengths;  // |U_i|_Omega
  bool syllables_in_span;
  size_t syllable_sum;
  size_t bound_syllables;    // 2MC||W||
  bool second_holds;
};
OsinEstimateReport check_osin_estimates(const Word& w, const GroupBackend& b,
                                        const OmegaReport& omega, uint64_t C);

}  // namespace relhyp

#endif  // RELHYP_REDUCEDNESS_HPP_
