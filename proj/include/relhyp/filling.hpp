#ifndef RELHYP_FILLING_HPP_
#define RELHYP_FILLING_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relhyp/backend.hpp"
#include "relhyp/presentation.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

struct FillBudget {
  size_t max_area = 1u << 20;
  size_t max_rel_area = 1u << 20;
  // 0 means the default ||w|| + 2M.
  size_t max_length = 0;
};

// One cell application: replace `matched` at `pos` by `replacement`, then
// cancel x x^-1 pairs. R-moves carry the relator coordinates; Q-moves the
// peripheral index.
struct FillMove {
  bool is_relator;
  size_t relator = 0;
  int sign = 1;
  size_t shift = 0;
  size_t split = 0;
  uint32_t lambda = 0;
  size_t pos = 0;
  Word matched;
  Word replacement;
};

struct FillingResult {
  size_t rel_area = 0;
  size_t area = 0;
  bool exact = false;
  size_t shift_used = 0;        // the cyclic shift of the input that was filled
  std::vector<FillMove> script; // replays from cyclic_shift(w, shift_used) to eps
};

// Minimal filling of a null-homotopic word: uniform-cost search over
// x-x^-1-reduced words, minimizing rel_area and breaking ties by area. The
// search is seeded with every cyclic shift of the input. Throws
// NotNullHomotopic, BudgetExceeded, NotComputable (oracle peripherals).
FillingResult fill(const Word& w, const GroupBackend& b, const FillBudget& budget = {});

// Replays a script; returns false if a move does not match or the final
// word is not empty.
bool replay_script(const Word& w, const FillingResult& r,
                   const RelativePresentation& p);

// Checks rel_area <= area <= (M+1) rel_area + 2 ||w||.
bool verify_sandwich(const Word& w, const FillingResult& r, size_t M);

// Lemma-style bound for isolated components of a null-homotopic cycle:
// every isolated component label lies in <Omega_lambda> and the sum of the
// Omega-lengths is at most M * rel_area.
struct IsolatedBoundReport {
  std::vector<size_t> component_lengths;  // |Lab_G(p_i)|_{Omega_lambda(i)}
  size_t sum = 0;
  size_t bound = 0;  // M * rel_area
  size_t rel_area = 0;
  bool holds = false;
  size_t isolated_count = 0;
};
IsolatedBoundReport verify_isolated_bound(const Word& cycle,
                                          const GroupBackend& b,
                                          const OmegaReport& omega,
                                          const FillBudget& budget = {});

struct DehnSample {
  size_t n = 0;
  std::vector<size_t> max_area;      // index k = maximum over length <= k
  std::vector<size_t> max_rel_area;  // cumulative, monotone
  Word witness_area;
  Word witness_rel_area;
  uint64_t c_hat = 0;  // least integer with max_rel_area(k) <= c_hat * k
  size_t cycles_filled = 0;
};

// Maxima of area and relative area over all null-homotopic cycle words of
// length <= n, plus the empirical isoperimetric lower bound c_hat.
DehnSample dehn_sample(size_t n, const GroupBackend& b,
                       const FillBudget& budget = {});

// All null-homotopic words of length <= n over the finite letter alphabet.
std::vector<Word> enumerate_null_homotopic(size_t n, const GroupBackend& b);

}  // namespace relhyp

#endif  // RELHYP_FILLING_HPP_
