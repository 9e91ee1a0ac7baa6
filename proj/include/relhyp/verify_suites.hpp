#ifndef RELHYP_VERIFY_SUITES_HPP_
#define RELHYP_VERIFY_SUITES_HPP_

#include <string>
#include <vector>

#include "relhyp/backend.hpp"
#include "relhyp/filling.hpp"
#include "relhyp/presentation.hpp"

namespace relhyp {

// One verification row: a named exhaustive check with a pass flag and a
// short detail string (counts, worst slack).
struct CheckRow {
  std::string name;
  bool pass;
  std::string details;
};

struct SuiteReport {
  std::vector<CheckRow> rows;
  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
  void add(std::string name, bool pass, std::string details) {
    rows.push_back({std::move(name), pass, std::move(details)});
  }
};

struct SuiteParams {
  size_t max_len = 4;   // word-length cap for exhaustive sweeps
  size_t max_set = 4;   // set-size cap for the shrink sweeps
  size_t fill_len = 6;  // cycle-length cap for the filling sweeps
  size_t radius = 4;    // ball radius for the hyperbolicity probe
};

// All words over the backend's finite alphabet, of length <= n.
std::vector<Word> enumerate_words(size_t n, const GroupBackend& b);

SuiteReport run_words_suite(const GroupBackend& b, const SuiteParams& p);
SuiteReport run_filling_suite(const GroupBackend& b, const OmegaReport& omega,
                              const SuiteParams& p);
SuiteReport run_shrink_suite(const GroupBackend& b, const OmegaReport& omega,
                             uint64_t C, const SuiteParams& p);
SuiteReport run_bounds_suite(const GroupBackend& b, const OmegaReport& omega,
                             const SuiteParams& p);
SuiteReport run_hyperbolicity_suite(const GroupBackend& b,
                                    const SuiteParams& p);

}  // namespace relhyp

#endif  // RELHYP_VERIFY_SUITES_HPP_
