#ifndef RELHYP_BOUNDS_HPP_
#define RELHYP_BOUNDS_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "relhyp/backend.hpp"
#include "relhyp/presentation.hpp"

namespace relhyp {

// The symbolic value (2|X u Omega|)^exponent, optionally followed by a
// factorial. Exact materialization is gated; a log2 view is always
// available (for the factorial, a Stirling interval).
class BoundExpression {
 public:
  BoundExpression() = default;
  BoundExpression(uint64_t base, mpz_class exponent, bool factorial)
      : base_(base), exponent_(std::move(exponent)), factorial_(factorial) {}

  uint64_t base() const { return base_; }
  const mpz_class& exponent() const { return exponent_; }
  bool factorial() const { return factorial_; }

  // log2(base^exponent); relative error well below 1e-6.
  double log2_pre_factorial() const;

  // Stirling interval for log2((base^exponent)!); hi < 0 marks overflow of
  // the double range (the value itself is astronomically large).
  struct Log2Interval {
    double lo;
    double hi;
    bool overflow;
  };
  Log2Interval log2_with_factorial() const;

  // base^exponent as an integer; gated (default: value < 2^64).
  std::optional<mpz_class> exact_pre_factorial(
      double log2_gate = 64.0) const;
  // Full value with factorial; gated by pre-factorial < 2^64 and factorial
  // argument < 2^20. Lazy: only computed on request.
  std::optional<mpz_class> exact_value(double pre_gate = 64.0,
                                       uint64_t factorial_gate = 1u << 20) const;

  // True iff the bound is >= n. Never materializes large values.
  bool at_least(uint64_t n) const;

  std::string describe() const;

 private:
  uint64_t base_ = 0;
  mpz_class exponent_ = 0;
  bool factorial_ = false;
};

// K = (2|X u Omega|)^{2MC+1}; M clamped to >= 2 and C to >= 1 before
// evaluation (the clamps are visible in the report type below). Throws
// EmptyAlphabet when X u Omega is empty.
struct KReport {
  BoundExpression K;
  size_t alphabet;   // |X u Omega|
  size_t M_used;     // after clamping
  uint64_t C_used;   // after clamping
  bool M_clamped;
  bool C_clamped;
};
KReport compute_K(const RelativePresentation& p, const OmegaReport& omega,
                  uint64_t C);

// K as an exact integer (for the shrink-module inequalities).
mpz_class K_value(const RelativePresentation& p, const OmegaReport& omega,
                  uint64_t C);

// The order bound: (2|X u Omega|)^{(2MC+1)(4delta+2)^2}, a factorial on top
// unless all peripherals are torsion-free; the Lambda-empty branch gives
// (2|X|)^{4delta+2} with no factorial. delta is clamped to >= 1.
struct OrderBoundReport {
  BoundExpression bound;
  bool hyperbolic_branch;  // Lambda empty
  bool delta_clamped;
  size_t M_used;
  uint64_t C_used;
  uint64_t delta_used;
};
OrderBoundReport order_bound(const RelativePresentation& p,
                             const OmegaReport& omega, uint64_t C,
                             uint64_t delta, bool torsion_free_peripherals);

// Outcome of the order algorithm.
struct Order {
  uint64_t value;
};
struct CapExceeded {
  uint64_t cap;
  std::optional<BoundExpression> bound;  // empty when no finite bound exists
};
struct InfiniteCertified {
  BoundExpression bound;
};
using OrderResult = std::variant<Order, CapExceeded, InfiniteCertified>;

// Successive powers through the backend triviality oracle, maintaining the
// running product. The element must be non-parabolic (identity passes with
// order 1); a bound may be absent when the presentation certifies that no
// finite non-parabolic subgroup exists.
OrderResult element_order(const Word& w, const GroupBackend& b,
                          const std::optional<BoundExpression>& bound,
                          uint64_t cap = 1u << 20);

std::string order_result_to_string(const OrderResult& r);

}  // namespace relhyp

#endif  // RELHYP_BOUNDS_HPP_
