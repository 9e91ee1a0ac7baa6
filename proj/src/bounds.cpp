#include "relhyp/bounds.hpp"

#include <cmath>
#include <sstream>

#include "relhyp/errors.hpp"

namespace relhyp {

double BoundExpression::log2_pre_factorial() const {
  return exponent_.get_d() * std::log2((double)base_);
}

BoundExpression::Log2Interval BoundExpression::log2_with_factorial() const {
  double L = log2_pre_factorial();  // log2(n), n = base^exponent
  if (L > 1000.0) return {0.0, -1.0, true};  // n beyond the double range
  double n = std::pow(2.0, L);
  if (n < 1.5) return {0.0, 0.0, false};  // 1! = 1
  // Stirling: ln n! in [n ln n - n + ln(2 pi n)/2, same + 1/(12n)].
  static const double kLn2 = std::log(2.0);
  double lo = (n * std::log(n) - n + 0.5 * std::log(2.0 * M_PI * n)) / kLn2;
  double hi = lo + 1.0 / (12.0 * n) / kLn2;
  if (!std::isfinite(lo) || !std::isfinite(hi)) return {0.0, -1.0, true};
  return {lo, hi, false};
}

std::optional<mpz_class> BoundExpression::exact_pre_factorial(
    double log2_gate) const {
  if (log2_pre_factorial() >= log2_gate) return std::nullopt;
  if (!exponent_.fits_ulong_p()) return std::nullopt;
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), base_, exponent_.get_ui());
  return v;
}

std::optional<mpz_class> BoundExpression::exact_value(
    double pre_gate, uint64_t factorial_gate) const {
  auto pre = exact_pre_factorial(pre_gate);
  if (!pre) return std::nullopt;
  if (!factorial_) return pre;
  if (*pre >= factorial_gate) return std::nullopt;
  mpz_class v;
  mpz_fac_ui(v.get_mpz_t(), pre->get_ui());
  return v;
}

bool BoundExpression::at_least(uint64_t n) const {
  if (n == 0) return true;
  // The bound is base^exponent (then factorial, which only increases it
  // since base^exponent >= 2 whenever the expression is well formed).
  if (log2_pre_factorial() >= 64.0) return true;
  auto pre = exact_pre_factorial(65.0);
  if (!pre) return true;
  if (!factorial_) return *pre >= n;
  if (*pre >= 21) return true;  // 21! > 2^64
  mpz_class v;
  mpz_fac_ui(v.get_mpz_t(), pre->get_ui());
  return v >= n;
}

std::string BoundExpression::describe() const {
  std::ostringstream os;
  os << base_ << "^" << exponent_.get_str();
  if (factorial_) os << " factorial";
  return os.str();
}

static size_t alphabet_size(const RelativePresentation& p,
                            const OmegaReport& omega) {
  return p.x_generators.size() + omega.omega_size;
}

KReport compute_K(const RelativePresentation& p, const OmegaReport& omega,
                  uint64_t C) {
  KReport rep;
  rep.alphabet = alphabet_size(p, omega);
  if (rep.alphabet == 0) throw EmptyAlphabet();
  rep.M_clamped = omega.M < 2;
  rep.M_used = rep.M_clamped ? 2 : omega.M;
  rep.C_clamped = C < 1;
  rep.C_used = rep.C_clamped ? 1 : C;
  mpz_class exp = 2 * mpz_class((unsigned long)rep.M_used) *
                      mpz_class((unsigned long)rep.C_used) +
                  1;
  rep.K = BoundExpression(2 * rep.alphabet, exp, false);
  return rep;
}

mpz_class K_value(const RelativePresentation& p, const OmegaReport& omega,
                  uint64_t C) {
  KReport rep = compute_K(p, omega, C);
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), rep.K.base(), rep.K.exponent().get_ui());
  return v;
}

OrderBoundReport order_bound(const RelativePresentation& p,
                             const OmegaReport& omega, uint64_t C,
                             uint64_t delta, bool torsion_free_peripherals) {
  OrderBoundReport rep;
  rep.delta_clamped = delta < 1;
  rep.delta_used = rep.delta_clamped ? 1 : delta;
  if (p.num_peripherals() == 0) {
    if (p.x_generators.empty()) throw EmptyAlphabet();
    rep.hyperbolic_branch = true;
    rep.M_used = omega.M;
    rep.C_used = C;
    rep.bound = BoundExpression(2 * p.x_generators.size(),
                                mpz_class(4 * (unsigned long)rep.delta_used + 2),
                                false);
    return rep;
  }
  KReport k = compute_K(p, omega, C);
  rep.hyperbolic_branch = false;
  rep.M_used = k.M_used;
  rep.C_used = k.C_used;
  mpz_class side = 4 * mpz_class((unsigned long)rep.delta_used) + 2;
  rep.bound = BoundExpression(k.K.base(), k.K.exponent() * side * side,
                              !torsion_free_peripherals);
  return rep;
}

OrderResult element_order(const Word& w, const GroupBackend& b,
                          const std::optional<BoundExpression>& bound,
                          uint64_t cap) {
  Elem g = b.evaluate(w);
  if (g == b.identity()) return Order{1};
  for (uint32_t lam = 0; lam < b.presentation().num_peripherals(); ++lam)
    if (b.membership(g, lam)) throw ParabolicInput(lam);

  Elem power = g;
  for (uint64_t i = 1; i <= cap; ++i) {
    if (bound && !bound->at_least(i)) {
      // All powers up to the bound are nontrivial: infinite order.
      return InfiniteCertified{*bound};
    }
    if (power == b.identity()) return Order{i};
    power = b.mul(power, g);
  }
  return CapExceeded{cap, bound};
}

std::string order_result_to_string(const OrderResult& r) {
  std::ostringstream os;
  if (std::holds_alternative<Order>(r)) {
    os << "order " << std::get<Order>(r).value;
  } else if (std::holds_alternative<CapExceeded>(r)) {
    const auto& c = std::get<CapExceeded>(r);
    os << "cap " << c.cap << " exceeded";
  } else {
    os << "infinite (certified against "
       << std::get<InfiniteCertified>(r).bound.describe() << ")";
  }
  return os.str();
}

}  // namespace relhyp
