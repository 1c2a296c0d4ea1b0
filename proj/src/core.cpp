#include "stagger/core.hpp"

#include <mpfr.h>

#include <cmath>

#include "stagger/errors.hpp"

namespace stagger {

Rat item_level(const Item& item, const Rat& shift, const Rat& t) {
  Rat period(static_cast<long>(item.interval));
  // Elapsed time since the last order epoch in (-inf, t].
  Rat elapsed = rat_mod(t - shift, period);
  return Rat(static_cast<long>(item.quantity)) * (1 - elapsed / period);
}

Rat total_level(const Instance& instance, const ShiftVector& shifts, const Rat& t) {
  if (shifts.size() != instance.size())
    throw InputError("total_level: shift vector length mismatch");
  Rat sum = 0;
  for (std::size_t i = 0; i < instance.size(); ++i)
    sum += item_level(instance.item(i), shifts[i], t);
  return sum;
}

Rat average_space_bound(const Instance& instance) {
  if (instance.mode() == Mode::Continuous) return Rat(instance.h_sigma()) / 2;
  Rat sum = 0;
  for (const Item& it : instance.items()) {
    Rat h(static_cast<long>(it.quantity));
    sum += h * (1 + make_rat(1, it.interval));
  }
  return sum / 2;
}

ShiftVector random_shift_vector(const Instance& instance, RngStream& rng) {
  if (instance.mode() != Mode::Discrete)
    throw InputError("random_shift_vector: Discrete mode required");
  std::vector<Rat> shifts;
  shifts.reserve(instance.size());
  for (const Item& it : instance.items())
    shifts.emplace_back(static_cast<long>(
        rng.below(static_cast<std::uint64_t>(it.interval))));
  return ShiftVector(instance, std::move(shifts));
}

namespace {

// Compares ln(lambda) against the rational rhs with certified directed
// rounding; ln of an integer >= 2 is irrational, so the comparison always
// resolves at some precision.
bool ln_strictly_below(const BigInt& lambda, const Rat& rhs) {
  if (lambda == 1) return Rat(0) < rhs;
  for (mpfr_prec_t prec = 128;; prec *= 2) {
    mpfr_t lam, lo, hi, bound;
    mpfr_inits2(prec, lam, lo, hi, bound, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_z(lam, lambda.get_mpz_t(), MPFR_RNDN);
    mpfr_log(lo, lam, MPFR_RNDD);
    mpfr_log(hi, lam, MPFR_RNDU);
    mpfr_set_q(bound, rhs.get_mpq_t(), MPFR_RNDD);
    bool decided_below = mpfr_cmp(hi, bound) < 0;
    mpfr_set_q(bound, rhs.get_mpq_t(), MPFR_RNDU);
    bool decided_above = mpfr_cmp(lo, bound) >= 0;
    mpfr_clears(lam, lo, hi, bound, static_cast<mpfr_ptr>(nullptr));
    if (decided_below) return true;
    if (decided_above) return false;
    if (prec > 1 << 20)
      throw ResourceError("random_regime_check: comparison did not certify");
  }
}

}  // namespace

RegimeReport random_regime_check(const Instance& instance, const Rat& eps) {
  if (eps <= 0 || eps >= 1) throw InputError("random_regime_check: eps must be in (0,1)");
  BigInt lambda = instance.cycle_length();
  Rat rhs = eps * eps / 6 * Rat(instance.h_sigma()) / Rat(static_cast<long>(instance.h_max()));

  RegimeReport report;
  report.lambda = lambda;
  report.rhs = rhs;
  report.holds = ln_strictly_below(lambda, rhs);
  // Double-precision rendering for the report only.
  signed long exp2;
  double mant = mpz_get_d_2exp(&exp2, lambda.get_mpz_t());
  report.ln_lambda = std::log(mant) + static_cast<double>(exp2) * 0.6931471805599453;
  return report;
}

}  // namespace stagger
