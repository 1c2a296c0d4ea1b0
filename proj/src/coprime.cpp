#include "stagger/coprime.hpp"

#include <algorithm>
#include <string>

#include "stagger/core.hpp"
#include "stagger/errors.hpp"
#include "stagger/interval_ptas.hpp"
#include "stagger/nested.hpp"
#include "stagger/numtheory.hpp"

namespace stagger {

PsiSequence psi_sequence(const Rat& eps, int upto, long max_bits) {
  if (upto < 0) throw InputError("psi_sequence: upto must be >= 0");
  if (eps <= 0 || eps > 1) throw InputError("psi_sequence: eps must be in (0,1]");
  BigInt b = rat_ceil(Rat(1) / eps);
  PsiSequence seq;
  seq.values.push_back(1);
  if (upto >= 1) seq.values.push_back(b);
  while (static_cast<int>(seq.values.size()) <= upto) {
    const BigInt& prev = seq.values.back();
    // Psi_m = 4^prev; refuse to materialize once the bit length (2*prev+1)
    // leaves the budget
    if (prev * 2 >= max_bits) {
      seq.saturated = true;
      break;
    }
    BigInt next;
    mpz_ui_pow_ui(next.get_mpz_t(), 4, prev.get_ui());
    seq.values.push_back(next);
  }
  return seq;
}

void validate_coprime(const Instance& instance) {
  for (std::size_t i = 0; i < instance.size(); ++i) {
    for (std::size_t j = i + 1; j < instance.size(); ++j) {
      BigInt g;
      BigInt a(static_cast<long>(instance.item(i).interval));
      BigInt b(static_cast<long>(instance.item(j).interval));
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      if (g != 1)
        throw InputError("intervals not pairwise coprime: T_" + std::to_string(i + 1) +
                         "=" + a.get_str() + " and T_" + std::to_string(j + 1) + "=" +
                         b.get_str());
    }
  }
}

PsiDecomposition coprime_decompose(const Instance& instance, const Rat& eps) {
  if (instance.mode() != Mode::Continuous)
    throw InputError("coprime_decompose: Continuous mode required");
  validate_coprime(instance);

  long b = rat_ceil(Rat(1) / effective_eps(eps)).get_si();
  PsiDecomposition out;
  out.psi = psi_sequence(eps, b + 1);

  // bin_of(i) = m with T_i in [Psi_{m-1}, Psi_m); entries past the computed
  // prefix are empty because every representable interval is below them
  auto bin_of = [&](std::int64_t t) {
    long m = 1;
    while (m < static_cast<long>(out.psi.values.size()) && out.psi.values[m] <= t) ++m;
    return m;
  };

  BigInt h_sigma = instance.h_sigma();
  Rat cap = eps * Rat(h_sigma);
  for (long m_hat = 2; m_hat <= b + 1; ++m_hat) {
    BigInt h_bin = 0;
    for (std::size_t i = 0; i < instance.size(); ++i)
      if (bin_of(instance.item(i).interval) == m_hat)
        h_bin += static_cast<long>(instance.item(i).quantity);
    if (Rat(h_bin) <= cap) {
      out.m_hat = m_hat;
      break;
    }
  }
  if (out.m_hat == 0)
    throw InputError("coprime_decompose: no admissible bin index");  // unreachable by pigeonhole

  for (std::size_t i = 0; i < instance.size(); ++i) {
    long m = bin_of(instance.item(i).interval);
    if (m < out.m_hat)
      out.s_minus.push_back(i);
    else if (m == out.m_hat)
      out.s_hat.push_back(i);
    else
      out.s_plus.push_back(i);
  }
  return out;
}

WitnessResult coprime_lb_witness(const Instance& instance, const ShiftVector& shifts) {
  validate_coprime(instance);
  std::vector<Congruence> system;
  for (std::size_t i = 0; i < instance.size(); ++i)
    system.push_back(Congruence{rat_ceil(shifts[i]),
                                BigInt(static_cast<long>(instance.item(i).interval))});
  BigInt t = crt_solve(system);
  Rat level = total_level(instance, shifts, Rat(t));
  return WitnessResult{t, level};
}

SchemeResult coprime_solve(const Instance& instance, const Rat& eps,
                           const Budgets& budgets, CoprimeReport* report) {
  PsiDecomposition decomp = coprime_decompose(instance, eps);

  CoprimeReport rep;
  rep.m_hat = decomp.m_hat;
  rep.n_minus = decomp.s_minus.size();
  rep.n_hat = decomp.s_hat.size();
  rep.n_plus = decomp.s_plus.size();
  rep.saturated = decomp.psi.saturated;
  Rat h_sigma(instance.h_sigma());
  rep.lower_bound = h_sigma / 2;
  Rat witness_bound = (Rat(1) - make_rat(1, instance.t_min())) * h_sigma;
  if (witness_bound > rep.lower_bound) rep.lower_bound = witness_bound;

  std::vector<Rat> shifts(instance.size(), Rat(0));
  if (!decomp.s_minus.empty()) {
    Instance sub = instance.restrict_to(decomp.s_minus);
    Instance scaled = continuous_to_discrete(sub, eps);
    SchemeResult inner = interval_ptas_solve(scaled, eps, budgets);
    std::int64_t b = rat_ceil(Rat(1) / eps).get_si();
    for (std::size_t j = 0; j < decomp.s_minus.size(); ++j)
      shifts[decomp.s_minus[j]] = inner.shifts[j] / static_cast<long>(b);
  }

  ShiftVector sv(instance, shifts);
  PeakResult pk = peak_events(instance, sv, budgets);
  if (report) *report = rep;
  return SchemeResult{sv.shifts(), pk};
}

}  // namespace stagger
