#include "stagger/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stagger/core.hpp"
#include "stagger/errors.hpp"
#include "stagger/numtheory.hpp"

namespace stagger {

Instance gen_sample_complexity(std::int64_t n, const Budgets& budgets) {
  if (n < 2) throw InputError("gen_sample_complexity: n must be >= 2");
  std::vector<std::int64_t> found;
  std::int64_t lo = n, span = std::max<std::int64_t>(64, 4 * n);
  while (static_cast<std::int64_t>(found.size()) < n) {
    for (std::int64_t p : primes_in_range(lo, lo + span, budgets)) {
      found.push_back(p);
      if (static_cast<std::int64_t>(found.size()) == n) break;
    }
    lo += span + 1;
  }
  std::vector<Item> items;
  for (std::int64_t p : found) items.push_back(Item{p, 1});
  return Instance(std::move(items), Mode::Discrete);
}

namespace {

BigInt mod_bigint(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

SamplingEstimate sampling_estimate(const Instance& instance, const ShiftVector& shifts,
                                   long m_samples, const Rat& threshold, RngStream& rng,
                                   std::vector<std::vector<double>>* per_item_levels) {
  if (m_samples < 1) throw InputError("sampling_estimate: need at least one sample");
  BigInt lambda = instance.cycle_length();
  SamplingEstimate out;
  if (per_item_levels) per_item_levels->assign(instance.size(), {});
  for (long m = 0; m < m_samples; ++m) {
    BigInt x = rng.below_big(lambda);
    Rat level(0);
    for (std::size_t i = 0; i < instance.size(); ++i) {
      Rat li = item_level(instance.item(i), shifts[i], Rat(x));
      level += li;
      if (per_item_levels) (*per_item_levels)[i].push_back(li.get_d());
    }
    if (level >= threshold) ++out.exceed_count;
    if (out.levels.empty() || level > out.estimate) out.estimate = level;
    out.levels.push_back(level);
  }
  out.exceed_fraction = make_rat(out.exceed_count, m_samples);
  return out;
}

SparseFamily sparse_family(std::int64_t q, long r, long count) {
  if (!is_prime(q)) throw InputError("sparse_family: q must be prime");
  if (r < 2 || r > q) throw InputError("sparse_family: need 2 <= r <= q");
  BigInt max_count;
  mpz_ui_pow_ui(max_count.get_mpz_t(), static_cast<unsigned long>(q),
                static_cast<unsigned long>(r));
  if (count < 0 || BigInt(count) > max_count)
    throw InputError("sparse_family: count exceeds q^r");

  SparseFamily fam;
  fam.q = q;
  fam.r = r;
  // the index's base-q digits are the polynomial's coefficients, constant
  // term fastest, so the first q subsets come from constant polynomials
  for (long idx = 0; idx < count; ++idx) {
    std::vector<std::int64_t> coeff(r, 0);
    long rest = idx;
    for (long j = 0; j < r; ++j) {
      coeff[j] = rest % q;
      rest /= q;
    }
    std::vector<long> subset;
    for (std::int64_t x = 0; x < q; ++x) {
      std::int64_t y = 0;
      for (long j = r - 1; j >= 0; --j) y = (y * x + coeff[j]) % q;
      subset.push_back(static_cast<long>(x * q + y));
    }
    fam.subsets.push_back(std::move(subset));
  }
  return fam;
}

BigInt FactoredInstance::interval(std::size_t i) const {
  BigInt t = 1;
  for (long k : items[i]) t *= static_cast<long>(primes[k]);
  return t;
}

BigInt FactoredInstance::cycle_length() const {
  std::vector<bool> used(primes.size(), false);
  for (const auto& item : items)
    for (long k : item) used[k] = true;
  BigInt l = 1;
  for (std::size_t k = 0; k < primes.size(); ++k)
    if (used[k]) l *= static_cast<long>(primes[k]);
  return l;
}

SamplingEstimate sampling_estimate(const FactoredInstance& instance,
                                   const std::vector<BigInt>& shifts, long m_samples,
                                   const Rat& threshold, RngStream& rng) {
  if (m_samples < 1) throw InputError("sampling_estimate: need at least one sample");
  if (shifts.size() != instance.size())
    throw InputError("sampling_estimate: shift length mismatch");
  BigInt lambda = instance.cycle_length();
  std::vector<BigInt> intervals;
  for (std::size_t i = 0; i < instance.size(); ++i) intervals.push_back(instance.interval(i));
  SamplingEstimate out;
  for (long m = 0; m < m_samples; ++m) {
    BigInt x = rng.below_big(lambda);
    Rat level(0);
    for (std::size_t i = 0; i < instance.size(); ++i) {
      BigInt r = mod_bigint(x - shifts[i], intervals[i]);
      level += Rat(1) - make_rat(r, intervals[i]);
    }
    if (level >= threshold) ++out.exceed_count;
    if (out.levels.empty() || level > out.estimate) out.estimate = level;
    out.levels.push_back(level);
  }
  out.exceed_fraction = make_rat(out.exceed_count, m_samples);
  return out;
}

GroupSyncInstance gen_groupsync(std::int64_t q, std::optional<long> count_override,
                                const Budgets& budgets) {
  if (!is_prime(q)) throw InputError("gen_groupsync: q must be prime");
  std::int64_t k = q * q;
  double ln_k = std::log(static_cast<double>(k));
  long required = static_cast<long>(std::ceil(12.0 * k * ln_k * ln_k));
  long count = count_override.value_or(required);
  if (!count_override && BigInt(required) > BigInt(q) * q * q)
    throw InputError("gen_groupsync: required family size " + std::to_string(required) +
                     " exceeds q^3; pass a count override for structural study");

  std::int64_t hi = static_cast<std::int64_t>(2.0 * k * ln_k) + 1;
  std::vector<std::int64_t> primes = primes_in_range(k, hi, budgets);
  if (static_cast<std::int64_t>(primes.size()) < k)
    throw InputError("gen_groupsync: fewer than K primes in [K, 2K ln K]");
  primes.resize(k);

  GroupSyncInstance gs;
  gs.family = sparse_family(q, 3, count);
  gs.primes = primes;
  gs.instance.primes = primes;
  for (const auto& subset : gs.family.subsets) gs.instance.items.push_back(subset);
  return gs;
}

BigInt small_remainders(const UniqueDivisorSystem& system) {
  std::size_t l_count = system.p.size();
  if (system.n.size() != l_count || system.tau.size() != l_count)
    throw InputError("small_remainders: ragged system");

  std::vector<BigInt> p_pow(l_count);  // p_l^alpha_l
  for (std::size_t l = 0; l < l_count; ++l) {
    if (!is_prime(system.p[l]))
      throw InputError("small_remainders: " + std::to_string(system.p[l]) + " is not prime");
    BigInt p(static_cast<long>(system.p[l]));
    if (system.n[l] % p != 0)
      throw InputError("small_remainders: prime " + p.get_str() +
                       " does not divide its modulus");
    for (std::size_t o = 0; o < l_count; ++o)
      if (o != l && system.n[o] % p == 0)
        throw InputError("small_remainders: prime " + p.get_str() +
                         " divides more than one modulus");
    BigInt pw = p;
    while (system.n[l] % (pw * p) == 0) pw *= p;
    p_pow[l] = pw;
  }

  // t must hit, mod n_l, the unique multiple of w_l = n_l / p_l^alpha_l
  // inside [tau_l, tau_l + w_l); splitting that target by CRT gives the
  // residue mod p_l^alpha_l, while t = 0 mod everything else.
  BigInt l_all = 1;
  for (std::size_t l = 0; l < l_count; ++l)
    mpz_lcm(l_all.get_mpz_t(), l_all.get_mpz_t(), system.n[l].get_mpz_t());
  BigInt denom = 1;
  for (const BigInt& pw : p_pow) denom *= pw;
  BigInt big_m = l_all / denom;  // LCM(n) / prod p_l^alpha_l

  std::vector<Congruence> crt;
  crt.push_back(Congruence{BigInt(0), big_m});
  for (std::size_t l = 0; l < l_count; ++l) {
    BigInt w = system.n[l] / p_pow[l];
    BigInt tau = mod_bigint(system.tau[l], system.n[l]);
    BigInt target;  // ceil(tau / w) * w, the aligned epoch at or after tau
    mpz_cdiv_q(target.get_mpz_t(), tau.get_mpz_t(), w.get_mpz_t());
    target *= w;
    crt.push_back(Congruence{mod_bigint(target, p_pow[l]), p_pow[l]});
  }
  return crt_solve(crt);
}

ProbeResult subset_gap_probe(const GroupSyncInstance& gs,
                             const std::vector<std::size_t>& subset,
                             const std::vector<BigInt>& shifts) {
  if (shifts.size() != subset.size())
    throw InputError("subset_gap_probe: shift length mismatch");
  if (2 * static_cast<std::int64_t>(subset.size()) > gs.family.q)
    throw InputError("subset_gap_probe: probe set larger than sqrt(K)/2");

  UniqueDivisorSystem system;
  for (std::size_t s = 0; s < subset.size(); ++s) {
    const auto& item = gs.instance.items[subset[s]];
    std::optional<long> priv;
    for (long k : item) {
      bool shared = false;
      for (std::size_t o = 0; o < subset.size() && !shared; ++o)
        if (o != s) {
          const auto& other = gs.instance.items[subset[o]];
          shared = std::find(other.begin(), other.end(), k) != other.end();
        }
      if (!shared) {
        priv = k;
        break;
      }
    }
    if (!priv)
      throw InputError("subset_gap_probe: item " + std::to_string(subset[s]) +
                       " has no private prime in the probe set");
    system.p.push_back(gs.primes[*priv]);
    system.n.push_back(gs.instance.interval(subset[s]));
    system.tau.push_back(shifts[s]);
  }

  BigInt t = small_remainders(system);
  Rat level(0);
  for (std::size_t s = 0; s < subset.size(); ++s) {
    BigInt r = mod_bigint(t - shifts[s], system.n[s]);
    level += Rat(1) - make_rat(r, system.n[s]);
  }
  return ProbeResult{t, level};
}

}  // namespace stagger
