#include "stagger/peak.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "stagger/errors.hpp"

namespace stagger {

namespace {

using i128 = __int128;

BigInt to_big(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt hi(static_cast<unsigned long>(u >> 64));
  BigInt out = (hi << 64) + BigInt(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  return neg ? BigInt(-out) : out;
}

// Integer-scaled scan state: levels are multiplied by Lambda so that the
// per-step drains H_i * Lambda / T_i are integers.
struct ScanSetup {
  std::int64_t lambda;
  std::vector<std::int64_t> t;
  std::vector<i128> slope;  // H_i * Lambda / T_i
  i128 top;                 // H_Sigma * Lambda = max conceivable scaled level
};

ScanSetup make_scan_setup(const Instance& instance, const Budgets& budgets) {
  if (instance.mode() != Mode::Discrete)
    throw InputError("peak_scan: Discrete mode required");
  BigInt lambda = instance.cycle_length();
  if (lambda > budgets.scan)
    throw ResourceError("peak_scan: Lambda " + lambda.get_str() + " exceeds scan budget " +
                        std::to_string(budgets.scan));
  BigInt magnitude = instance.h_sigma() * lambda;
  if (mpz_sizeinbase(magnitude.get_mpz_t(), 2) > 120)
    throw ResourceError("peak_scan: scaled magnitude too large for fast path");

  ScanSetup s;
  s.lambda = lambda.get_si();
  s.top = 0;
  for (const Item& it : instance.items()) {
    s.t.push_back(it.interval);
    i128 sl = static_cast<i128>(it.quantity) * (s.lambda / it.interval);
    s.slope.push_back(sl);
    s.top += sl * it.interval;
  }
  return s;
}

struct ScanResult {
  i128 max_scaled;
  std::int64_t argmax;
};

// Full scan over t in [0, Lambda). When abort_at is set, bails out as soon
// as some level reaches abort_at (used for pruning in brute_optimum).
std::optional<ScanResult> scan_scaled(const ScanSetup& s,
                                      const std::vector<std::int64_t>& taus,
                                      std::optional<i128> abort_at = std::nullopt) {
  std::size_t n = s.t.size();
  // r_i = (t - tau_i) mod T_i, maintained incrementally; scaled level is
  // top - sum_i slope_i * r_i.
  std::vector<std::int64_t> r(n);
  i128 deficit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t ri = (0 - taus[i]) % s.t[i];
    if (ri < 0) ri += s.t[i];
    r[i] = ri;
    deficit += s.slope[i] * ri;
  }
  i128 best = -1;
  std::int64_t arg = 0;
  for (std::int64_t t = 0; t < s.lambda; ++t) {
    i128 level = s.top - deficit;
    if (abort_at && level >= *abort_at) return std::nullopt;
    if (level > best) {
      best = level;
      arg = t;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (++r[i] == s.t[i]) {
        r[i] = 0;
        deficit -= s.slope[i] * (s.t[i] - 1);
      } else {
        deficit += s.slope[i];
      }
    }
  }
  return ScanResult{best, arg};
}

std::vector<std::int64_t> integer_taus(const ShiftVector& shifts) {
  std::vector<std::int64_t> taus;
  taus.reserve(shifts.size());
  for (const Rat& s : shifts.shifts()) {
    if (s.get_den() != 1) throw InputError("expected integer shifts in Discrete mode");
    taus.push_back(s.get_num().get_si());
  }
  return taus;
}

}  // namespace

PeakResult peak_scan(const Instance& instance, const ShiftVector& shifts,
                     const Budgets& budgets) {
  if (shifts.size() != instance.size()) throw InputError("peak_scan: shift length mismatch");
  ScanSetup s = make_scan_setup(instance, budgets);
  auto res = scan_scaled(s, integer_taus(shifts));
  return PeakResult{make_rat(to_big(res->max_scaled), BigInt(static_cast<long>(s.lambda))),
                    Rat(static_cast<long>(res->argmax)), PeakEngine::Scan};
}

PeakResult peak_events(const Instance& instance, const ShiftVector& shifts,
                       const Budgets& budgets) {
  if (shifts.size() != instance.size())
    throw InputError("peak_events: shift length mismatch");
  BigInt lambda = instance.cycle_length();
  BigInt epoch_count = 0;
  for (const Item& it : instance.items())
    epoch_count += lambda / static_cast<long>(it.interval);
  if (epoch_count > budgets.events)
    throw ResourceError("peak_events: epoch count " + epoch_count.get_str() +
                        " exceeds events budget " + std::to_string(budgets.events));

  std::vector<Rat> epochs;
  epochs.reserve(epoch_count.get_ui());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const Item& it = instance.item(i);
    BigInt reps = lambda / static_cast<long>(it.interval);
    Rat epoch = shifts[i];
    for (BigInt m = 0; m < reps; ++m) {
      epochs.push_back(epoch);
      epoch += static_cast<long>(it.interval);
    }
  }
  std::sort(epochs.begin(), epochs.end());
  epochs.erase(std::unique(epochs.begin(), epochs.end()), epochs.end());

  Rat best = -1, arg = 0;
  for (const Rat& t : epochs) {
    Rat level = total_level(instance, shifts, t);
    if (level > best) {
      best = level;
      arg = t;
    }
  }
  return PeakResult{best, arg, PeakEngine::Events};
}

IpModel build_ip_model(const Instance& instance, const ShiftVector& shifts,
                       const Budgets& budgets) {
  if (instance.mode() != Mode::Discrete)
    throw InputError("peak_ip: Discrete mode required");
  if (static_cast<int>(instance.size()) > budgets.ip_dims)
    throw ResourceError("peak_ip: " + std::to_string(instance.size()) +
                        " items exceed dimension budget " + std::to_string(budgets.ip_dims));
  IpModel model;
  model.items = instance.items();
  model.taus = integer_taus(shifts);
  model.lambda = instance.cycle_length();
  model.h_sigma = instance.h_sigma();
  return model;
}

namespace {

BigInt mod_big(const BigInt& a, std::int64_t m) {
  BigInt r;
  BigInt mm(static_cast<long>(m));
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), mm.get_mpz_t());
  return r;
}

// Scaled objective at integer p with per-item maximal x_i.
BigInt ip_objective(const IpModel& model, const BigInt& p) {
  BigInt total = 0;
  for (std::size_t i = 0; i < model.items.size(); ++i) {
    const Item& it = model.items[i];
    BigInt slope = BigInt(static_cast<long>(it.quantity)) * (model.lambda / static_cast<long>(it.interval));
    BigInt r = mod_big(p - static_cast<long>(model.taus[i]), it.interval);
    total += slope * (static_cast<long>(it.interval) - r);
  }
  return total;
}

// Upper bound of the scaled objective over integer p in [a, b].
BigInt ip_upper_bound(const IpModel& model, const BigInt& a, const BigInt& b) {
  BigInt total = 0;
  for (std::size_t i = 0; i < model.items.size(); ++i) {
    const Item& it = model.items[i];
    BigInt slope = BigInt(static_cast<long>(it.quantity)) * (model.lambda / static_cast<long>(it.interval));
    BigInt r = mod_big(a - static_cast<long>(model.taus[i]), it.interval);
    BigInt to_next = (r == 0) ? BigInt(0) : BigInt(static_cast<long>(it.interval)) - r;
    if (a + to_next <= b) {
      total += slope * static_cast<long>(it.interval);  // an epoch lies in [a, b]
    } else {
      total += slope * (static_cast<long>(it.interval) - r);  // decreasing on [a, b]
    }
  }
  return total;
}

}  // namespace

std::optional<IpWitness> ip_feasible(const IpModel& model, const BigInt& psi) {
  return ip_feasible(model, psi, BigInt(0), model.lambda);
}

std::optional<IpWitness> ip_feasible(const IpModel& model, const BigInt& psi,
                                     const BigInt& p_lo, const BigInt& p_hi) {
  if (psi < 0) throw InputError("ip_feasible: psi must be >= 0");
  if (p_lo > p_hi) return std::nullopt;

  auto witness_at = [&](const BigInt& p) {
    IpWitness w;
    w.p = p;
    for (std::size_t i = 0; i < model.items.size(); ++i) {
      BigInt x;
      BigInt num = p - static_cast<long>(model.taus[i]);
      BigInt den(static_cast<long>(model.items[i].interval));
      mpz_fdiv_q(x.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      w.x.push_back(x);
    }
    return w;
  };

  struct Node {
    BigInt bound, a, b;
    bool operator<(const Node& o) const { return bound < o.bound; }
  };
  std::priority_queue<Node> heap;
  heap.push(Node{ip_upper_bound(model, p_lo, p_hi), p_lo, p_hi});
  long expanded = 0;
  while (!heap.empty()) {
    Node node = heap.top();
    heap.pop();
    if (node.bound < psi) return std::nullopt;  // certified: max bound below psi
    if (node.b - node.a <= 64) {
      for (BigInt p = node.a; p <= node.b; ++p)
        if (ip_objective(model, p) >= psi) return witness_at(p);
      continue;
    }
    BigInt mid = node.a + (node.b - node.a) / 2;
    heap.push(Node{ip_upper_bound(model, node.a, mid), node.a, mid});
    heap.push(Node{ip_upper_bound(model, mid + 1, node.b), mid + 1, node.b});
    if (++expanded > 2'000'000)
      throw ResourceError("ip_feasible: branch-and-bound node limit exceeded");
  }
  return std::nullopt;
}

PeakResult peak_ip(const Instance& instance, const ShiftVector& shifts,
                   const Budgets& budgets) {
  IpModel model = build_ip_model(instance, shifts, budgets);

  // First binary search: largest integer psi with a feasible witness.
  BigInt scale = model.lambda;
  BigInt lo = (scale * model.h_sigma + 1) / 2;  // ceil(Lambda H_Sigma / 2)
  BigInt hi = scale * model.h_sigma;
  while (lo < hi) {
    BigInt mid = lo + (hi - lo + 1) / 2;
    if (ip_feasible(model, mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  BigInt psi_star = lo;

  // Second binary search: smallest p attaining the optimum.
  BigInt plo = 0, phi = model.lambda;
  while (plo < phi) {
    BigInt mid = plo + (phi - plo) / 2;
    if (ip_feasible(model, psi_star, BigInt(0), mid))
      phi = mid;
    else
      plo = mid + 1;
  }
  return PeakResult{make_rat(psi_star, scale), Rat(plo), PeakEngine::IntegerProgram};
}

OptimumResult brute_optimum(const Instance& instance, const Budgets& budgets) {
  std::size_t n = instance.size();
  if (instance.mode() == Mode::Discrete) {
    BigInt count = 1;
    for (std::size_t i = 1; i < n; ++i) count *= static_cast<long>(instance.item(i).interval);
    if (count > budgets.brute)
      throw ResourceError("brute_optimum: " + count.get_str() +
                          " shift vectors exceed brute budget " + std::to_string(budgets.brute));

    ScanSetup s = make_scan_setup(instance, budgets);
    std::vector<std::int64_t> taus(n, 0);
    std::vector<std::int64_t> best_taus;
    i128 best = s.top + 1;
    for (;;) {
      auto res = scan_scaled(s, taus, best);
      if (res && res->max_scaled < best) {
        best = res->max_scaled;
        best_taus = taus;
      }
      // Odometer over tau_2..tau_n, last coordinate fastest (lex ascending).
      if (n == 1) break;
      std::size_t i = n - 1;
      bool done = false;
      for (;;) {
        if (++taus[i] < instance.item(i).interval) break;
        taus[i] = 0;
        if (i == 1) {
          done = true;
          break;
        }
        --i;
      }
      if (done) break;
    }
    std::vector<Rat> out;
    for (std::int64_t v : best_taus) out.emplace_back(static_cast<long>(v));
    if (n == 1) out = {Rat(0)};
    return OptimumResult{make_rat(to_big(best), BigInt(static_cast<long>(s.lambda))), out, true};
  }

  // Continuous mode: heuristic search on the 1/g grid, evaluated exactly
  // per vector via peak_events.
  std::int64_t g = budgets.continuous_grid;
  BigInt count = 1;
  for (std::size_t i = 1; i < n; ++i)
    count *= BigInt(static_cast<long>(instance.item(i).interval)) * static_cast<long>(g);
  if (count > budgets.brute)
    throw ResourceError("brute_optimum: grid of " + count.get_str() +
                        " vectors exceeds brute budget " + std::to_string(budgets.brute));

  std::vector<std::int64_t> num(n, 0);  // shift_i = num_i / g
  std::optional<Rat> best;
  std::vector<Rat> best_shifts;
  for (;;) {
    std::vector<Rat> shifts;
    for (std::size_t i = 0; i < n; ++i) shifts.push_back(make_rat(num[i], g));
    PeakResult pk = peak_events(instance, ShiftVector(instance, shifts), budgets);
    if (!best || pk.value < *best) {
      best = pk.value;
      best_shifts = shifts;
    }
    std::size_t i = n;
    bool advanced = false;
    while (i > 1) {
      --i;
      if (++num[i] < instance.item(i).interval * g) {
        advanced = true;
        break;
      }
      num[i] = 0;
    }
    if (!advanced) break;
  }
  return OptimumResult{*best, best_shifts, false};
}

}  // namespace stagger
