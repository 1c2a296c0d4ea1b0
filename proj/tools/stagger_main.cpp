#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "stagger/coprime.hpp"
#include "stagger/core.hpp"
#include "stagger/errors.hpp"
#include "stagger/generators.hpp"
#include "stagger/hardness.hpp"
#include "stagger/interval_ptas.hpp"
#include "stagger/json_io.hpp"
#include "stagger/lp_rounding.hpp"
#include "stagger/nested.hpp"
#include "stagger/peak.hpp"

namespace {

using nlohmann::json;
using namespace stagger;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

struct CommonOpts {
  std::string output;
  Budgets budgets;
};

void add_budget_flags(CLI::App* cmd, Budgets& budgets) {
  if (const char* env = std::getenv("STAGGERLAB_BUDGET_SCAN")) budgets.scan = std::atoll(env);
  cmd->add_option("--budget-scan", budgets.scan, "max cycle length for timeline scans");
  cmd->add_option("--budget-events", budgets.events, "max order epochs for event sweeps");
  cmd->add_option("--budget-ip-dims", budgets.ip_dims, "max items for the ip peak engine");
  cmd->add_option("--budget-brute", budgets.brute, "max shift vectors for brute search");
  cmd->add_option("--budget-guesses", budgets.guesses, "max enumeration guesses");
  cmd->add_option("--budget-sieve-span", budgets.sieve_span, "max prime sieve span");
}

void emit(const json& report, const std::string& output) {
  if (output.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(output);
    if (!out) throw InputError("cannot write to " + output);
    out << report.dump(2) << "\n";
  }
}

json shifts_json(const std::vector<Rat>& shifts) {
  json arr = json::array();
  for (const Rat& s : shifts) arr.push_back(rat_to_string(s));
  return arr;
}

long elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

int run_solve(const std::string& input, const std::string& alg, const std::string& eps_str,
              std::uint64_t seed, int repeats, const CommonOpts& opts) {
  auto start = std::chrono::steady_clock::now();
  Instance instance = load_instance(input);
  Rat eps = eps_str.empty() ? make_rat(1, 2) : parse_rat(eps_str);

  json report;
  report["algorithm"] = alg;
  report["eps"] = rat_to_string(eps);
  report["seed"] = seed;
  json flags = json::object();

  std::vector<Rat> shifts;
  Rat peak;
  if (alg == "brute") {
    OptimumResult res = brute_optimum(instance, opts.budgets);
    shifts = res.shifts;
    peak = res.value;
    if (!res.exact) flags["grid-heuristic"] = true;
  } else if (alg == "lp-rounding") {
    LpRoundingReport rep;
    SchemeResult res = lp_rounding_solve(instance, eps, seed, repeats, opts.budgets, &rep);
    shifts = res.shifts;
    peak = res.peak.value;
    report["guess_count"] = rep.guess_count.get_str();
    report["lp_feasible"] = rep.lp_feasible;
    report["lp_infeasible"] = rep.lp_infeasible;
    if (rep.heavy_capped) flags["heuristic-heavy-cap"] = true;
  } else if (alg == "interval") {
    IntervalPtasReport rep;
    SchemeResult res = interval_ptas_solve(instance, eps, opts.budgets, &rep);
    shifts = res.shifts;
    peak = res.peak.value;
    report["guess_count"] = rep.guess_count.get_str();
    report["rejected_guesses"] = rep.rejected;
    report["evaluated_candidates"] = rep.evaluated;
  } else if (alg == "nested") {
    NestedReport rep;
    SchemeResult res = nested_solve(instance, eps, opts.budgets, &rep);
    shifts = res.shifts;
    peak = res.peak.value;
    report["eps_effective"] = rat_to_string(rep.eps_effective);
    report["xi"] = rep.xi;
    report["block_sizes"] = rep.block_sizes;
    json block_peaks = json::array();
    for (const Rat& v : rep.block_peaks) block_peaks.push_back(rat_to_string(v));
    report["block_peaks"] = block_peaks;
    report["h_residual"] = rep.h_residual.get_str();
  } else if (alg == "coprime") {
    CoprimeReport rep;
    SchemeResult res = coprime_solve(instance, eps, opts.budgets, &rep);
    shifts = res.shifts;
    peak = res.peak.value;
    report["m_hat"] = rep.m_hat;
    report["bin_sizes"] = {rep.n_minus, rep.n_hat, rep.n_plus};
    if (rep.saturated) flags["psi-saturated"] = true;
  } else {
    throw InputError("unknown algorithm: " + alg);
  }

  Rat lower = average_space_bound(instance);
  if (instance.mode() == Mode::Continuous && instance.size() > 0) {
    bool coprime_ok = true;
    try {
      validate_coprime(instance);
    } catch (const InputError&) {
      coprime_ok = false;
    }
    if (coprime_ok) {
      Rat witness = (Rat(1) - make_rat(1, instance.t_min())) * Rat(instance.h_sigma());
      if (witness > lower) lower = witness;
    }
  }

  report["peak"] = rat_to_string(peak);
  report["shifts"] = shifts_json(shifts);
  report["lower_bound"] = rat_to_string(lower);
  report["ratio"] = rat_to_string(peak / lower);
  report["flags"] = flags;
  report["timing_ms"] = elapsed_ms(start);
  emit(report, opts.output);
  return kExitOk;
}

int run_peak(const std::string& input, const std::string& shifts_path,
             const std::string& engine, const CommonOpts& opts) {
  auto start = std::chrono::steady_clock::now();
  Instance instance = load_instance(input);
  ShiftVector shifts = load_shifts(instance, shifts_path);

  PeakResult res{Rat(0), Rat(0), PeakEngine::Scan};
  if (engine == "scan")
    res = peak_scan(instance, shifts, opts.budgets);
  else if (engine == "events")
    res = peak_events(instance, shifts, opts.budgets);
  else if (engine == "ip")
    res = peak_ip(instance, shifts, opts.budgets);
  else
    throw InputError("unknown engine: " + engine);

  json report;
  report["engine"] = engine;
  report["peak"] = rat_to_string(res.value);
  report["argmax"] = rat_to_string(res.argmax_time);
  report["timing_ms"] = elapsed_ms(start);
  emit(report, opts.output);
  return kExitOk;
}

int run_gen(const std::string& family, std::int64_t n, std::int64_t q,
            std::optional<long> count, std::int64_t t_max, std::int64_t h_max,
            const std::string& mode_str, std::uint64_t seed, const CommonOpts& opts) {
  RngStream rng(seed);
  Mode mode = mode_str == "continuous" ? Mode::Continuous : Mode::Discrete;
  if (family == "sample-complexity") {
    emit(instance_to_json(gen_sample_complexity(n, opts.budgets)), opts.output);
  } else if (family == "random") {
    emit(instance_to_json(gen_random(rng, n, t_max, h_max, mode)), opts.output);
  } else if (family == "nested") {
    emit(instance_to_json(gen_nested(rng, n, {1, 2, 4, 8, 16}, h_max)), opts.output);
  } else if (family == "coprime") {
    emit(instance_to_json(gen_coprime(rng, n, t_max, h_max)), opts.output);
  } else if (family == "groupsync") {
    GroupSyncInstance gs = gen_groupsync(q, count, opts.budgets);
    json j;
    j["q"] = q;
    j["primes"] = gs.primes;
    j["items"] = gs.instance.items;
    emit(j, opts.output);
  } else {
    throw InputError("unknown family: " + family);
  }
  return kExitOk;
}

int run_exp(const std::string& name, std::int64_t n, const std::string& eps_str,
            long m_samples, std::uint64_t seed, std::int64_t q, std::optional<long> count,
            long probes, const CommonOpts& opts) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!opts.output.empty()) {
    file.open(opts.output);
    if (!file) throw InputError("cannot write to " + opts.output);
    out = &file;
  }

  if (name == "sampling") {
    Rat eps = eps_str.empty() ? parse_rat("0.3") : parse_rat(eps_str);
    Instance instance = gen_sample_complexity(n, opts.budgets);
    RngStream rng(seed);
    Rat threshold = (make_rat(1, 2) + eps) * static_cast<long>(n);
    SamplingEstimate est = sampling_estimate(instance, ShiftVector::zero(instance),
                                             m_samples, threshold, rng);
    *out << "sample,level,exceeds\n";
    for (long m = 0; m < m_samples; ++m)
      *out << m << "," << rat_to_string(est.levels[m]) << ","
           << (est.levels[m] >= threshold ? 1 : 0) << "\n";
    *out << "# threshold," << rat_to_string(threshold) << "\n";
    *out << "# estimate," << rat_to_string(est.estimate) << "\n";
    *out << "# exceed_fraction," << rat_to_string(est.exceed_fraction) << "\n";
  } else if (name == "groupsync-gap") {
    GroupSyncInstance gs = gen_groupsync(q, count, opts.budgets);
    RngStream rng(seed);
    long size = std::max<long>(1, gs.family.q / 2);
    *out << "probe,subset_size,witness_bits,level,bound\n";
    for (long p = 0; p < probes; ++p) {
      RngStream sub = rng.split(p);
      std::vector<std::size_t> subset;
      while (static_cast<long>(subset.size()) < size) {
        std::size_t pick = sub.below(gs.instance.size());
        if (std::find(subset.begin(), subset.end(), pick) == subset.end())
          subset.push_back(pick);
      }
      std::vector<BigInt> shifts;
      for (std::size_t s : subset) shifts.push_back(sub.below_big(gs.instance.interval(s)));
      ProbeResult probe = subset_gap_probe(gs, subset, shifts);
      Rat bound = Rat(static_cast<long>(subset.size())) *
                  (Rat(1) - make_rat(1, gs.primes.front()));
      *out << p << "," << subset.size() << ","
           << mpz_sizeinbase(probe.t.get_mpz_t(), 2) << "," << rat_to_string(probe.level)
           << "," << rat_to_string(bound) << "\n";
    }
  } else {
    throw InputError("unknown experiment: " + name);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inventory staggering workbench"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string input, shifts_path, alg = "brute", engine = "scan", eps;
  std::string family = "random", exp_name = "sampling", mode_str = "discrete";
  std::uint64_t seed = 0;
  int repeats = 7, jobs = 1;
  std::int64_t n = 3, q = 11, t_max = 10, h_max = 10;
  long m_samples = 1000, probes = 10;
  std::optional<long> count;

  auto* solve = app.add_subcommand("solve", "run a solver on an instance file");
  solve->add_option("--input", input, "instance JSON file")->required();
  solve->add_option("--alg", alg, "lp-rounding|interval|nested|coprime|brute");
  solve->add_option("--eps", eps, "accuracy parameter, rational or decimal");
  solve->add_option("--seed", seed, "rng seed");
  solve->add_option("--repeats", repeats, "rounding repetitions per feasible guess");
  solve->add_option("--jobs", jobs, "worker hint; all solvers are deterministic");
  solve->add_option("--output", opts.output, "report file (stdout when omitted)");
  add_budget_flags(solve, opts.budgets);

  auto* peak = app.add_subcommand("peak", "evaluate the peak of a given shift vector");
  peak->add_option("--input", input, "instance JSON file")->required();
  peak->add_option("--shifts", shifts_path, "shift vector JSON file")->required();
  peak->add_option("--engine", engine, "scan|events|ip");
  peak->add_option("--output", opts.output, "report file");
  add_budget_flags(peak, opts.budgets);

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--family", family,
                  "sample-complexity|groupsync|random|nested|coprime");
  gen->add_option("--n", n, "item count");
  gen->add_option("--q", q, "field size for groupsync");
  gen->add_option("--count", count, "groupsync family size override");
  gen->add_option("--t-max", t_max, "max interval");
  gen->add_option("--h-max", h_max, "max quantity");
  gen->add_option("--mode", mode_str, "discrete|continuous");
  gen->add_option("--seed", seed, "rng seed");
  gen->add_option("--output", opts.output, "instance file");
  add_budget_flags(gen, opts.budgets);

  auto* exp = app.add_subcommand("exp", "run an experiment, emitting CSV");
  exp->add_option("--name", exp_name, "sampling|groupsync-gap");
  exp->add_option("--n", n, "item count for sampling");
  exp->add_option("--eps", eps, "accuracy parameter");
  exp->add_option("--M", m_samples, "sample count");
  exp->add_option("--seed", seed, "rng seed");
  exp->add_option("--q", q, "field size for groupsync-gap");
  exp->add_option("--count", count, "groupsync family size override");
  exp->add_option("--probes", probes, "probe count for groupsync-gap");
  exp->add_option("--output", opts.output, "CSV file");
  add_budget_flags(exp, opts.budgets);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(input, alg, eps, seed, repeats, opts);
    if (peak->parsed()) return run_peak(input, shifts_path, engine, opts);
    if (gen->parsed())
      return run_gen(family, n, q, count, t_max, h_max, mode_str, seed, opts);
    if (exp->parsed())
      return run_exp(exp_name, n, eps, m_samples, seed, q, count, probes, opts);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitOk;
}
