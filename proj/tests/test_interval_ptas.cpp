#include <doctest.h>

#include <algorithm>

#include "stagger/errors.hpp"
#include "stagger/generators.hpp"
#include "stagger/interval_ptas.hpp"

using namespace stagger;

namespace {

// Exhaustive assignment oracle for small balancing instances.
Rat oracle_makespan(const std::vector<std::int64_t>& jobs, const std::vector<Rat>& speeds) {
  std::vector<std::size_t> machines;
  for (std::size_t m = 0; m < speeds.size(); ++m)
    if (speeds[m] > 0) machines.push_back(m);
  std::size_t n = jobs.size();
  std::vector<std::size_t> assign(n, 0);
  std::optional<Rat> best;
  for (;;) {
    std::vector<Rat> load(speeds.size(), Rat(0));
    for (std::size_t j = 0; j < n; ++j) load[machines[assign[j]]] += Rat(jobs[j]);
    Rat ms(0);
    for (std::size_t m : machines) {
      Rat v = load[m] / speeds[m];
      if (v > ms) ms = v;
    }
    if (!best || ms < *best) best = ms;
    std::size_t j = n;
    bool advanced = false;
    while (j > 0) {
      --j;
      if (++assign[j] < machines.size()) {
        advanced = true;
        break;
      }
      assign[j] = 0;
    }
    if (!advanced) break;
  }
  return *best;
}

}  // namespace

TEST_CASE("group_by_interval") {
  Instance inst({{2, 1}, {2, 5}, {3, 7}}, Mode::Discrete);
  IntervalClasses classes = group_by_interval(inst, parse_rat("0.5"));
  CHECK(classes.intervals == std::vector<std::int64_t>{2, 3});
  REQUIRE(classes.members.size() == 2);
  CHECK(classes.members[0] == std::vector<std::size_t>{0, 1});
  CHECK(classes.members[1] == std::vector<std::size_t>{2});
  CHECK(classes.offsets[0] == std::vector<std::int64_t>{0, 1});
  CHECK(classes.offsets[1] == std::vector<std::int64_t>{0, 1});

  Instance same({{4, 1}, {4, 2}, {4, 3}}, Mode::Discrete);
  CHECK(group_by_interval(same, parse_rat("0.5")).intervals.size() == 1);

  Instance distinct({{2, 1}, {3, 1}, {5, 1}}, Mode::Discrete);
  CHECK(group_by_interval(distinct, parse_rat("0.5")).intervals.size() == 3);

  CHECK_THROWS_AS(group_by_interval(inst.with_mode(Mode::Continuous), parse_rat("0.5")),
                  InputError);
}

TEST_CASE("quantity guess enumeration") {
  Instance inst({{2, 2}, {2, 2}}, Mode::Discrete);
  Rat eps = parse_rat("0.5");
  IntervalClasses classes = group_by_interval(inst, eps);
  // unit = (eps^2 / K) H_Sigma = 1; class sum window [4, 6]; entries <= 4
  CHECK(count_quantity_guesses(inst, classes, eps) == 12);

  long calls = 0;
  bool true_table_seen = false;
  enumerate_quantity_guesses(inst, classes, eps, Budgets{}, [&](const QuantityGuess& g) {
    ++calls;
    CHECK(g.unit == 1);
    REQUIRE(g.multiples.size() == 1);
    long sum = g.multiples[0][0] + g.multiples[0][1];
    CHECK(sum >= 4);
    CHECK(sum <= 6);
    // table matching the optimal vector (0, 1): quantity 2 on each shift
    if (g.multiples[0] == std::vector<long>{2, 2}) true_table_seen = true;
  });
  CHECK(calls == 12);
  CHECK(true_table_seen);

  Budgets tiny;
  tiny.guesses = 2;
  CHECK_THROWS_AS(
      enumerate_quantity_guesses(inst, classes, eps, tiny, [](const QuantityGuess&) {}),
      ResourceError);
}

TEST_CASE("balance_partition frozen examples") {
  std::vector<std::int64_t> jobs{3, 3, 2, 2};
  std::vector<Rat> speeds{Rat(5), Rat(5)};
  auto bal = balance_partition(jobs, speeds, parse_rat("0.5"));
  REQUIRE(bal.has_value());
  CHECK(bal->makespan == 1);
  CHECK(bal->exact);
  for (const auto& g : bal->groups) {
    std::int64_t total = 0;
    for (std::size_t j : g) total += jobs[j];
    CHECK(total == 5);
  }

  auto solo = balance_partition(jobs, {Rat(10)}, parse_rat("0.5"));
  REQUIRE(solo.has_value());
  CHECK(solo->groups[0].size() == 4);
  CHECK(solo->makespan == 1);

  // zero-speed machines take nothing; all-zero with jobs is unsolvable
  auto skewed = balance_partition(jobs, {Rat(0), Rat(10)}, parse_rat("0.5"));
  REQUIRE(skewed.has_value());
  CHECK(skewed->groups[0].empty());
  CHECK_FALSE(balance_partition(jobs, {Rat(0)}, parse_rat("0.5")).has_value());
  CHECK_THROWS_AS(balance_partition(jobs, {Rat(-1)}, parse_rat("0.5")), InputError);
}

TEST_CASE("balance_partition is exact on small inputs") {
  RngStream rng(61);
  for (int round = 0; round < 40; ++round) {
    std::size_t n = 1 + rng.below(6);
    std::vector<std::int64_t> jobs;
    for (std::size_t j = 0; j < n; ++j) jobs.push_back(1 + static_cast<long>(rng.below(9)));
    std::size_t machines = 1 + rng.below(3);
    std::vector<Rat> speeds;
    for (std::size_t m = 0; m < machines; ++m)
      speeds.emplace_back(1 + static_cast<long>(rng.below(7)));
    auto bal = balance_partition(jobs, speeds, parse_rat("0.5"));
    REQUIRE(bal.has_value());
    CHECK(bal->exact);
    CHECK(bal->makespan == oracle_makespan(jobs, speeds));
    std::vector<bool> placed(n, false);
    for (const auto& g : bal->groups)
      for (std::size_t j : g) {
        CHECK_FALSE(placed[j]);
        placed[j] = true;
      }
    CHECK(std::all_of(placed.begin(), placed.end(), [](bool b) { return b; }));
  }
}

TEST_CASE("superitem_instance") {
  Instance inst({{2, 1}, {2, 5}, {3, 7}}, Mode::Discrete);
  Rat eps = parse_rat("0.5");
  IntervalClasses classes = group_by_interval(inst, eps);

  // both class-2 items on the same shift collapse into one super-item
  std::vector<std::vector<std::vector<std::size_t>>> merged{{{0, 1}, {}}, {{0}, {}}};
  SuperitemPair pair = superitem_instance(inst, classes, merged);
  REQUIRE(pair.instance.size() == 2);
  CHECK(pair.instance.item(0).interval == 2);
  CHECK(pair.instance.item(0).quantity == 6);
  CHECK(pair.instance.item(1).quantity == 7);

  // singleton groups reproduce the original items
  std::vector<std::vector<std::vector<std::size_t>>> split{{{0}, {1}}, {{}, {0}}};
  SuperitemPair iso = superitem_instance(inst, classes, split);
  REQUIRE(iso.instance.size() == 3);

  // peak equality against the expanded per-item vector
  ShiftVector expanded(inst, {Rat(0), Rat(1), Rat(1)});
  CHECK(peak_scan(iso.instance, iso.shifts).value == peak_scan(inst, expanded).value);
  CHECK(peak_scan(pair.instance, pair.shifts).value ==
        peak_scan(inst, ShiftVector(inst, {Rat(0), Rat(0), Rat(0)})).value);

  RngStream rng(19);
  for (int round = 0; round < 25; ++round) {
    Instance r = gen_random_capped(rng, 2 + rng.below(3), 4, 5, Mode::Discrete, 60);
    IntervalClasses cls = group_by_interval(r, eps);
    std::vector<std::vector<std::vector<std::size_t>>> groups;
    std::vector<Rat> shifts(r.size());
    for (std::size_t c = 0; c < cls.intervals.size(); ++c) {
      std::vector<std::vector<std::size_t>> g(cls.offsets[c].size());
      for (std::size_t local = 0; local < cls.members[c].size(); ++local) {
        std::size_t slot = rng.below(cls.offsets[c].size());
        g[slot].push_back(local);
        shifts[cls.members[c][local]] = Rat(static_cast<long>(cls.offsets[c][slot]));
      }
      groups.push_back(std::move(g));
    }
    SuperitemPair sp = superitem_instance(r, cls, groups);
    CHECK(peak_scan(sp.instance, sp.shifts).value ==
          peak_scan(r, ShiftVector(r, shifts)).value);
  }
}

TEST_CASE("interval_ptas_solve frozen examples") {
  Instance inst({{2, 2}, {2, 2}}, Mode::Discrete);
  IntervalPtasReport report;
  SchemeResult res = interval_ptas_solve(inst, parse_rat("0.5"), Budgets{}, &report);
  CHECK(res.peak.value == 3);
  CHECK(res.shifts == std::vector<Rat>{Rat(0), Rat(1)});
  CHECK(report.guess_count == 12);
  CHECK(report.evaluated >= 1);

  Instance quad({{2, 1}, {2, 1}, {2, 1}, {2, 1}}, Mode::Discrete);
  SchemeResult q = interval_ptas_solve(quad, parse_rat("0.5"));
  CHECK(q.peak.value == 3);
  CHECK(q.peak.value == brute_optimum(quad).value);

  SchemeResult again = interval_ptas_solve(inst, parse_rat("0.5"));
  CHECK(again.shifts == res.shifts);
}

TEST_CASE("interval_ptas_solve meets the approximation bound") {
  Rat eps = parse_rat("0.5");
  Rat factor = Rat(1) + Rat(17) * eps;
  RngStream rng(83);
  for (int round = 0; round < 12; ++round) {
    Instance inst = gen_random_capped(rng, 1 + rng.below(4), 4, 4, Mode::Discrete, 60);
    SchemeResult res = interval_ptas_solve(inst, eps);
    OptimumResult opt = brute_optimum(inst);
    CHECK(res.peak.value >= opt.value);
    CHECK(res.peak.value <= factor * opt.value);
    CHECK(total_level(inst, ShiftVector(inst, res.shifts), res.peak.argmax_time) ==
          res.peak.value);
  }

  // single class at a finer eps
  Instance k1({{2, 1}, {2, 2}, {2, 3}}, Mode::Discrete);
  Rat fine = parse_rat("0.3");
  SchemeResult res = interval_ptas_solve(k1, fine);
  CHECK(res.peak.value <= (Rat(1) + Rat(17) * fine) * brute_optimum(k1).value);
}
