// One line per acceptance criterion. Exit status is nonzero when any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "minbudget/convex.hpp"
#include "minbudget/sp.hpp"
#include "property_suites.hpp"

using namespace minbudget;
using namespace testsupport;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

BlockSchedule partition(const Instance& inst, std::initializer_list<std::initializer_list<const char*>> parts) {
  BlockSchedule bs;
  for (const auto& p : parts) bs.blocks.push_back(block_of(inst, p));
  return bs;
}

Outcome fig1_regression() {
  Outcome o;
  const Instance inst = fig1();
  const CbrTriple t = schedule_stats(inst, sched({"a", "c", "b", "e", "d", "f", "g"}));
  o.require(t == (CbrTriple{q(-1), q(3), q(-4)}), "stats of a,c,b,e,d,f,g");
  o.require(naive_min_budget(inst) == q(3), "naive budget");
  o.require(min_budget_exact(inst).budget == q(3), "oracle budget");
  return o;
}

Outcome fig3_regression() {
  Outcome o;
  const Instance inst = fig3();
  o.require(check_iis(inst, partition(inst, {{"a", "b"}, {"c", "d"}, {"e", "f"}})).pass(), "{a,b},{c,d},{e,f}");
  o.require(check_iis(inst, partition(inst, {{"a", "b", "c", "d"}, {"e", "f"}})).pass(), "{a,b,c,d},{e,f}");
  o.require(check_iis(inst, partition(inst, {{"a", "b", "c", "d", "e", "f"}})).pass(), "{a..f}");
  o.require(min_budget_exact(inst).budget == q(1), "oracle budget");
  return o;
}

Outcome oracle_cross_validation() {
  Outcome o;
  Rng rng(1003);
  for (int k = 0; k < 200; ++k) {
    const Instance inst = random_dag(rng, 8);
    o.require(min_budget_exact(inst).budget == naive_min_budget(inst), "case " + std::to_string(k));
  }
  return o;
}

void check_solution(Outcome& o, const Instance& inst, const BlockSchedule& bs, const std::string& tag) {
  o.require(check_iis(inst, bs).pass(), tag + ": check_iis");
  o.require(schedule_stats(inst, bs.flatten()).b == min_budget_exact(inst).budget, tag + ": budget");
}

Outcome sp_solver() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto gen = generate_sp(1 + seed % 12, 4000 + seed);
    check_solution(o, gen.instance, sp_solve(gen.instance, gen.tree), "seed " + std::to_string(seed));
  }
  return o;
}

Outcome convex_solver() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ConvexSide side = seed < 100 ? ConvexSide::NMinus : ConvexSide::NPlus;
    const std::size_t nplus = 1 + seed % 6;
    const std::size_t nminus = 1 + (seed / 6) % 6;
    const auto gen = generate_convex(nplus, nminus, 5000 + seed, {}, side);
    const SideChoice choice = side == ConvexSide::NMinus ? SideChoice::NMinus : SideChoice::NPlus;
    const ConvexResult res = solve_convex_auto(gen.instance, choice);
    const std::string tag = "seed " + std::to_string(seed);
    const Cost want = min_budget_exact(gen.instance).budget;
    o.require(res.side == side, tag + ": side");
    o.require(res.budget == want, tag + ": reported budget");
    o.require(is_linear_extension(gen.instance, res.schedule), tag + ": feasibility");
    o.require(schedule_stats(gen.instance, res.schedule).b == want, tag + ": schedule budget");
    // The NPlus side is certified on the reversed instance.
    if (side == ConvexSide::NMinus) {
      o.require(res.certificate && check_iis(gen.instance, *res.certificate).pass(), tag + ": check_iis");
    } else {
      const Instance rev = reverse_instance(gen.instance);
      const auto order = find_convex_order(rev);
      o.require(order.has_value(), tag + ": reverse order");
      if (!order) continue;
      const BlockSchedule dual = convex_solve(rev, {*order, ConvexSide::NPlus});
      o.require(check_iis(rev, dual).pass(), tag + ": check_iis on reverse");
      o.require(reverse_schedule(dual.flatten()) == res.schedule, tag + ": dual schedule");
    }
  }
  return o;
}

Outcome generic_reference() {
  Outcome o;
  Rng rng(6007);
  for (int k = 0; k < 100; ++k) {
    const Instance inst = random_dag(rng, 10);
    check_solution(o, inst, generic_solve(inst), "case " + std::to_string(k));
  }
  return o;
}

Outcome reduction_pipeline() {
  Outcome o;
  Rng rng(7001);
  for (int k = 0; k < 200; ++k) {
    const Instance inst = random_dag(rng, 10);
    const Cost want = min_budget_exact(inst).budget;
    const auto reduced = min_budget_exact(bipartite_reduce(inst));
    const std::string tag = "case " + std::to_string(k);
    o.require(reduced.budget == want, tag + ": reduced budget");
    const Schedule s = repair_schedule(inst, reduced.schedule);
    o.require(is_linear_extension(inst, s), tag + ": feasibility");
    o.require(schedule_stats(inst, s).b == want, tag + ": repaired budget");
  }
  return o;
}

Outcome from_suite(const SuiteResult& res, std::size_t want) {
  Outcome o;
  o.require(res.cases >= want, "only " + std::to_string(res.cases) + " cases");
  o.require(res.failures == 0, std::to_string(res.failures) + " failures, first: " + res.first_failure);
  return o;
}

Outcome swap_and_contiguify() {
  Outcome o = from_suite(swap_suite(8001, 500), 500);
  const Outcome c = from_suite(contiguify_suite(8003, 500), 500);
  if (!c.pass) o.require(false, "contiguify: " + c.detail);
  return o;
}

Outcome irreducible_inequalities() { return from_suite(irreducible_suite(9001, 100, 8), 1); }

Outcome reverse_duality() {
  Outcome o;
  Rng rng(10007);
  for (int k = 0; k < 500; ++k) {
    const Instance inst = random_dag(rng, 10);
    Schedule s = random_linear_extension(inst, rng);
    if (rng.chance(0.3)) rng.shuffle(s);
    const CbrTriple t = schedule_stats(inst, s);
    o.require(schedule_stats(reverse_instance(inst), reverse_schedule(s)) == (CbrTriple{-t.c, -t.r, -t.b}),
              "case " + std::to_string(k));
  }
  return o;
}

Outcome energy_barrier() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const EnergyBarrierInstance eb = generate_energy(3, 11000 + seed);
    const std::string tag = "seed " + std::to_string(seed);
    o.require(eb.initial.size() + eb.final.size() <= 6, tag + ": size");
    const Cost brute = energy_barrier_by_search(eb);
    const Cost value = energy_barrier_value(eb, kDefaultIdealCap, [&](const BarrierProbe& probe) {
      o.require((probe.min_budget == 0) == (brute <= probe.threshold), tag + ": decision at probe");
    });
    o.require(value == brute, tag + ": barrier");
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"seven-job reference instance", fig1_regression},
      {"three-chain reference instance", fig3_regression},
      {"oracle cross-validation (200 DAGs, n<=8)", oracle_cross_validation},
      {"series-parallel solver (200 instances, n<=12)", sp_solver},
      {"convex solver (100 per side, n<=12)", convex_solver},
      {"generic solver (100 DAGs, n<=10)", generic_reference},
      {"bipartite reduction and repair (200 DAGs, n<=10)", reduction_pipeline},
      {"consistency swap and contiguify (500 cases each)", swap_and_contiguify},
      {"irreducible interval inequalities (100 instances, n<=8)", irreducible_inequalities},
      {"reverse duality (500 pairs)", reverse_duality},
      {"energy barrier end-to-end (50 pairs)", energy_barrier},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s (%.0f ms)%s%s\n", o.pass ? "PASS" : "FAIL", index, name, ms,
                o.pass ? "" : ": ", o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
