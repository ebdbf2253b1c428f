#include "minbudget/transforms.hpp"

#include <algorithm>
#include <numeric>

#include "minbudget/error.hpp"

namespace minbudget {

Instance bipartite_reduce(const Instance& inst) {
  std::vector<Precedence> kept;
  for (auto [u, v] : inst.closure_pairs()) {
    if (sgn(inst.cost(u)) >= 0 && sgn(inst.cost(v)) < 0) kept.push_back({inst.id(u), inst.id(v)});
  }
  return build_instance(inst.job_specs(), std::move(kept));
}

std::size_t inversion_potential(const Instance& inst, const Schedule& s) {
  std::size_t phi = 0;
  Bitset later(inst.size());
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    const auto k = inst.index_of(*it);
    phi += (inst.predecessors(k) & later).count();
    later.set(k);
  }
  return phi;
}

Schedule repair_schedule(const Instance& original, const Schedule& s,
                         const std::function<void(const RepairStep&)>& observer) {
  const Instance reduced = bipartite_reduce(original);
  bool feasible = false;
  try {
    feasible = is_linear_extension(reduced, s);
  } catch (const Error& e) {
    throw Error(ErrorKind::InfeasibleInput, e.what());
  }
  if (!feasible) throw Error(ErrorKind::InfeasibleInput, "schedule violates the reduced order");

  Schedule cur = s;
  std::vector<std::size_t> idx(cur.size());
  std::size_t iteration = 0;
  while (true) {
    for (std::size_t t = 0; t < cur.size(); ++t) idx[t] = original.index_of(cur[t]);
    // Closest violating pair (k at position a, l at position b > a, l ⊴ k).
    std::size_t best_a = cur.size();
    std::size_t best_b = 0;
    for (std::size_t a = 0; a < cur.size(); ++a) {
      for (std::size_t b = a + 1; b < cur.size(); ++b) {
        if (best_a != cur.size() && b - a >= best_b - best_a) break;
        if (original.precedes(idx[b], idx[a])) {
          best_a = a;
          best_b = b;
          break;
        }
      }
    }
    if (best_a == cur.size()) break;

    const bool move_second = sgn(original.cost(idx[best_b])) < 0;
    const JobId moved = move_second ? cur[best_b] : cur[best_a];
    if (move_second) {
      cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(best_b));
      cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(best_a), moved);
    } else {
      cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(best_b) + 1, moved);
      cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(best_a));
    }
    ++iteration;
    if (observer) observer({iteration, &cur, inversion_potential(original, cur)});
  }
  return cur;
}

Instance reverse_instance(const Instance& inst) {
  std::vector<JobSpec> jobs = inst.job_specs();
  for (auto& j : jobs) j.cost = -j.cost;
  std::vector<Precedence> edges;
  for (const auto& e : inst.precedences()) edges.push_back({e.after, e.before});
  return build_instance(std::move(jobs), std::move(edges));
}

Schedule reverse_schedule(const Schedule& s) { return {s.rbegin(), s.rend()}; }

namespace {

bool nested(const WeightedInterval& a, const WeightedInterval& b) {
  return b.lo <= a.lo && a.hi <= b.hi;
}

bool intersect(const WeightedInterval& a, const WeightedInterval& b) {
  return !(a.hi < b.lo || b.hi < a.lo);
}

bool same_span(const WeightedInterval& a, const WeightedInterval& b) {
  return a.lo == b.lo && a.hi == b.hi;
}

bool properly_overlap(const WeightedInterval& a, const WeightedInterval& b) {
  return intersect(a, b) && !nested(a, b) && !nested(b, a);
}

std::string span_text(const WeightedInterval& x) {
  return "[" + format_cost(x.lo) + "," + format_cost(x.hi) + "]";
}

void validate_system(const std::vector<WeightedInterval>& sys, const char* name) {
  for (std::size_t a = 0; a < sys.size(); ++a) {
    if (sgn(sys[a].w) <= 0) {
      throw Error(ErrorKind::InvalidInput, std::string(name) + " interval " + span_text(sys[a]) +
                                               " needs a positive weight");
    }
    if (sys[a].hi < sys[a].lo) {
      throw Error(ErrorKind::InvalidInput, std::string(name) + " interval " + span_text(sys[a]) +
                                               " has lo > hi");
    }
    for (std::size_t b = a + 1; b < sys.size(); ++b) {
      if (same_span(sys[a], sys[b])) {
        throw Error(ErrorKind::InvalidInput,
                    std::string(name) + " system repeats " + span_text(sys[a]));
      }
      if (properly_overlap(sys[a], sys[b])) {
        throw Error(ErrorKind::InvalidInput, std::string(name) + " system is not laminar: " +
                                                 span_text(sys[a]) + " and " + span_text(sys[b]));
      }
    }
  }
}

const WeightedInterval* find_span(const std::vector<WeightedInterval>& sys,
                                  const WeightedInterval& x) {
  for (const auto& y : sys) {
    if (same_span(x, y)) return &y;
  }
  return nullptr;
}

}  // namespace

void validate_energy(const EnergyBarrierInstance& eb) {
  validate_system(eb.initial, "initial");
  validate_system(eb.final, "final");
  for (const auto& x : eb.initial) {
    if (const auto* y = find_span(eb.final, x); y && y->w != x.w) {
      throw Error(ErrorKind::InvalidInput,
                  "interval " + span_text(x) + " has different weights in the two systems");
    }
  }
}

Cost energy_scale(const EnergyBarrierInstance& eb) {
  mpz_class d = 1;
  for (const auto* sys : {&eb.initial, &eb.final}) {
    for (const auto& x : *sys) d = lcm(d, mpz_class(x.w.get_den()));
  }
  return Cost(d);
}

Instance energy_import(const EnergyBarrierInstance& eb, const Cost& threshold) {
  if (sgn(threshold) < 0) throw Error(ErrorKind::NegativeThreshold, "threshold must be >= 0");
  validate_energy(eb);
  const Cost scale = energy_scale(eb);
  const Cost scaled_threshold = threshold * scale;
  if (!is_integer(scaled_threshold)) {
    throw Error(ErrorKind::NonIntegerWeights, "threshold " + format_cost(threshold) +
                                                  " is not a multiple of 1/" + format_cost(scale));
  }

  std::vector<JobSpec> jobs;
  std::vector<const WeightedInterval*> removed;
  std::vector<const WeightedInterval*> added;
  for (const auto& x : eb.initial) {
    if (!find_span(eb.final, x)) {
      removed.push_back(&x);
      jobs.push_back({"I" + span_text(x), x.w * scale});
    }
  }
  for (const auto& x : eb.final) {
    if (!find_span(eb.initial, x)) {
      added.push_back(&x);
      jobs.push_back({"F" + span_text(x), -x.w * scale});
    }
  }
  jobs.push_back({"jB", -scaled_threshold});

  std::vector<Precedence> edges;
  for (const auto* i : removed) {
    for (const auto* f : added) {
      if (properly_overlap(*i, *f)) edges.push_back({"I" + span_text(*i), "F" + span_text(*f)});
    }
  }
  return build_instance(std::move(jobs), std::move(edges));
}

Cost energy_barrier_value(const EnergyBarrierInstance& eb, std::size_t ideal_cap,
                          const std::function<void(const BarrierProbe&)>& observer) {
  validate_energy(eb);
  const Cost scale = energy_scale(eb);
  Cost total = 0;
  for (const auto* sys : {&eb.initial, &eb.final}) {
    for (const auto& x : *sys) total += x.w;
  }
  // Search over integers in scaled units; the budget is then an integer too,
  // so "budget 0" is an exact test.
  mpz_class lo = 0;
  mpz_class hi = mpz_class(Cost(total * scale));
  while (lo < hi) {
    const mpz_class mid = (lo + hi) / 2;
    const Cost threshold = Cost(mid) / scale;
    const Cost budget = min_budget_exact(energy_import(eb, threshold), ideal_cap).budget;
    if (observer) observer({threshold, budget});
    if (sgn(budget) == 0) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return Cost(lo) / scale;
}

}  // namespace minbudget
