#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "minbudget/oracle.hpp"
#include "minbudget/poset.hpp"

namespace minbudget {

/// Keeps exactly the closure pairs from cost >= 0 jobs to cost < 0 jobs.
/// The minimum budget is unchanged.
Instance bipartite_reduce(const Instance& inst);

/// Number of pairs (k, l) with k scheduled before l although l precedes k.
std::size_t inversion_potential(const Instance& inst, const Schedule& s);

struct RepairStep {
  std::size_t iteration = 0;
  const Schedule* schedule = nullptr;  // after the move
  std::size_t potential = 0;           // after the move
};

/// Turns a schedule feasible for bipartite_reduce(original) into one feasible
/// for `original` without raising the budget. Each step takes the violating
/// pair with the fewest jobs in between (earliest first job on ties) and
/// moves a negative second job just before the first, or else the first job
/// just after the second. Throws InfeasibleInput.
Schedule repair_schedule(const Instance& original, const Schedule& s,
                         const std::function<void(const RepairStep&)>& observer = {});

/// Relation flipped, costs negated.
Instance reverse_instance(const Instance& inst);
Schedule reverse_schedule(const Schedule& s);

struct WeightedInterval {
  Cost lo;
  Cost hi;
  Cost w;
};

/// Two laminar systems of closed intervals with positive weights.
struct EnergyBarrierInstance {
  std::vector<WeightedInterval> initial;
  std::vector<WeightedInterval> final;
};

/// Throws InvalidInput unless both systems are laminar, free of duplicate
/// intervals, weights are positive, lo <= hi, and intervals present in both
/// systems carry the same weight.
void validate_energy(const EnergyBarrierInstance& eb);

/// Least common multiple of all weight denominators.
Cost energy_scale(const EnergyBarrierInstance& eb);

/// Scheduling instance in scaled units: one job per interval of the
/// symmetric difference (initial-only "I[lo,hi]" at +w·D, final-only
/// "F[lo,hi]" at −w·D) and "jB" at −B·D, where D is energy_scale. An
/// initial-only interval precedes every final-only interval it properly
/// overlaps. Errors: NegativeThreshold, NonIntegerWeights, InvalidInput.
Instance energy_import(const EnergyBarrierInstance& eb, const Cost& threshold);

struct BarrierProbe {
  Cost threshold;
  Cost min_budget;  // of energy_import(eb, threshold)
};

/// Smallest threshold whose imported instance has minimum budget 0, by
/// binary search over multiples of 1/D in [0, w(I) + w(F)].
Cost energy_barrier_value(const EnergyBarrierInstance& eb,
                          std::size_t ideal_cap = kDefaultIdealCap,
                          const std::function<void(const BarrierProbe&)>& observer = {});

}  // namespace minbudget
