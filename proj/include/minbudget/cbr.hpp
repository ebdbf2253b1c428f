#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "minbudget/oracle.hpp"
#include "minbudget/poset.hpp"

namespace minbudget {

/// The cbr-preorder as a weak ordering: `less` means t1 strictly precedes t2.
/// Negative-cost triples come first and compare by (b, r); nonnegative ones
/// compare by r alone.
std::weak_ordering cbr_compare(const CbrTriple& t1, const CbrTriple& t2);

inline bool cbr_precedes_or_equiv(const CbrTriple& t1, const CbrTriple& t2) {
  return cbr_compare(t1, t2) <= 0;
}

/// A contiguous piece of a schedule. When certified, `jobs` is an
/// irreducible interval and `order` an optimal schedule of it.
struct Block {
  JobSet jobs;
  Schedule order;
  CbrTriple stats;
};

/// Block with jobs and stats derived from `order`.
Block make_block(const Instance& inst, Schedule order);

struct BlockSchedule {
  std::vector<Block> blocks;

  Schedule flatten() const;
  /// Fold of the block stats with concat_stats.
  CbrTriple stats() const;
  JobSet jobs() const;
  std::size_t job_count() const;
};

bool is_irreducible(const Instance& inst, const JobSet& interval,
                    std::size_t ideal_cap = kDefaultIdealCap);

struct IisReport {
  bool linear_extension = false;
  bool intervals = false;
  bool irreducible = false;
  bool optimal_blocks = false;
  bool nondecreasing = false;
  std::vector<std::string> notes;

  bool pass() const {
    return linear_extension && intervals && irreducible && optimal_blocks && nondecreasing;
  }
};

/// Verifies an increasing-irreducible-structure certificate condition by
/// condition against the oracle. Throws CoverageMismatch when the blocks do
/// not partition the instance or a block order does not match its job set.
IisReport check_iis(const Instance& inst, const BlockSchedule& bs,
                    std::size_t ideal_cap = kDefaultIdealCap);

/// Reference solver: repeatedly schedule an inclusion-maximal cbr-minimal
/// ideal of the remaining jobs, optimally. Exponential; desk scale only.
BlockSchedule generic_solve(const Instance& inst, std::size_t ideal_cap = kDefaultIdealCap);

/// The five consecutive parts L, I, M, J, R of a schedule; I and J are meant
/// to be optimal schedules of their job sets.
struct SwapParts {
  Schedule left;
  Schedule first;
  Schedule middle;
  Schedule second;
  Schedule right;
};

/// Returns (L J I M R, L M J I R). Feasibility is not guaranteed.
/// Throws PartitionInvalid unless the parts partition the instance.
std::pair<Schedule, Schedule> consistency_swap(const Instance& inst, const SwapParts& parts);

/// Moves an irreducible interval into one contiguous, optimally ordered run
/// without raising the budget. The result need not be feasible.
/// Errors: NotFeasibleInput, NotIrreducible.
Schedule contiguify(const Instance& inst, const Schedule& s, const Block& block,
                    std::size_t ideal_cap = kDefaultIdealCap);

struct PrefixMode {
  enum class Kind { MinCostWithBudgetCap, MinReturn, MinIdeal };
  Kind kind = Kind::MinReturn;
  Cost budget_cap = 0;

  static PrefixMode min_cost_with_budget_cap(Cost cap) {
    return {Kind::MinCostWithBudgetCap, std::move(cap)};
  }
  static PrefixMode min_return() { return {Kind::MinReturn, 0}; }
  static PrefixMode min_ideal() { return {Kind::MinIdeal, 0}; }
};

/// Number l of leading blocks whose union answers the query. Works on the
/// folded block stats only. Throws NotCertified when the blocks carry
/// inconsistent triples or decreasing keys.
std::size_t prefix_select(std::span<const Block> blocks, const PrefixMode& mode);

/// Cheap structural check shared by the solvers: every triple satisfies the
/// cbr invariants and keys never decrease. Throws NotCertified.
void require_certified_shape(std::span<const Block> blocks);

}  // namespace minbudget
