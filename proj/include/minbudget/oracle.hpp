#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "minbudget/poset.hpp"

namespace minbudget {

inline constexpr std::size_t kDefaultIdealCap = std::size_t{1} << 20;
inline constexpr std::size_t kNaiveJobCap = 9;

/// Minimum budget of every ideal of an instance, computed over the ideal
/// lattice:
///
///   B[{}] = 0,   B[I] = min over maximal j in I of max(B[I \ {j}], c(I)).
///
/// Every feasible schedule of I walks a chain of ideals from {} to I, and the
/// prefix costs it meets are exactly the costs of those ideals, so B[I] is
/// b(I). Ties pick the smallest job id, which fixes the traceback.
class IdealDpTable {
 public:
  explicit IdealDpTable(const Instance& inst, std::size_t ideal_cap = kDefaultIdealCap);

  const Instance& instance() const { return inst_; }
  std::size_t size() const { return masks_.size(); }

  /// Ideals in canonical order (cardinality, then lexicographic ids).
  std::uint64_t mask(std::size_t k) const { return masks_[k]; }
  JobSet ideal(std::size_t k) const;
  CbrTriple stats_at(std::size_t k) const;
  std::optional<std::size_t> find(std::uint64_t mask) const;

  bool is_ideal(const JobSet& sub) const;
  /// Throws InvalidInput when `ideal` is not an ideal of the instance.
  const Cost& budget(const JobSet& ideal) const;
  CbrTriple stats(const JobSet& ideal) const;
  std::optional<JobId> last_job(const JobSet& ideal) const;
  Schedule optimal_schedule(const JobSet& ideal) const;
  Schedule optimal_schedule_of_mask(std::uint64_t mask) const;

 private:
  struct Entry {
    Cost cost;
    Cost best_budget;
    int last_job = -1;
  };

  std::size_t require(const JobSet& ideal) const;

  Instance inst_;
  std::vector<std::uint64_t> masks_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<Entry> entries_;
};

struct ExactSolution {
  Cost budget;
  Schedule schedule;
};

/// b(N) and an optimal schedule, via IdealDpTable. Throws TooLarge.
ExactSolution min_budget_exact(const Instance& inst, std::size_t ideal_cap = kDefaultIdealCap);

/// (c, b, r) of an arbitrary subset, b taken over the restricted instance.
CbrTriple subset_cbr(const Instance& inst, const JobSet& sub,
                     std::size_t ideal_cap = kDefaultIdealCap);

/// Minimum budget over an explicit enumeration of all linear extensions.
/// Independent of the lattice DP; at most 9 jobs.
Cost naive_min_budget(const Instance& inst);

}  // namespace minbudget
