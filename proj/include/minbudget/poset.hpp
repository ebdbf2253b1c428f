#pragma once

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "minbudget/cost.hpp"

namespace minbudget {

/// Opaque job identifier. Ordering is plain string ordering; every
/// deterministic tie-break in the library refers to it.
struct JobId {
  std::string value;

  JobId() = default;
  JobId(std::string v) : value(std::move(v)) {}  // NOLINT: implicit by intent
  JobId(const char* v) : value(v) {}             // NOLINT

  auto operator<=>(const JobId&) const = default;
  bool operator==(const JobId&) const = default;
};

std::ostream& operator<<(std::ostream& os, const JobId& id);

using Schedule = std::vector<JobId>;
using JobSet = std::set<JobId>;
using Bitset = boost::dynamic_bitset<>;

struct JobSpec {
  JobId id;
  Cost cost;
};

struct Precedence {
  JobId before;
  JobId after;
};

/// Cost, budget and return of a schedule or of a job set.
/// Invariants: b >= 0, r <= 0, c == b + r.
struct CbrTriple {
  Cost c;
  Cost b;
  Cost r;

  bool operator==(const CbrTriple&) const = default;
};

std::ostream& operator<<(std::ostream& os, const CbrTriple& t);

/// Jobs with exact costs and an acyclic precedence relation. Jobs are kept
/// sorted by id, so job index order is id order. The strict transitive
/// closure is computed once at construction.
class Instance {
 public:
  Instance() = default;

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  const std::vector<JobId>& ids() const { return ids_; }
  const JobId& id(std::size_t i) const { return ids_[i]; }
  const Cost& cost(std::size_t i) const { return costs_[i]; }
  const std::vector<Cost>& costs() const { return costs_; }

  /// Throws ErrorKind::UnknownJob.
  std::size_t index_of(const JobId& id) const;
  bool contains(const JobId& id) const { return index_.contains(id.value); }
  const Cost& cost_of(const JobId& id) const { return costs_[index_of(id)]; }

  /// i strictly precedes j in the transitive closure.
  bool precedes(std::size_t i, std::size_t j) const { return succ_[i][j]; }
  const Bitset& successors(std::size_t i) const { return succ_[i]; }
  const Bitset& predecessors(std::size_t i) const { return pred_[i]; }

  /// Declared edges as index pairs, deduplicated and sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const {
    return edges_;
  }
  std::vector<std::pair<std::size_t, std::size_t>> closure_pairs() const;
  /// Covering pairs of the closure (the Hasse diagram).
  std::vector<std::pair<std::size_t, std::size_t>> hasse_pairs() const;

  std::vector<JobSpec> job_specs() const;
  std::vector<Precedence> precedences() const;

  Bitset to_bitset(const JobSet& sub) const;
  JobSet to_set(const Bitset& bits) const;

  friend Instance build_instance(std::vector<JobSpec> jobs,
                                 std::vector<Precedence> edges);

 private:
  std::vector<JobId> ids_;
  std::vector<Cost> costs_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<Bitset> succ_;
  std::vector<Bitset> pred_;
};

/// Validates and builds an instance. Errors: CycleDetected, DuplicateJob,
/// UnknownEndpoint.
Instance build_instance(std::vector<JobSpec> jobs,
                        std::vector<Precedence> edges);

struct SubsetClass {
  bool is_ideal = false;
  bool is_filter = false;
  bool is_interval = false;
};

SubsetClass classify_subset(const Instance& inst, const JobSet& sub);
SubsetClass classify_subset(const Instance& inst, const Bitset& sub);

Bitset down_closure(const Instance& inst, const Bitset& sub);
Bitset up_closure(const Instance& inst, const Bitset& sub);

inline constexpr std::size_t kDefaultEnumerationCap = 24;

/// Every ideal exactly once, ordered by cardinality and then
/// lexicographically on the sorted id lists. Throws TooLarge when the
/// instance has more than `job_cap` jobs.
std::vector<JobSet> enumerate_ideals(const Instance& inst,
                                     std::size_t job_cap = kDefaultEnumerationCap);

/// Induced sub-instance. Throws UnknownJob.
Instance restrict(const Instance& inst, const JobSet& sub);

/// Throws CoverageMismatch unless `s` is a permutation of all jobs.
bool is_linear_extension(const Instance& inst, const Schedule& s);

/// Stats of any sequence of known jobs (need not cover the instance).
/// Throws MissingCost for ids the instance does not know.
CbrTriple schedule_stats(const Instance& inst, const Schedule& s);

/// Stats of a raw cost sequence.
CbrTriple sequence_stats(std::span<const Cost> costs);

CbrTriple concat_stats(const CbrTriple& first, const CbrTriple& second);

Cost total_cost(const Instance& inst, const JobSet& sub);

}  // namespace minbudget

template <>
struct std::hash<minbudget::JobId> {
  std::size_t operator()(const minbudget::JobId& id) const noexcept {
    return std::hash<std::string>{}(id.value);
  }
};
