#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "minbudget/cbr.hpp"
#include "minbudget/poset.hpp"

namespace minbudget {

struct SpTree;
using SpNode = std::shared_ptr<const SpTree>;

/// Binary series-parallel decomposition tree. Series means every job of
/// `left` precedes every job of `right`.
struct SpTree {
  enum class Kind { Leaf, Series, Parallel };

  Kind kind = Kind::Leaf;
  JobId job;  // leaves only
  SpNode left;
  SpNode right;

  static SpNode leaf(JobId id);
  static SpNode series(SpNode l, SpNode r);
  static SpNode parallel(SpNode l, SpNode r);
};

/// Leaves left to right.
std::vector<JobId> sp_leaves(const SpNode& tree);

/// Compact text form: "a", "S(a,b)", "P(S(a,b),c)".
std::string sp_to_string(const SpNode& tree);

/// Decomposition tree of the instance, or NotSeriesParallel. The empty
/// instance yields a null tree.
SpNode sp_recognize(const Instance& inst);

/// Throws TreeMismatch unless the leaves are exactly the jobs (each once) and
/// the generated order equals the closure.
void verify_sp_tree(const Instance& inst, const SpNode& tree);

/// Stable merge by cbr key; on ties the block of bs1 goes first.
/// Throws JobOverlap when the inputs share a job.
BlockSchedule parallel_merge(const BlockSchedule& bs1, const BlockSchedule& bs2);

/// Re-partitions bs1 followed by bs2 into increasing irreducible blocks,
/// assuming every job of bs1 precedes every job of bs2. Job order is kept,
/// only block boundaries move. Throws NotCertified on malformed inputs.
BlockSchedule series_compose(const BlockSchedule& bs1, const BlockSchedule& bs2);

/// Throws TreeMismatch when the tree does not represent the instance.
BlockSchedule sp_solve(const Instance& inst, const SpNode& tree);

/// Recognize, then solve.
BlockSchedule sp_solve(const Instance& inst);

}  // namespace minbudget
