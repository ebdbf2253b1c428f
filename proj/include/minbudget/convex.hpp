#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>

#include "minbudget/cbr.hpp"
#include "minbudget/poset.hpp"

namespace minbudget {

enum class ConvexSide { NMinus, NPlus };

/// `order` is a linear order on the sink side of the instance the solver
/// runs on: the original instance for NMinus, its reverse for NPlus.
struct ConvexCertificate {
  Schedule order;
  ConvexSide side = ConvexSide::NMinus;
};

inline constexpr std::size_t kConvexSearchCap = 10;

/// Every closure pair goes from a job of cost >= 0 to a job of cost < 0.
bool is_bipartite(const Instance& inst);

/// Jobs the convex dynamic program treats as sinks: negative jobs, plus
/// zero-cost jobs that have a predecessor. On a bipartite instance these
/// are exactly the negative jobs; the zero-cost case arises on reverses.
std::vector<std::size_t> convex_sinks(const Instance& inst);

/// True iff `order` lists the sinks of `inst` exactly once and every
/// source's successor set occupies consecutive positions.
bool is_convex_order(const Instance& inst, const Schedule& order);

/// Lexicographically first consecutive arrangement of the sinks, found by
/// pruned backtracking, or nullopt. Throws NotConvex beyond `search_cap`
/// sinks. Requires every closure pair to run from a source to a sink.
std::optional<Schedule> find_convex_order(const Instance& inst,
                                          std::size_t search_cap = kConvexSearchCap);

/// Certificate for the NMinus side, falling back to the reversed instance.
/// A supplied order is verified against the NMinus side only.
/// Errors: NotBipartite, NotConvex.
ConvexCertificate convex_recognize(const Instance& inst,
                                   const std::optional<Schedule>& supplied = std::nullopt,
                                   std::size_t search_cap = kConvexSearchCap);

/// Test hooks into the dynamic program.
struct ConvexHooks {
  /// P(j) ∪ {j} for each guessed first sink, scheduled as one block.
  std::function<void(const Block&)> on_guess;
  /// Stored solution for the sub-instance made of `jobs`.
  std::function<void(const JobSet& jobs, const BlockSchedule&)> on_state;
};

/// The convex dynamic program. `cert` must certify `inst` itself (the side
/// tag is ignored). Errors: NotConvex when `cert` does not verify.
BlockSchedule convex_solve(const Instance& inst, const ConvexCertificate& cert,
                           const ConvexHooks& hooks = {});

/// Index of the ⪯-minimal triple; the earliest index wins ties.
/// Throws EmptyNegativeSet on empty input.
std::size_t guess_first_negative(std::span<const CbrTriple> first_blocks);

enum class SideChoice { Auto, NMinus, NPlus };

struct ConvexResult {
  ConvexSide side = ConvexSide::NMinus;
  Cost budget;
  Schedule schedule;
  /// Only for the NMinus side.
  std::optional<BlockSchedule> certificate;
};

/// NMinus: convex_solve. NPlus: solve the reverse, reverse the schedule, and
/// report minus the reversed solution's return. Errors: NotBipartite,
/// NotConvex.
ConvexResult solve_convex_auto(const Instance& inst, SideChoice side = SideChoice::Auto,
                               const std::optional<Schedule>& supplied = std::nullopt,
                               std::size_t search_cap = kConvexSearchCap);

}  // namespace minbudget
