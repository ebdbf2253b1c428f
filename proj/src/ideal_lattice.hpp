#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "minbudget/poset.hpp"

namespace minbudget::detail {

using Mask = std::uint64_t;

inline constexpr std::size_t kMaxMaskJobs = 64;

inline Mask bit(std::size_t i) { return Mask{1} << i; }

/// predecessors(i) as masks. Throws TooLarge beyond 64 jobs.
std::vector<Mask> predecessor_masks(const Instance& inst);
std::vector<Mask> successor_masks(const Instance& inst);

/// All ideals as masks over job indices, ordered by cardinality and then
/// lexicographically on sorted index lists. Because cardinality strictly
/// grows along every lattice edge, this order is also a topological order of
/// the ideal lattice. Throws TooLarge when more than `max_count` ideals exist.
std::vector<Mask> ideal_masks(const Instance& inst, std::size_t max_count);

Mask to_mask(const Instance& inst, const JobSet& sub);
JobSet mask_to_set(const Instance& inst, Mask m);

}  // namespace minbudget::detail
