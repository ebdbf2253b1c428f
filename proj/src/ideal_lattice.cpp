#include "ideal_lattice.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_set>

#include "minbudget/error.hpp"

namespace minbudget::detail {
namespace {

void require_mask_size(const Instance& inst) {
  if (inst.size() > kMaxMaskJobs) {
    throw Error(ErrorKind::TooLarge, "ideal lattice limited to 64 jobs, instance has " +
                                         std::to_string(inst.size()));
  }
}

Mask to_mask(const Bitset& bits) {
  Mask m = 0;
  for (auto i = bits.find_first(); i != Bitset::npos; i = bits.find_next(i)) m |= bit(i);
  return m;
}

// Same cardinality assumed: the set holding the lowest differing element is
// lexicographically smaller.
bool lex_less(Mask a, Mask b) {
  const Mask diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

}  // namespace

std::vector<Mask> predecessor_masks(const Instance& inst) {
  require_mask_size(inst);
  std::vector<Mask> out(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) out[i] = to_mask(inst.predecessors(i));
  return out;
}

std::vector<Mask> successor_masks(const Instance& inst) {
  require_mask_size(inst);
  std::vector<Mask> out(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) out[i] = to_mask(inst.successors(i));
  return out;
}

std::vector<Mask> ideal_masks(const Instance& inst, std::size_t max_count) {
  const auto preds = predecessor_masks(inst);
  const std::size_t n = inst.size();
  std::vector<Mask> all{0};
  std::vector<Mask> level{0};
  for (std::size_t k = 0; k < n; ++k) {
    std::unordered_set<Mask> next_set;
    for (Mask ideal : level) {
      for (std::size_t j = 0; j < n; ++j) {
        if ((ideal & bit(j)) == 0 && (preds[j] & ~ideal) == 0) next_set.insert(ideal | bit(j));
      }
    }
    std::vector<Mask> next(next_set.begin(), next_set.end());
    std::sort(next.begin(), next.end(), lex_less);
    if (all.size() + next.size() > max_count) {
      throw Error(ErrorKind::TooLarge,
                  "ideal count exceeds cap of " + std::to_string(max_count));
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

Mask to_mask(const Instance& inst, const JobSet& sub) {
  require_mask_size(inst);
  Mask m = 0;
  for (const auto& id : sub) m |= bit(inst.index_of(id));
  return m;
}

JobSet mask_to_set(const Instance& inst, Mask m) {
  JobSet out;
  while (m != 0) {
    const auto i = static_cast<std::size_t>(std::countr_zero(m));
    out.insert(inst.id(i));
    m &= m - 1;
  }
  return out;
}

}  // namespace minbudget::detail
