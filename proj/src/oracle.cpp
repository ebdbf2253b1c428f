#include "minbudget/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "ideal_lattice.hpp"
#include "minbudget/error.hpp"

namespace minbudget {

using detail::bit;
using detail::Mask;

IdealDpTable::IdealDpTable(const Instance& inst, std::size_t ideal_cap)
    : inst_(inst), masks_(detail::ideal_masks(inst, ideal_cap)) {
  const auto succs = detail::successor_masks(inst_);
  index_.reserve(masks_.size());
  entries_.resize(masks_.size());
  for (std::size_t k = 0; k < masks_.size(); ++k) {
    const Mask ideal = masks_[k];
    index_.emplace(ideal, k);
    Entry& e = entries_[k];
    if (ideal == 0) {
      e.cost = 0;
      e.best_budget = 0;
      continue;
    }
    // Cardinality order guarantees every I \ {j} is already filled in.
    bool have = false;
    for (Mask m = ideal; m != 0; m &= m - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(m));
      if ((succs[j] & ideal) != 0) continue;  // j is not maximal in I
      const Entry& prev = entries_[index_.at(ideal & ~bit(j))];
      if (!have) e.cost = prev.cost + inst_.cost(j);
      const Cost& candidate = prev.best_budget > e.cost ? prev.best_budget : e.cost;
      if (!have || candidate < e.best_budget) {
        e.best_budget = candidate;
        e.last_job = static_cast<int>(j);
        have = true;
      }
    }
  }
}

JobSet IdealDpTable::ideal(std::size_t k) const { return detail::mask_to_set(inst_, masks_[k]); }

CbrTriple IdealDpTable::stats_at(std::size_t k) const {
  const Entry& e = entries_[k];
  return {e.cost, e.best_budget, e.cost - e.best_budget};
}

std::optional<std::size_t> IdealDpTable::find(std::uint64_t mask) const {
  const auto it = index_.find(mask);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool IdealDpTable::is_ideal(const JobSet& sub) const {
  for (const auto& id : sub) {
    if (!inst_.contains(id)) return false;
  }
  return find(detail::to_mask(inst_, sub)).has_value();
}

std::size_t IdealDpTable::require(const JobSet& ideal) const {
  const auto k = find(detail::to_mask(inst_, ideal));
  if (!k) throw Error(ErrorKind::InvalidInput, "job set is not an ideal of the instance");
  return *k;
}

const Cost& IdealDpTable::budget(const JobSet& ideal) const {
  return entries_[require(ideal)].best_budget;
}

CbrTriple IdealDpTable::stats(const JobSet& ideal) const { return stats_at(require(ideal)); }

std::optional<JobId> IdealDpTable::last_job(const JobSet& ideal) const {
  const Entry& e = entries_[require(ideal)];
  if (e.last_job < 0) return std::nullopt;
  return inst_.id(static_cast<std::size_t>(e.last_job));
}

Schedule IdealDpTable::optimal_schedule_of_mask(std::uint64_t mask) const {
  Schedule reversed;
  Mask m = mask;
  while (m != 0) {
    const auto k = find(m);
    if (!k) throw Error(ErrorKind::InvalidInput, "job set is not an ideal of the instance");
    const auto j = static_cast<std::size_t>(entries_[*k].last_job);
    reversed.push_back(inst_.id(j));
    m &= ~bit(j);
  }
  return {reversed.rbegin(), reversed.rend()};
}

Schedule IdealDpTable::optimal_schedule(const JobSet& ideal) const {
  return optimal_schedule_of_mask(masks_[require(ideal)]);
}

ExactSolution min_budget_exact(const Instance& inst, std::size_t ideal_cap) {
  const IdealDpTable table(inst, ideal_cap);
  const Mask full = inst.empty() ? 0 : (inst.size() == 64 ? ~Mask{0} : bit(inst.size()) - 1);
  const auto k = *table.find(full);
  return {table.stats_at(k).b, table.optimal_schedule_of_mask(full)};
}

CbrTriple subset_cbr(const Instance& inst, const JobSet& sub, std::size_t ideal_cap) {
  if (sub.empty()) return {0, 0, 0};
  const Instance part = restrict(inst, sub);
  const auto exact = min_budget_exact(part, ideal_cap);
  Cost c = total_cost(inst, sub);
  Cost r = c - exact.budget;
  return {std::move(c), exact.budget, std::move(r)};
}

namespace {

struct NaiveSearch {
  const Instance& inst;
  std::vector<std::size_t> remaining_preds;
  std::vector<bool> used;
  Cost best;
  bool have_best = false;

  void run(std::size_t placed, const Cost& prefix, const Cost& peak) {
    if (placed == inst.size()) {
      if (!have_best || peak < best) {
        best = peak;
        have_best = true;
      }
      return;
    }
    for (std::size_t j = 0; j < inst.size(); ++j) {
      if (used[j] || remaining_preds[j] != 0) continue;
      used[j] = true;
      const auto& succ = inst.successors(j);
      for (auto k = succ.find_first(); k != Bitset::npos; k = succ.find_next(k)) --remaining_preds[k];
      Cost next = prefix + inst.cost(j);
      run(placed + 1, next, next > peak ? next : peak);
      for (auto k = succ.find_first(); k != Bitset::npos; k = succ.find_next(k)) ++remaining_preds[k];
      used[j] = false;
    }
  }
};

}  // namespace

Cost naive_min_budget(const Instance& inst) {
  if (inst.size() > kNaiveJobCap) {
    throw Error(ErrorKind::TooLarge, "naive enumeration capped at 9 jobs, instance has " +
                                         std::to_string(inst.size()));
  }
  NaiveSearch search{inst, std::vector<std::size_t>(inst.size()),
                     std::vector<bool>(inst.size(), false), Cost(0)};
  for (std::size_t j = 0; j < inst.size(); ++j) search.remaining_preds[j] = inst.predecessors(j).count();
  search.run(0, Cost(0), Cost(0));
  return search.best;
}

}  // namespace minbudget
