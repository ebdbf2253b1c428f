#include "minbudget/cbr.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "ideal_lattice.hpp"
#include "minbudget/error.hpp"

namespace minbudget {

namespace {

std::weak_ordering compare_costs(const Cost& a, const Cost& b) {
  const int s = cmp(a, b);
  if (s < 0) return std::weak_ordering::less;
  if (s > 0) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

std::string describe(const JobSet& jobs) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& id : jobs) {
    if (!first) os << ',';
    os << id;
    first = false;
  }
  os << '}';
  return os.str();
}

// Irreducibility against a table built on the restriction to the interval.
bool irreducible_in(const IdealDpTable& table) {
  const std::size_t full = table.size() - 1;  // canonical order ends with the whole set
  const CbrTriple whole = table.stats_at(full);
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (cbr_compare(whole, table.stats_at(k)) > 0) return false;
  }
  return true;
}

}  // namespace

std::weak_ordering cbr_compare(const CbrTriple& t1, const CbrTriple& t2) {
  const bool neg1 = sgn(t1.c) < 0;
  const bool neg2 = sgn(t2.c) < 0;
  if (neg1 != neg2) return neg1 ? std::weak_ordering::less : std::weak_ordering::greater;
  if (neg1) {
    if (auto by_budget = compare_costs(t1.b, t2.b); by_budget != 0) return by_budget;
  }
  return compare_costs(t1.r, t2.r);
}

Block make_block(const Instance& inst, Schedule order) {
  Block block;
  block.jobs = JobSet(order.begin(), order.end());
  block.stats = schedule_stats(inst, order);
  block.order = std::move(order);
  return block;
}

Schedule BlockSchedule::flatten() const {
  Schedule out;
  out.reserve(job_count());
  for (const auto& b : blocks) out.insert(out.end(), b.order.begin(), b.order.end());
  return out;
}

CbrTriple BlockSchedule::stats() const {
  CbrTriple acc{0, 0, 0};
  for (const auto& b : blocks) acc = concat_stats(acc, b.stats);
  return acc;
}

JobSet BlockSchedule::jobs() const {
  JobSet out;
  for (const auto& b : blocks) out.insert(b.jobs.begin(), b.jobs.end());
  return out;
}

std::size_t BlockSchedule::job_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.order.size();
  return n;
}

bool is_irreducible(const Instance& inst, const JobSet& interval, std::size_t ideal_cap) {
  if (!classify_subset(inst, interval).is_interval) {
    throw Error(ErrorKind::NotAnInterval, describe(interval) + " is not an interval");
  }
  if (interval.empty()) return true;
  const IdealDpTable table(restrict(inst, interval), ideal_cap);
  return irreducible_in(table);
}

IisReport check_iis(const Instance& inst, const BlockSchedule& bs, std::size_t ideal_cap) {
  Bitset covered(inst.size());
  for (const auto& block : bs.blocks) {
    if (JobSet(block.order.begin(), block.order.end()) != block.jobs ||
        block.order.size() != block.jobs.size()) {
      throw Error(ErrorKind::CoverageMismatch,
                  "block order does not match its job set " + describe(block.jobs));
    }
    for (const auto& id : block.jobs) {
      if (!inst.contains(id)) {
        throw Error(ErrorKind::CoverageMismatch, "block job '" + id.value + "' not in instance");
      }
      const auto i = inst.index_of(id);
      if (covered[i]) throw Error(ErrorKind::CoverageMismatch, "job '" + id.value + "' in two blocks");
      covered.set(i);
    }
  }
  if (!covered.all()) {
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (!covered[i]) {
        throw Error(ErrorKind::CoverageMismatch, "job '" + inst.id(i).value + "' not in any block");
      }
    }
  }

  IisReport report;
  report.linear_extension = is_linear_extension(inst, bs.flatten());
  if (!report.linear_extension) report.notes.push_back("concatenated schedule violates precedence");
  report.intervals = true;
  report.irreducible = true;
  report.optimal_blocks = true;
  report.nondecreasing = true;

  std::vector<CbrTriple> actual;
  actual.reserve(bs.blocks.size());
  for (const auto& block : bs.blocks) {
    const CbrTriple recomputed = schedule_stats(inst, block.order);
    actual.push_back(recomputed);
    const bool interval = classify_subset(inst, block.jobs).is_interval;
    if (!interval) {
      report.intervals = false;
      report.irreducible = false;
      report.notes.push_back(describe(block.jobs) + " is not an interval");
    }
    const IdealDpTable table(restrict(inst, block.jobs), ideal_cap);
    if (interval && !irreducible_in(table)) {
      report.irreducible = false;
      report.notes.push_back(describe(block.jobs) + " is not irreducible");
    }
    if (!(recomputed == block.stats)) {
      report.optimal_blocks = false;
      report.notes.push_back(describe(block.jobs) + " declares stats that differ from its order");
    }
    const CbrTriple best = table.stats_at(table.size() - 1);
    if (recomputed.b != best.b) {
      report.optimal_blocks = false;
      report.notes.push_back(describe(block.jobs) + " scheduled with budget " +
                             format_cost(recomputed.b) + ", optimum is " + format_cost(best.b));
    }
  }
  for (std::size_t i = 1; i < actual.size(); ++i) {
    if (cbr_compare(actual[i - 1], actual[i]) > 0) {
      report.nondecreasing = false;
      report.notes.push_back("block " + std::to_string(i - 1) + " strictly follows block " +
                             std::to_string(i) + " in the cbr-preorder");
    }
  }
  return report;
}

BlockSchedule generic_solve(const Instance& inst, std::size_t ideal_cap) {
  BlockSchedule out;
  JobSet remaining(inst.ids().begin(), inst.ids().end());
  while (!remaining.empty()) {
    const IdealDpTable table(restrict(inst, remaining), ideal_cap);
    std::size_t minimal = 0;
    for (std::size_t k = 1; k < table.size(); ++k) {
      if (cbr_compare(table.stats_at(k), table.stats_at(minimal)) < 0) minimal = k;
    }
    const CbrTriple key = table.stats_at(minimal);
    // Canonical order is by cardinality then lexicographic, so the last
    // cardinality wins and within it the first member wins.
    std::size_t chosen = 0;
    int chosen_card = 0;
    for (std::size_t k = 1; k < table.size(); ++k) {
      if (cbr_compare(table.stats_at(k), key) != 0) continue;
      const int card = std::popcount(table.mask(k));
      if (card > chosen_card) {
        chosen = k;
        chosen_card = card;
      }
    }
    // A nonempty maximal member always exists: if {} is minimal, so is N.
    Block block = make_block(inst, table.optimal_schedule_of_mask(table.mask(chosen)));
    for (const auto& id : block.jobs) remaining.erase(id);
    out.blocks.push_back(std::move(block));
  }
  return out;
}

std::pair<Schedule, Schedule> consistency_swap(const Instance& inst, const SwapParts& parts) {
  Bitset seen(inst.size());
  std::size_t count = 0;
  for (const Schedule* part : {&parts.left, &parts.first, &parts.middle, &parts.second, &parts.right}) {
    for (const auto& id : *part) {
      if (!inst.contains(id)) throw Error(ErrorKind::PartitionInvalid, "job '" + id.value + "' unknown");
      const auto i = inst.index_of(id);
      if (seen[i]) throw Error(ErrorKind::PartitionInvalid, "job '" + id.value + "' in two parts");
      seen.set(i);
      ++count;
    }
  }
  if (count != inst.size()) {
    throw Error(ErrorKind::PartitionInvalid, "parts do not cover every job");
  }
  auto join = [](std::initializer_list<const Schedule*> pieces) {
    Schedule s;
    for (const auto* p : pieces) s.insert(s.end(), p->begin(), p->end());
    return s;
  };
  return {join({&parts.left, &parts.second, &parts.first, &parts.middle, &parts.right}),
          join({&parts.left, &parts.middle, &parts.second, &parts.first, &parts.right})};
}

Schedule contiguify(const Instance& inst, const Schedule& s, const Block& block,
                    std::size_t ideal_cap) {
  bool feasible = false;
  try {
    feasible = is_linear_extension(inst, s);
  } catch (const Error& e) {
    throw Error(ErrorKind::NotFeasibleInput, e.what());
  }
  if (!feasible) throw Error(ErrorKind::NotFeasibleInput, "input schedule violates precedence");
  if (block.jobs.empty()) return s;
  if (JobSet(block.order.begin(), block.order.end()) != block.jobs ||
      block.order.size() != block.jobs.size()) {
    throw Error(ErrorKind::InvalidInput, "block order does not match its job set");
  }
  bool irreducible = false;
  try {
    irreducible = is_irreducible(inst, block.jobs, ideal_cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAnInterval) throw;
  }
  if (!irreducible) {
    throw Error(ErrorKind::NotIrreducible, describe(block.jobs) + " is not an irreducible interval");
  }

  const CbrTriple target = schedule_stats(inst, block.order);
  const std::size_t n = s.size();
  std::vector<bool> in_block(n);
  std::size_t first = n;
  std::size_t last = 0;
  for (std::size_t t = 0; t < n; ++t) {
    in_block[t] = block.jobs.contains(s[t]);
    if (in_block[t]) {
      first = std::min(first, t);
      last = t;
    }
  }

  // `split` is the length of P; Q is the rest.
  std::size_t split = 0;
  if (sgn(target.c) < 0) {
    // Shortest prefix containing everything before the block on which the
    // block jobs already reach the block budget.
    std::vector<Cost> inside;
    CbrTriple acc{0, 0, 0};
    split = n;
    for (std::size_t t = 0; t <= n; ++t) {
      if (t > 0 && in_block[t - 1]) {
        inside.push_back(inst.cost_of(s[t - 1]));
        acc = sequence_stats(inside);
      }
      if (t >= first && acc.b >= target.b) {
        split = t;
        break;
      }
    }
  } else {
    // Shortest suffix containing everything after the block on which the
    // block jobs already reach the block return.
    std::vector<Cost> inside;  // reversed
    split = 0;
    for (std::size_t len = 0; len <= n; ++len) {
      const std::size_t start = n - len;
      if (len > 0 && in_block[start]) inside.push_back(inst.cost_of(s[start]));
      const std::vector<Cost> forward(inside.rbegin(), inside.rend());
      const CbrTriple acc = sequence_stats(forward);
      if (start <= last + 1 && acc.r <= target.r) {
        split = start;
        break;
      }
    }
  }

  Schedule out;
  out.reserve(n);
  for (std::size_t t = 0; t < split; ++t) {
    if (!in_block[t]) out.push_back(s[t]);
  }
  out.insert(out.end(), block.order.begin(), block.order.end());
  for (std::size_t t = split; t < n; ++t) {
    if (!in_block[t]) out.push_back(s[t]);
  }
  return out;
}

void require_certified_shape(std::span<const Block> blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& t = blocks[i].stats;
    if (sgn(t.b) < 0 || sgn(t.r) > 0 || t.c != t.b + t.r) {
      throw Error(ErrorKind::NotCertified, "block " + std::to_string(i) + " has invalid stats");
    }
    if (i > 0 && cbr_compare(blocks[i - 1].stats, t) > 0) {
      throw Error(ErrorKind::NotCertified,
                  "block keys decrease between " + std::to_string(i - 1) + " and " + std::to_string(i));
    }
  }
}

std::size_t prefix_select(std::span<const Block> blocks, const PrefixMode& mode) {
  require_certified_shape(blocks);
  if (mode.kind == PrefixMode::Kind::MinCostWithBudgetCap && sgn(mode.budget_cap) < 0) {
    throw Error(ErrorKind::BadParameters, "budget cap must be nonnegative");
  }
  // A block-prefix of an IIS schedule is an IIS schedule of its own job set
  // (irreducibility only looks inside each interval), hence optimal, so its
  // folded schedule stats are the set-level stats of the prefix ideal.
  std::vector<CbrTriple> folded{{0, 0, 0}};
  for (const auto& b : blocks) folded.push_back(concat_stats(folded.back(), b.stats));

  std::size_t best = 0;
  for (std::size_t l = 1; l < folded.size(); ++l) {
    const auto& t = folded[l];
    switch (mode.kind) {
      case PrefixMode::Kind::MinCostWithBudgetCap:
        if (t.b <= mode.budget_cap && t.c < folded[best].c) best = l;
        break;
      case PrefixMode::Kind::MinReturn:
        if (t.r < folded[best].r) best = l;
        break;
      case PrefixMode::Kind::MinIdeal:
        if (cbr_compare(t, folded[best]) <= 0) best = l;
        break;
    }
  }
  return best;
}

}  // namespace minbudget
