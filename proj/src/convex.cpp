#include "minbudget/convex.hpp"

#include <algorithm>

#include "minbudget/error.hpp"
#include "minbudget/sp.hpp"
#include "minbudget/transforms.hpp"

namespace minbudget {

namespace {

bool is_sink(const Instance& inst, std::size_t i) {
  const int s = sgn(inst.cost(i));
  return s < 0 || (s == 0 && inst.predecessors(i).any());
}

// Every closure pair runs from a source to a sink.
bool sources_to_sinks(const Instance& inst) {
  for (auto [u, v] : inst.closure_pairs()) {
    if (is_sink(inst, u) || !is_sink(inst, v)) return false;
  }
  return true;
}

struct Arrangement {
  const Instance& inst;
  std::vector<std::size_t> sinks;
  std::vector<std::size_t> sources;
  std::vector<std::size_t> need;    // |S(i)| per source
  std::vector<std::size_t> placed;  // members of S(i) already placed
  Bitset used;
  std::vector<std::size_t> order;

  bool extend() {
    if (order.size() == sinks.size()) return true;
    for (auto x : sinks) {
      if (used[x]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < sources.size() && ok; ++k) {
        const bool member = inst.precedes(sources[k], x);
        // A started, unfinished run may not be interrupted.
        if (!member && placed[k] > 0 && placed[k] < need[k]) ok = false;
      }
      if (!ok) continue;
      for (std::size_t k = 0; k < sources.size(); ++k) {
        if (inst.precedes(sources[k], x)) ++placed[k];
      }
      used.set(x);
      order.push_back(x);
      if (extend()) return true;
      order.pop_back();
      used.reset(x);
      for (std::size_t k = 0; k < sources.size(); ++k) {
        if (inst.precedes(sources[k], x)) --placed[k];
      }
    }
    return false;
  }
};

Block singleton(const Instance& inst, std::size_t i) { return make_block(inst, {inst.id(i)}); }

// With a negative-cost minimal ideal among the guesses, the cbr-least one is
// right. Otherwise forcing a head early can only raise b, which lowers r and
// makes that guess look better than it is, so the key alone misleads. Among
// nonnegative keys take the smallest overall budget, then the larger r, then
// the smaller b.
std::size_t choose_guess(std::span<const CbrTriple> keys, const std::vector<BlockSchedule>& candidates) {
  const std::size_t first = guess_first_negative(keys);
  if (sgn(keys[first].c) < 0) return first;
  std::size_t best = 0;
  Cost best_b = candidates[0].stats().b;
  for (std::size_t k = 1; k < keys.size(); ++k) {
    const Cost b = candidates[k].stats().b;
    const bool better =
        b < best_b || (b == best_b && (keys[k].r > keys[best].r ||
                                       (keys[k].r == keys[best].r && keys[k].b < keys[best].b)));
    if (better) {
      best = k;
      best_b = b;
    }
  }
  return best;
}

}  // namespace

bool is_bipartite(const Instance& inst) {
  for (auto [u, v] : inst.closure_pairs()) {
    if (sgn(inst.cost(u)) < 0 || sgn(inst.cost(v)) >= 0) return false;
  }
  return true;
}

std::vector<std::size_t> convex_sinks(const Instance& inst) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (is_sink(inst, i)) out.push_back(i);
  }
  return out;
}

bool is_convex_order(const Instance& inst, const Schedule& order) {
  const auto sinks = convex_sinks(inst);
  if (order.size() != sinks.size()) return false;
  std::vector<std::size_t> pos(inst.size(), inst.size());
  for (std::size_t t = 0; t < order.size(); ++t) {
    if (!inst.contains(order[t])) return false;
    const auto i = inst.index_of(order[t]);
    if (!is_sink(inst, i) || pos[i] != inst.size()) return false;
    pos[i] = t;
  }
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (is_sink(inst, i)) continue;
    const auto& succ = inst.successors(i);
    std::size_t lo = order.size();
    std::size_t hi = 0;
    for (auto j = succ.find_first(); j != Bitset::npos; j = succ.find_next(j)) {
      if (!is_sink(inst, j)) return false;
      lo = std::min(lo, pos[j]);
      hi = std::max(hi, pos[j]);
    }
    if (succ.any() && hi - lo + 1 != succ.count()) return false;
  }
  return true;
}

std::optional<Schedule> find_convex_order(const Instance& inst, std::size_t search_cap) {
  if (!sources_to_sinks(inst)) {
    throw Error(ErrorKind::NotBipartite, "precedence pairs must run from sources to sinks");
  }
  Arrangement search{inst, convex_sinks(inst), {}, {}, {}, Bitset(inst.size()), {}};
  if (search.sinks.size() > search_cap) {
    throw Error(ErrorKind::NotConvex, "arrangement search capped at " + std::to_string(search_cap) +
                                          " sinks; supply convex_order");
  }
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!is_sink(inst, i) && inst.successors(i).any()) {
      search.sources.push_back(i);
      search.need.push_back(inst.successors(i).count());
    }
  }
  search.placed.assign(search.sources.size(), 0);
  if (!search.extend()) return std::nullopt;
  Schedule out;
  for (auto i : search.order) out.push_back(inst.id(i));
  return out;
}

ConvexCertificate convex_recognize(const Instance& inst, const std::optional<Schedule>& supplied,
                                   std::size_t search_cap) {
  if (!is_bipartite(inst)) {
    throw Error(ErrorKind::NotBipartite, "precedence pairs must run from cost >= 0 to cost < 0");
  }
  if (supplied) {
    if (!is_convex_order(inst, *supplied)) {
      throw Error(ErrorKind::NotConvex, "supplied convex_order does not make successor sets consecutive");
    }
    return {*supplied, ConvexSide::NMinus};
  }
  std::string capped;
  try {
    if (auto order = find_convex_order(inst, search_cap)) return {std::move(*order), ConvexSide::NMinus};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotConvex) throw;
    capped = e.what();
  }
  try {
    if (auto order = find_convex_order(reverse_instance(inst), search_cap)) {
      return {std::move(*order), ConvexSide::NPlus};
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotConvex) throw;
    capped = e.what();
  }
  throw Error(ErrorKind::NotConvex,
              capped.empty() ? "no consecutive arrangement on either side" : capped);
}

std::size_t guess_first_negative(std::span<const CbrTriple> first_blocks) {
  if (first_blocks.empty()) throw Error(ErrorKind::EmptyNegativeSet, "no candidate first job");
  std::size_t best = 0;
  for (std::size_t k = 1; k < first_blocks.size(); ++k) {
    if (cbr_compare(first_blocks[k], first_blocks[best]) < 0) best = k;
  }
  return best;
}

BlockSchedule convex_solve(const Instance& inst, const ConvexCertificate& cert,
                           const ConvexHooks& hooks) {
  if (!sources_to_sinks(inst) || !is_convex_order(inst, cert.order)) {
    throw Error(ErrorKind::NotConvex, "certificate order does not verify");
  }
  const std::size_t m = cert.order.size();
  std::vector<std::size_t> sink_at(m);
  for (std::size_t t = 0; t < m; ++t) sink_at[t] = inst.index_of(cert.order[t]);

  // Successor-free sources are set aside and appended at the end.
  std::vector<std::size_t> sources;
  std::vector<std::size_t> idle;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (is_sink(inst, i)) continue;
    (inst.successors(i).any() ? sources : idle).push_back(i);
  }

  // memo[lo * m + hi] for lo <= hi; empty intervals are the empty schedule.
  std::vector<BlockSchedule> memo(m * m);
  auto solution = [&](std::size_t lo, std::size_t hi_excl) -> BlockSchedule {
    if (lo >= hi_excl) return {};
    return memo[lo * m + hi_excl - 1];
  };

  for (std::size_t len = 1; len <= m; ++len) {
    for (std::size_t lo = 0; lo + len <= m; ++lo) {
      const std::size_t hi = lo + len - 1;
      Bitset window(inst.size());
      for (std::size_t t = lo; t <= hi; ++t) window.set(sink_at[t]);
      std::vector<std::size_t> inner;  // I+
      for (auto i : sources) {
        if (inst.successors(i).is_subset_of(window)) inner.push_back(i);
      }

      std::vector<BlockSchedule> candidates;
      std::vector<CbrTriple> keys;
      candidates.reserve(len);
      for (std::size_t t = lo; t <= hi; ++t) {
        const std::size_t j = sink_at[t];
        Bitset left(inst.size());
        Bitset right(inst.size());
        for (std::size_t u = lo; u < t; ++u) left.set(sink_at[u]);
        for (std::size_t u = t + 1; u <= hi; ++u) right.set(sink_at[u]);
        Schedule first;
        for (auto i : inner) {
          const auto& succ = inst.successors(i);
          if (succ[j]) {
            first.push_back(inst.id(i));
          } else if (!succ.is_subset_of(left) && !succ.is_subset_of(right)) {
            throw Error(ErrorKind::NotConvex, "successors of '" + inst.id(i).value +
                                                  "' straddle '" + inst.id(j).value + "'");
          }
        }
        first.push_back(inst.id(j));
        Block head = make_block(inst, std::move(first));
        if (hooks.on_guess) hooks.on_guess(head);
        BlockSchedule rest = parallel_merge(solution(lo, t), solution(t + 1, hi + 1));
        candidates.push_back(series_compose(BlockSchedule{{std::move(head)}}, rest));
        // The guess compares minimal ideals, which may span several blocks.
        const auto& blocks = candidates.back().blocks;
        const std::size_t l = prefix_select(blocks, PrefixMode::min_ideal());
        CbrTriple key{0, 0, 0};
        for (std::size_t b = 0; b < l; ++b) key = concat_stats(key, blocks[b].stats);
        keys.push_back(key);
      }
      BlockSchedule& slot = memo[lo * m + hi];
      slot = std::move(candidates[choose_guess(keys, candidates)]);
      if (hooks.on_state) {
        JobSet jobs = inst.to_set(window);
        for (auto i : inner) jobs.insert(inst.id(i));
        hooks.on_state(jobs, slot);
      }
    }
  }

  BlockSchedule out = solution(0, m);
  for (auto i : idle) out.blocks.push_back(singleton(inst, i));
  return out;
}

ConvexResult solve_convex_auto(const Instance& inst, SideChoice side,
                               const std::optional<Schedule>& supplied, std::size_t search_cap) {
  if (!is_bipartite(inst)) {
    throw Error(ErrorKind::NotBipartite, "precedence pairs must run from cost >= 0 to cost < 0");
  }
  ConvexCertificate cert;
  switch (side) {
    case SideChoice::Auto:
      cert = convex_recognize(inst, supplied, search_cap);
      break;
    case SideChoice::NMinus:
      if (supplied) {
        cert = convex_recognize(inst, supplied, search_cap);
      } else if (auto order = find_convex_order(inst, search_cap)) {
        cert = {std::move(*order), ConvexSide::NMinus};
      } else {
        throw Error(ErrorKind::NotConvex, "not convex in the negative jobs");
      }
      break;
    case SideChoice::NPlus:
      if (auto order = find_convex_order(reverse_instance(inst), search_cap)) {
        cert = {std::move(*order), ConvexSide::NPlus};
      } else {
        throw Error(ErrorKind::NotConvex, "not convex in the nonnegative jobs");
      }
      break;
  }

  ConvexResult result;
  result.side = cert.side;
  if (cert.side == ConvexSide::NMinus) {
    BlockSchedule bs = convex_solve(inst, cert);
    result.schedule = bs.flatten();
    result.budget = schedule_stats(inst, result.schedule).b;
    result.certificate = std::move(bs);
    return result;
  }
  const Instance reversed = reverse_instance(inst);
  const Schedule solved = convex_solve(reversed, cert).flatten();
  result.budget = -schedule_stats(reversed, solved).r;
  result.schedule = reverse_schedule(solved);
  return result;
}

}  // namespace minbudget
