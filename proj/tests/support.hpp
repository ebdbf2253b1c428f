#pragma once

// Shared fixtures and test-only oracles. Nothing here calls into the library
// code it is used to check, except for constructing instances.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "minbudget/cbr.hpp"
#include "minbudget/error.hpp"
#include "minbudget/generate.hpp"
#include "minbudget/oracle.hpp"
#include "minbudget/poset.hpp"
#include "minbudget/transforms.hpp"

namespace testsupport {

using namespace minbudget;

/// Kind of the library error raised by f, or nullopt when it returns.
inline std::optional<ErrorKind> kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

template <std::integral T>
inline Cost q(T v) { return Cost(std::to_string(v)); }
inline Cost q(const char* text) { return parse_cost(text); }

inline Instance make(std::vector<std::pair<std::string, long long>> jobs,
                     std::vector<std::pair<std::string, std::string>> edges = {}) {
  std::vector<JobSpec> specs;
  for (auto& [id, c] : jobs) specs.push_back({id, q(c)});
  std::vector<Precedence> prec;
  for (auto& [a, b] : edges) prec.push_back({a, b});
  return build_instance(std::move(specs), std::move(prec));
}

inline Instance fig1() {
  return make({{"a", 2}, {"b", 2}, {"c", -1}, {"d", 3}, {"e", -4}, {"f", -4}, {"g", 1}},
              {{"a", "c"}, {"c", "e"}, {"b", "e"}, {"b", "d"}, {"e", "g"}, {"e", "f"}, {"d", "f"}});
}

inline Instance fig3() {
  return make({{"a", 1}, {"b", -2}, {"c", 2}, {"d", -3}, {"e", 3}, {"f", -4}},
              {{"a", "b"}, {"c", "d"}, {"e", "f"}});
}

// p:+2 -> {x, y}, q:+1 -> {y}, with x:-3, y:-2.
inline Instance convex_example() {
  return make({{"p", 2}, {"q", 1}, {"x", -3}, {"y", -2}}, {{"p", "x"}, {"p", "y"}, {"q", "y"}});
}

inline Schedule sched(std::initializer_list<const char*> ids) {
  Schedule s;
  for (const char* id : ids) s.emplace_back(id);
  return s;
}

inline JobSet set_of(std::initializer_list<const char*> ids) {
  JobSet s;
  for (const char* id : ids) s.emplace(id);
  return s;
}

inline Block block_of(const Instance& inst, std::initializer_list<const char*> order) {
  return make_block(inst, sched(order));
}

/// Uniformly random linear extension by repeatedly picking an available job.
inline Schedule random_linear_extension(const Instance& inst, Rng& rng) {
  std::vector<std::size_t> waiting(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) waiting[i] = inst.predecessors(i).count();
  std::vector<bool> done(inst.size(), false);
  Schedule out;
  while (out.size() < inst.size()) {
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (!done[i] && waiting[i] == 0) ready.push_back(i);
    }
    const auto pick = ready[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(ready.size()) - 1))];
    done[pick] = true;
    out.push_back(inst.id(pick));
    const auto& succ = inst.successors(pick);
    for (auto k = succ.find_first(); k != Bitset::npos; k = succ.find_next(k)) --waiting[k];
  }
  return out;
}

/// Random instance with n jobs: random DAG with random density.
inline Instance random_dag(Rng& rng, std::size_t max_n, std::size_t min_n = 0) {
  const auto n = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(min_n),
                                                      static_cast<std::int64_t>(max_n)));
  const double density = static_cast<double>(rng.uniform(0, 60)) / 100.0;
  return generate_dag(n, rng.next(), density, {-5, 5});
}

/// Ideal count by recursion on the lowest-index job: either it is excluded
/// (with its whole up-set) or it is included (with its whole down-set).
inline std::size_t count_ideals_recursive(const Instance& inst) {
  std::function<std::size_t(std::vector<int>)> count = [&](std::vector<int> state) -> std::size_t {
    // state: -1 undecided, 0 out, 1 in
    std::size_t i = 0;
    while (i < state.size() && state[i] != -1) ++i;
    if (i == state.size()) return 1;
    std::size_t total = 0;
    {
      auto out = state;
      bool ok = true;
      out[i] = 0;
      for (std::size_t j = 0; j < inst.size(); ++j) {
        if (inst.precedes(i, j)) {
          if (out[j] == 1) ok = false;
          out[j] = 0;
        }
      }
      if (ok) total += count(out);
    }
    {
      auto in = state;
      bool ok = true;
      in[i] = 1;
      for (std::size_t j = 0; j < inst.size(); ++j) {
        if (inst.precedes(j, i)) {
          if (in[j] == 0) ok = false;
          in[j] = 1;
        }
      }
      if (ok) total += count(in);
    }
    return total;
  };
  return count(std::vector<int>(inst.size(), -1));
}

/// Brute-force energy barrier: bottleneck shortest path over laminar subsets
/// of I ∪ F, one add or remove per step, cost of a state w(I) − w(C).
inline Cost energy_barrier_by_search(const EnergyBarrierInstance& eb) {
  std::vector<WeightedInterval> all;
  auto index_of = [&](const WeightedInterval& x) -> std::size_t {
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (all[k].lo == x.lo && all[k].hi == x.hi) return k;
    }
    all.push_back(x);
    return all.size() - 1;
  };
  std::uint32_t start = 0;
  std::uint32_t goal = 0;
  for (const auto& x : eb.initial) start |= 1u << index_of(x);
  for (const auto& x : eb.final) goal |= 1u << index_of(x);
  const std::size_t k = all.size();
  if (k > 12) throw Error(ErrorKind::TooLarge, "search oracle capped at 12 intervals");

  auto crosses = [&](std::size_t a, std::size_t b) {
    const auto& x = all[a];
    const auto& y = all[b];
    const bool meet = !(x.hi < y.lo || y.hi < x.lo);
    const bool nest = (y.lo <= x.lo && x.hi <= y.hi) || (x.lo <= y.lo && y.hi <= x.hi);
    return meet && !nest;
  };
  auto laminar = [&](std::uint32_t m) {
    for (std::size_t a = 0; a < k; ++a) {
      if (!(m >> a & 1u)) continue;
      for (std::size_t b = a + 1; b < k; ++b) {
        if ((m >> b & 1u) && crosses(a, b)) return false;
      }
    }
    return true;
  };
  auto weight = [&](std::uint32_t m) {
    Cost w = 0;
    for (std::size_t a = 0; a < k; ++a) {
      if (m >> a & 1u) w += all[a].w;
    }
    return w;
  };
  const Cost w0 = weight(start);
  std::map<std::uint32_t, Cost> best;
  using Item = std::pair<Cost, std::uint32_t>;
  auto cmp = [](const Item& x, const Item& y) { return x.first > y.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> open(cmp);
  best[start] = 0;
  open.push({Cost(0), start});
  while (!open.empty()) {
    auto [peak, m] = open.top();
    open.pop();
    if (peak > best[m]) continue;
    if (m == goal) return peak;
    for (std::size_t a = 0; a < k; ++a) {
      const std::uint32_t next = m ^ (1u << a);
      if (!laminar(next)) continue;
      Cost here = w0 - weight(next);
      if (here < peak) here = peak;
      auto it = best.find(next);
      if (it == best.end() || here < it->second) {
        best[next] = here;
        open.push({here, next});
      }
    }
  }
  throw Error(ErrorKind::InvalidInput, "goal unreachable");
}

}  // namespace testsupport
