#include "minbudget/poset.hpp"

#include <algorithm>
#include <ostream>

#include "ideal_lattice.hpp"
#include "minbudget/error.hpp"

namespace minbudget {

std::ostream& operator<<(std::ostream& os, const JobId& id) { return os << id.value; }

std::ostream& operator<<(std::ostream& os, const CbrTriple& t) {
  return os << "(c=" << format_cost(t.c) << ", b=" << format_cost(t.b)
            << ", r=" << format_cost(t.r) << ")";
}

std::size_t Instance::index_of(const JobId& id) const {
  const auto it = index_.find(id.value);
  if (it == index_.end()) throw Error(ErrorKind::UnknownJob, "unknown job '" + id.value + "'");
  return it->second;
}

std::vector<std::pair<std::size_t, std::size_t>> Instance::closure_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (auto j = succ_[i].find_first(); j != Bitset::npos; j = succ_[i].find_next(j)) {
      out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Instance::hasse_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (auto j = succ_[i].find_first(); j != Bitset::npos; j = succ_[i].find_next(j)) {
      // i -> j is covering iff no k with i < k < j.
      if ((succ_[i] & pred_[j]).none()) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<JobSpec> Instance::job_specs() const {
  std::vector<JobSpec> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back({ids_[i], costs_[i]});
  return out;
}

std::vector<Precedence> Instance::precedences() const {
  std::vector<Precedence> out;
  out.reserve(edges_.size());
  for (auto [u, v] : edges_) out.push_back({ids_[u], ids_[v]});
  return out;
}

Bitset Instance::to_bitset(const JobSet& sub) const {
  Bitset bits(size());
  for (const auto& id : sub) bits.set(index_of(id));
  return bits;
}

JobSet Instance::to_set(const Bitset& bits) const {
  JobSet out;
  for (auto i = bits.find_first(); i != Bitset::npos; i = bits.find_next(i)) out.insert(ids_[i]);
  return out;
}

Instance build_instance(std::vector<JobSpec> jobs, std::vector<Precedence> edges) {
  std::sort(jobs.begin(), jobs.end(),
            [](const JobSpec& a, const JobSpec& b) { return a.id < b.id; });
  Instance inst;
  const std::size_t n = jobs.size();
  inst.ids_.reserve(n);
  inst.costs_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && jobs[i].id == inst.ids_.back()) {
      throw Error(ErrorKind::DuplicateJob, "job '" + jobs[i].id.value + "' declared twice");
    }
    inst.index_.emplace(jobs[i].id.value, i);
    inst.ids_.push_back(std::move(jobs[i].id));
    inst.costs_.push_back(std::move(jobs[i].cost));
  }

  for (const auto& e : edges) {
    const auto u = inst.index_.find(e.before.value);
    const auto v = inst.index_.find(e.after.value);
    if (u == inst.index_.end() || v == inst.index_.end()) {
      const auto& bad = u == inst.index_.end() ? e.before : e.after;
      throw Error(ErrorKind::UnknownEndpoint, "edge endpoint '" + bad.value + "' is not a job");
    }
    inst.edges_.emplace_back(u->second, v->second);
  }
  std::sort(inst.edges_.begin(), inst.edges_.end());
  inst.edges_.erase(std::unique(inst.edges_.begin(), inst.edges_.end()), inst.edges_.end());

  // Kahn's algorithm; its order also drives the closure computation.
  std::vector<std::vector<std::size_t>> out_adj(n);
  std::vector<std::size_t> indegree(n, 0);
  for (auto [u, v] : inst.edges_) {
    out_adj[u].push_back(v);
    ++indegree[v];
  }
  std::vector<std::size_t> topo;
  topo.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) topo.push_back(i);
  }
  for (std::size_t head = 0; head < topo.size(); ++head) {
    for (auto v : out_adj[topo[head]]) {
      if (--indegree[v] == 0) topo.push_back(v);
    }
  }
  if (topo.size() != n) {
    std::string on_cycle;
    for (std::size_t i = 0; i < n; ++i) {
      if (indegree[i] > 0) {
        on_cycle = inst.ids_[i].value;
        break;
      }
    }
    throw Error(ErrorKind::CycleDetected, "precedence relation has a cycle through '" +
                                              on_cycle + "'");
  }

  inst.succ_.assign(n, Bitset(n));
  inst.pred_.assign(n, Bitset(n));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const auto u = *it;
    for (auto v : out_adj[u]) {
      inst.succ_[u].set(v);
      inst.succ_[u] |= inst.succ_[v];
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v = inst.succ_[u].find_first(); v != Bitset::npos; v = inst.succ_[u].find_next(v)) {
      inst.pred_[v].set(u);
    }
  }
  return inst;
}

Bitset down_closure(const Instance& inst, const Bitset& sub) {
  Bitset out = sub;
  for (auto i = sub.find_first(); i != Bitset::npos; i = sub.find_next(i)) {
    out |= inst.predecessors(i);
  }
  return out;
}

Bitset up_closure(const Instance& inst, const Bitset& sub) {
  Bitset out = sub;
  for (auto i = sub.find_first(); i != Bitset::npos; i = sub.find_next(i)) {
    out |= inst.successors(i);
  }
  return out;
}

SubsetClass classify_subset(const Instance& inst, const Bitset& sub) {
  const Bitset down = down_closure(inst, sub);
  const Bitset up = up_closure(inst, sub);
  return {down == sub, up == sub, (down & up) == sub};
}

SubsetClass classify_subset(const Instance& inst, const JobSet& sub) {
  return classify_subset(inst, inst.to_bitset(sub));
}

std::vector<JobSet> enumerate_ideals(const Instance& inst, std::size_t job_cap) {
  if (inst.size() > job_cap) {
    throw Error(ErrorKind::TooLarge, "ideal enumeration capped at " + std::to_string(job_cap) +
                                         " jobs, instance has " + std::to_string(inst.size()));
  }
  const auto masks = detail::ideal_masks(inst, std::size_t{1} << job_cap);
  std::vector<JobSet> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(detail::mask_to_set(inst, m));
  return out;
}

Instance restrict(const Instance& inst, const JobSet& sub) {
  std::vector<std::size_t> keep;
  keep.reserve(sub.size());
  for (const auto& id : sub) keep.push_back(inst.index_of(id));
  std::sort(keep.begin(), keep.end());

  std::vector<JobSpec> jobs;
  jobs.reserve(keep.size());
  for (auto i : keep) jobs.push_back({inst.id(i), inst.cost(i)});
  // Every closure pair inside the subset, so the restricted closure is the
  // restriction of the closure.
  std::vector<Precedence> edges;
  for (auto i : keep) {
    for (auto j : keep) {
      if (inst.precedes(i, j)) edges.push_back({inst.id(i), inst.id(j)});
    }
  }
  return build_instance(std::move(jobs), std::move(edges));
}

bool is_linear_extension(const Instance& inst, const Schedule& s) {
  if (s.size() != inst.size()) {
    throw Error(ErrorKind::CoverageMismatch,
                "schedule has " + std::to_string(s.size()) + " jobs, instance has " +
                    std::to_string(inst.size()));
  }
  Bitset seen(inst.size());
  for (const auto& id : s) {
    if (!inst.contains(id)) {
      throw Error(ErrorKind::CoverageMismatch, "schedule job '" + id.value + "' not in instance");
    }
    const auto i = inst.index_of(id);
    if (seen[i]) throw Error(ErrorKind::CoverageMismatch, "job '" + id.value + "' repeated");
    seen.set(i);
  }
  seen.reset();
  for (const auto& id : s) {
    const auto i = inst.index_of(id);
    if (!inst.predecessors(i).is_subset_of(seen)) return false;
    seen.set(i);
  }
  return true;
}

CbrTriple sequence_stats(std::span<const Cost> costs) {
  Cost prefix = 0;
  Cost best = 0;
  for (const auto& c : costs) {
    prefix += c;
    if (prefix > best) best = prefix;
  }
  return {prefix, best, prefix - best};
}

CbrTriple schedule_stats(const Instance& inst, const Schedule& s) {
  std::vector<Cost> costs;
  costs.reserve(s.size());
  for (const auto& id : s) {
    if (!inst.contains(id)) throw Error(ErrorKind::MissingCost, "no cost for job '" + id.value + "'");
    costs.push_back(inst.cost_of(id));
  }
  return sequence_stats(costs);
}

CbrTriple concat_stats(const CbrTriple& first, const CbrTriple& second) {
  Cost c = first.c + second.c;
  Cost b = first.c + second.b;
  if (first.b > b) b = first.b;
  Cost r = first.r + second.c;
  if (second.r < r) r = second.r;
  return {std::move(c), std::move(b), std::move(r)};
}

Cost total_cost(const Instance& inst, const JobSet& sub) {
  Cost sum = 0;
  for (const auto& id : sub) sum += inst.cost_of(id);
  return sum;
}

}  // namespace minbudget
