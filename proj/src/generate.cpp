#include "minbudget/generate.hpp"

#include <limits>
#include <string>

#include "minbudget/error.hpp"

namespace minbudget {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());  // full 64-bit range
  // Reject the low residue class so every value is equally likely.
  const std::uint64_t reject_below = (0 - span) % span;
  std::uint64_t x = engine_();
  while (x < reject_below) x = engine_();
  return lo + static_cast<std::int64_t>(x % span);
}

bool Rng::chance(double p) {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
}

Cost random_cost(Rng& rng, const CostRange& range) {
  if (range.lo > range.hi) throw Error(ErrorKind::BadParameters, "empty cost range");
  if (range.lo < 0 && range.hi >= 0) {
    return rng.chance(0.5) ? Cost(std::to_string(rng.uniform(0, range.hi)))
                           : Cost(std::to_string(rng.uniform(range.lo, -1)));
  }
  return Cost(std::to_string(rng.uniform(range.lo, range.hi)));
}

namespace {

std::string label(const char* prefix, std::size_t i, std::size_t count) {
  const std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
  std::string digits = std::to_string(i);
  return prefix + std::string(width - digits.size(), '0') + digits;
}

struct SpBuild {
  Rng& rng;
  const std::vector<JobId>& ids;
  std::vector<Precedence>& edges;

  struct Part {
    SpNode tree;
    std::vector<JobId> minima;
    std::vector<JobId> maxima;
  };

  Part build(std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return {SpTree::leaf(ids[lo]), {ids[lo]}, {ids[lo]}};
    const auto mid = static_cast<std::size_t>(
        rng.uniform(static_cast<std::int64_t>(lo) + 1, static_cast<std::int64_t>(hi) - 1));
    const bool series = rng.chance(0.5);
    Part l = build(lo, mid);
    Part r = build(mid, hi);
    if (series) {
      for (const auto& a : l.maxima) {
        for (const auto& b : r.minima) edges.push_back({a, b});
      }
      return {SpTree::series(l.tree, r.tree), l.minima, r.maxima};
    }
    Part out{SpTree::parallel(l.tree, r.tree), l.minima, l.maxima};
    out.minima.insert(out.minima.end(), r.minima.begin(), r.minima.end());
    out.maxima.insert(out.maxima.end(), r.maxima.begin(), r.maxima.end());
    return out;
  }
};

void require_signed_range(const CostRange& range) {
  if (range.lo > -1 || range.hi < 0) {
    throw Error(ErrorKind::BadParameters, "convex generation needs lo <= -1 and hi >= 0");
  }
}

// Uniform nonempty run [a, b] of {0, ..., m-1}.
std::pair<std::size_t, std::size_t> random_run(Rng& rng, std::size_t m) {
  auto k = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(m * (m + 1) / 2) - 1));
  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t runs = m - a;
    if (k < runs) return {a, a + k};
    k -= runs;
  }
  return {0, m - 1};
}

void split_laminar(Rng& rng, std::int64_t lo, std::int64_t hi, std::size_t& room,
                   std::int64_t max_weight, std::vector<WeightedInterval>& out) {
  if (room == 0) return;
  if (rng.chance(0.6)) {
    out.push_back({Cost(std::to_string(lo)), Cost(std::to_string(hi)),
                   Cost(std::to_string(rng.uniform(1, max_weight)))});
    --room;
  }
  if (hi - lo >= 2 && rng.chance(0.85)) {
    const auto mid = rng.uniform(lo, hi - 1);
    split_laminar(rng, lo, mid, room, max_weight, out);
    split_laminar(rng, mid + 1, hi, room, max_weight, out);
  }
}

bool fits(const std::vector<WeightedInterval>& sys, const WeightedInterval& x) {
  for (const auto& y : sys) {
    if (y.lo == x.lo && y.hi == x.hi) return false;
    const bool meet = !(x.hi < y.lo || y.hi < x.lo);
    const bool nest = (y.lo <= x.lo && x.hi <= y.hi) || (x.lo <= y.lo && y.hi <= x.hi);
    if (meet && !nest) return false;
  }
  return true;
}

}  // namespace

GeneratedSp generate_sp(std::size_t n, std::uint64_t seed, const CostRange& range) {
  Rng rng(seed);
  std::vector<JobSpec> jobs;
  std::vector<JobId> ids;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(label("j", i, n));
    jobs.push_back({ids.back(), random_cost(rng, range)});
  }
  if (n == 0) return {build_instance({}, {}), nullptr};
  rng.shuffle(ids);  // tree shape independent of id order
  std::vector<Precedence> edges;
  SpBuild builder{rng, ids, edges};
  SpNode tree = builder.build(0, n).tree;
  return {build_instance(std::move(jobs), std::move(edges)), std::move(tree)};
}

GeneratedConvex generate_convex(std::size_t nplus, std::size_t nminus, std::uint64_t seed,
                                const CostRange& range, ConvexSide side, std::size_t idle) {
  require_signed_range(range);
  Rng rng(seed);
  const std::size_t positives = nplus + idle;
  std::vector<JobSpec> jobs;
  std::vector<JobId> plus;
  std::vector<JobId> minus;
  for (std::size_t i = 0; i < positives; ++i) {
    plus.push_back(label("p", i, positives));
    jobs.push_back({plus.back(), Cost(std::to_string(rng.uniform(0, range.hi)))});
  }
  for (std::size_t i = 0; i < nminus; ++i) {
    minus.push_back(label("m", i, nminus));
    jobs.push_back({minus.back(), Cost(std::to_string(rng.uniform(range.lo, -1)))});
  }

  GeneratedConvex out;
  out.side = side;
  std::vector<Precedence> edges;
  std::vector<JobId> active(plus.begin(), plus.begin() + static_cast<std::ptrdiff_t>(nplus));
  if (side == ConvexSide::NMinus) {
    out.order = minus;
    rng.shuffle(out.order);
    if (!out.order.empty()) {
      for (const auto& p : active) {
        const auto [a, b] = random_run(rng, out.order.size());
        for (std::size_t t = a; t <= b; ++t) edges.push_back({p, out.order[t]});
      }
    }
  } else {
    out.order = active;
    rng.shuffle(out.order);
    if (!out.order.empty()) {
      for (const auto& m : minus) {
        const auto [a, b] = random_run(rng, out.order.size());
        for (std::size_t t = a; t <= b; ++t) edges.push_back({out.order[t], m});
      }
    }
  }
  out.instance = build_instance(std::move(jobs), std::move(edges));
  return out;
}

Instance generate_dag(std::size_t n, std::uint64_t seed, double density, const CostRange& range) {
  if (density < 0 || density > 1) throw Error(ErrorKind::BadParameters, "density must lie in [0, 1]");
  Rng rng(seed);
  std::vector<JobSpec> jobs;
  std::vector<JobId> ids;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(label("j", i, n));
    jobs.push_back({ids.back(), random_cost(rng, range)});
  }
  rng.shuffle(ids);
  std::vector<Precedence> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (rng.chance(density)) edges.push_back({ids[a], ids[b]});
    }
  }
  return build_instance(std::move(jobs), std::move(edges));
}

EnergyBarrierInstance generate_energy(std::size_t max_per_system, std::uint64_t seed,
                                      std::int64_t max_weight) {
  if (max_weight < 1) throw Error(ErrorKind::BadParameters, "max weight must be >= 1");
  Rng rng(seed);
  EnergyBarrierInstance eb;
  const auto span = static_cast<std::int64_t>(3 * max_per_system + 1);
  std::size_t room = max_per_system;
  split_laminar(rng, 0, span, room, max_weight, eb.initial);
  room = max_per_system;
  split_laminar(rng, 0, span, room, max_weight, eb.final);
  // A span present in both systems must carry one weight.
  for (auto& y : eb.final) {
    for (const auto& x : eb.initial) {
      if (x.lo == y.lo && x.hi == y.hi) y.w = x.w;
    }
  }
  for (const auto& x : eb.initial) {
    if (eb.final.size() < max_per_system && rng.chance(0.25) && fits(eb.final, x)) {
      eb.final.push_back(x);
    }
  }
  return eb;
}

}  // namespace minbudget
