#pragma once

#include <cstdint>
#include <random>

#include "minbudget/convex.hpp"
#include "minbudget/poset.hpp"
#include "minbudget/sp.hpp"
#include "minbudget/transforms.hpp"

namespace minbudget {

/// mt19937_64 with its own bounded draws, so a seed produces the same
/// instance on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi]; lo <= hi.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// True with probability p.
  bool chance(double p);
  std::uint64_t next() { return engine_(); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

struct CostRange {
  std::int64_t lo = -5;
  std::int64_t hi = 5;
};

/// Sign by coin flip when the range straddles zero, then uniform magnitude
/// within the matching side of the range.
Cost random_cost(Rng& rng, const CostRange& range);

struct GeneratedSp {
  Instance instance;
  SpNode tree;
};

/// Random binary decomposition tree over n leaves with uniform series or
/// parallel choice at each node; edges are the covering pairs.
GeneratedSp generate_sp(std::size_t n, std::uint64_t seed, const CostRange& range = {});

struct GeneratedConvex {
  Instance instance;
  /// Order of the negative jobs for NMinus; of the nonnegative ones for NPlus.
  Schedule order;
  ConvexSide side = ConvexSide::NMinus;
};

/// NMinus: every nonnegative job gets a nonempty random run of negative
/// successors. NPlus: every negative job gets a nonempty random run of
/// nonnegative predecessors. `idle` extra nonnegative jobs have no edges.
GeneratedConvex generate_convex(std::size_t nplus, std::size_t nminus, std::uint64_t seed,
                                const CostRange& range = {},
                                ConvexSide side = ConvexSide::NMinus, std::size_t idle = 0);

/// Random order of the jobs, then each forward pair becomes an edge with
/// probability `density`.
Instance generate_dag(std::size_t n, std::uint64_t seed, double density = 0.3,
                      const CostRange& range = {});

/// Two laminar systems on a common line, built by recursive splitting, with
/// at most `max_per_system` intervals each; some intervals are shared.
EnergyBarrierInstance generate_energy(std::size_t max_per_system, std::uint64_t seed,
                                      std::int64_t max_weight = 5);

}  // namespace minbudget
