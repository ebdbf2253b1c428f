#include "minbudget/sp.hpp"

#include <algorithm>
#include <functional>

#include "minbudget/error.hpp"

namespace minbudget {

SpNode SpTree::leaf(JobId id) {
  auto node = std::make_shared<SpTree>();
  node->kind = Kind::Leaf;
  node->job = std::move(id);
  return node;
}

SpNode SpTree::series(SpNode l, SpNode r) {
  auto node = std::make_shared<SpTree>();
  node->kind = Kind::Series;
  node->left = std::move(l);
  node->right = std::move(r);
  return node;
}

SpNode SpTree::parallel(SpNode l, SpNode r) {
  auto node = std::make_shared<SpTree>();
  node->kind = Kind::Parallel;
  node->left = std::move(l);
  node->right = std::move(r);
  return node;
}

namespace {

void collect_leaves(const SpNode& t, std::vector<JobId>& out) {
  if (!t) return;
  if (t->kind == SpTree::Kind::Leaf) {
    out.push_back(t->job);
    return;
  }
  collect_leaves(t->left, out);
  collect_leaves(t->right, out);
}

using Indices = std::vector<std::size_t>;

SpNode recognize(const Instance& inst, const Indices& part) {
  if (part.size() == 1) return SpTree::leaf(inst.id(part[0]));

  Bitset member(inst.size());
  for (auto i : part) member.set(i);

  // Connected components of the comparability graph.
  std::vector<Indices> components;
  Bitset seen(inst.size());
  for (auto start : part) {
    if (seen[start]) continue;
    Indices comp;
    Indices stack{start};
    seen.set(start);
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      const Bitset next = (inst.successors(u) | inst.predecessors(u)) & member & ~seen;
      for (auto v = next.find_first(); v != Bitset::npos; v = next.find_next(v)) {
        seen.set(v);
        stack.push_back(v);
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  if (components.size() > 1) {
    // Components were discovered in order of their smallest index.
    SpNode acc = recognize(inst, components[0]);
    for (std::size_t k = 1; k < components.size(); ++k) {
      acc = SpTree::parallel(std::move(acc), recognize(inst, components[k]));
    }
    return acc;
  }

  // Topological order, smallest index first.
  Indices order;
  Bitset placed(inst.size());
  while (order.size() < part.size()) {
    for (auto i : part) {
      if (!placed[i] && (inst.predecessors(i) & member).is_subset_of(placed)) {
        placed.set(i);
        order.push_back(i);
        break;
      }
    }
  }
  Bitset prefix(inst.size());
  for (std::size_t k = 1; k < order.size(); ++k) {
    prefix.set(order[k - 1]);
    const Bitset rest = member & ~prefix;
    bool cut = true;
    for (auto a = prefix.find_first(); a != Bitset::npos && cut; a = prefix.find_next(a)) {
      cut = rest.is_subset_of(inst.successors(a));
    }
    if (cut) {
      Indices left(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
      Indices right(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
      std::sort(left.begin(), left.end());
      std::sort(right.begin(), right.end());
      return SpTree::series(recognize(inst, left), recognize(inst, right));
    }
  }
  std::string jobs;
  for (auto i : part) jobs += (jobs.empty() ? "" : ",") + inst.id(i).value;
  throw Error(ErrorKind::NotSeriesParallel, "no series or parallel split of {" + jobs + "}");
}

Block fuse(std::span<const Block> pieces) {
  Block out;
  out.stats = {0, 0, 0};
  for (const auto& b : pieces) {
    out.jobs.insert(b.jobs.begin(), b.jobs.end());
    out.order.insert(out.order.end(), b.order.begin(), b.order.end());
    out.stats = concat_stats(out.stats, b.stats);
  }
  return out;
}

}  // namespace

std::vector<JobId> sp_leaves(const SpNode& tree) {
  std::vector<JobId> out;
  collect_leaves(tree, out);
  return out;
}

std::string sp_to_string(const SpNode& tree) {
  if (!tree) return "";
  switch (tree->kind) {
    case SpTree::Kind::Leaf:
      return tree->job.value;
    case SpTree::Kind::Series:
      return "S(" + sp_to_string(tree->left) + "," + sp_to_string(tree->right) + ")";
    case SpTree::Kind::Parallel:
      return "P(" + sp_to_string(tree->left) + "," + sp_to_string(tree->right) + ")";
  }
  return "";
}

SpNode sp_recognize(const Instance& inst) {
  if (inst.empty()) return nullptr;
  Indices all(inst.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return recognize(inst, all);
}

void verify_sp_tree(const Instance& inst, const SpNode& tree) {
  const auto leaves = sp_leaves(tree);
  if (leaves.size() != inst.size()) {
    throw Error(ErrorKind::TreeMismatch, "tree has " + std::to_string(leaves.size()) +
                                             " leaves, instance has " + std::to_string(inst.size()) +
                                             " jobs");
  }
  Bitset seen(inst.size());
  for (const auto& id : leaves) {
    if (!inst.contains(id)) throw Error(ErrorKind::TreeMismatch, "leaf '" + id.value + "' is not a job");
    const auto i = inst.index_of(id);
    if (seen[i]) throw Error(ErrorKind::TreeMismatch, "leaf '" + id.value + "' repeated");
    seen.set(i);
  }

  std::vector<Bitset> generated(inst.size(), Bitset(inst.size()));
  std::function<Bitset(const SpNode&)> walk = [&](const SpNode& t) {
    Bitset jobs(inst.size());
    if (t->kind == SpTree::Kind::Leaf) {
      jobs.set(inst.index_of(t->job));
      return jobs;
    }
    const Bitset l = walk(t->left);
    const Bitset r = walk(t->right);
    if (t->kind == SpTree::Kind::Series) {
      for (auto i = l.find_first(); i != Bitset::npos; i = l.find_next(i)) generated[i] |= r;
    }
    return l | r;
  };
  if (tree) walk(tree);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (generated[i] != inst.successors(i)) {
      throw Error(ErrorKind::TreeMismatch,
                  "tree order differs from the precedence closure at job '" + inst.id(i).value + "'");
    }
  }
}

BlockSchedule parallel_merge(const BlockSchedule& bs1, const BlockSchedule& bs2) {
  const JobSet left = bs1.jobs();
  for (const auto& block : bs2.blocks) {
    for (const auto& id : block.jobs) {
      if (left.contains(id)) throw Error(ErrorKind::JobOverlap, "job '" + id.value + "' on both sides");
    }
  }
  BlockSchedule out;
  out.blocks.reserve(bs1.blocks.size() + bs2.blocks.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < bs1.blocks.size() || j < bs2.blocks.size()) {
    const bool take_left =
        j == bs2.blocks.size() ||
        (i < bs1.blocks.size() && cbr_compare(bs1.blocks[i].stats, bs2.blocks[j].stats) <= 0);
    out.blocks.push_back(take_left ? bs1.blocks[i++] : bs2.blocks[j++]);
  }
  return out;
}

BlockSchedule series_compose(const BlockSchedule& bs1, const BlockSchedule& bs2) {
  require_certified_shape(bs1.blocks);
  require_certified_shape(bs2.blocks);

  BlockSchedule out;
  std::span<const Block> left(bs1.blocks);
  const std::span<const Block> right(bs2.blocks);
  std::size_t right_used = 0;

  while (!left.empty() || right_used < right.size()) {
    const auto rest_right = right.subspan(right_used);
    // Candidate p: first p left blocks. Candidate q: all left plus q right.
    std::vector<CbrTriple> by_p{{0, 0, 0}};
    for (const auto& b : left) by_p.push_back(concat_stats(by_p.back(), b.stats));
    std::vector<CbrTriple> by_q{by_p.back()};
    for (const auto& b : rest_right) by_q.push_back(concat_stats(by_q.back(), b.stats));

    const CbrTriple* best = nullptr;
    auto consider = [&](const CbrTriple& t) {
      if (!best || cbr_compare(t, *best) < 0) best = &t;
    };
    for (std::size_t p = 1; p < by_p.size(); ++p) consider(by_p[p]);
    for (std::size_t q = left.empty() ? 1 : 0; q < by_q.size(); ++q) consider(by_q[q]);

    std::size_t take_left = 0;
    std::size_t take_right = 0;
    bool found = false;
    for (std::size_t q = by_q.size(); q-- > 0;) {
      if (q == 0 && left.empty()) break;
      if (cbr_compare(by_q[q], *best) == 0) {
        take_left = left.size();
        take_right = q;
        found = true;
        break;
      }
    }
    if (!found) {
      for (std::size_t p = by_p.size(); p-- > 1;) {
        if (cbr_compare(by_p[p], *best) == 0) {
          take_left = p;
          break;
        }
      }
    }

    std::vector<Block> pieces(left.begin(), left.begin() + static_cast<std::ptrdiff_t>(take_left));
    pieces.insert(pieces.end(), rest_right.begin(),
                  rest_right.begin() + static_cast<std::ptrdiff_t>(take_right));
    out.blocks.push_back(pieces.size() == 1 ? pieces.front() : fuse(pieces));
    left = left.subspan(take_left);
    right_used += take_right;
  }
  return out;
}

BlockSchedule sp_solve(const Instance& inst, const SpNode& tree) {
  verify_sp_tree(inst, tree);
  std::function<BlockSchedule(const SpNode&)> solve = [&](const SpNode& t) {
    switch (t->kind) {
      case SpTree::Kind::Leaf:
        return BlockSchedule{{make_block(inst, {t->job})}};
      case SpTree::Kind::Series:
        return series_compose(solve(t->left), solve(t->right));
      case SpTree::Kind::Parallel:
        break;
    }
    return parallel_merge(solve(t->left), solve(t->right));
  };
  if (!tree) return {};
  return solve(tree);
}

BlockSchedule sp_solve(const Instance& inst) { return sp_solve(inst, sp_recognize(inst)); }

}  // namespace minbudget
