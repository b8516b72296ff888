#include "catkit/tree_calculus.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <span>
#include <unordered_map>

#include <omp.h>

#include "catkit/free_monoidal.hpp"

namespace catkit {
namespace {

// ---------------------------------------------------------------------------
// Instance enumeration shared by both kernels.

struct Plan {
  std::vector<Tree> trees;
  int max_dim = 0;
  std::vector<std::vector<int>> group_of;            // [k][tree]
  std::vector<std::vector<std::vector<int>>> groups;  // [k][group] -> trees
};

Plan make_plan(const std::vector<Tree>& sample, int max_dim) {
  Plan p;
  p.max_dim = max_dim;
  // Ordering by the chain of truncations makes every group contiguous,
  // which keeps the pair tables local during the scans.
  std::vector<std::pair<std::vector<Tree>, Tree>> keyed;
  for (const auto& t : sample)
    if (height(t) <= max_dim) {
      std::vector<Tree> key;
      for (int k = 1; k < max_dim; ++k) key.push_back(truncate(t, k));
      keyed.emplace_back(std::move(key), t);
    }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [key, t] : keyed) p.trees.push_back(std::move(t));
  const int n = static_cast<int>(p.trees.size());
  p.group_of.assign(std::max(max_dim, 0), std::vector<int>(n));
  p.groups.resize(std::max(max_dim, 0));
  for (int k = 0; k < max_dim; ++k) {
    std::map<Tree, int> index;
    for (int t = 0; t < n; ++t) {
      const auto [it, fresh] = index.emplace(truncate(p.trees[t], k), static_cast<int>(p.groups[k].size()));
      if (fresh) p.groups[k].emplace_back();
      p.group_of[k][t] = it->second;
      p.groups[k][it->second].push_back(t);
    }
  }
  return p;
}

enum Law { Unit, Assoc, Interchange, LawCount };
const char* law_name(int law) {
  static const char* names[] = {"unit", "associativity", "interchange"};
  return names[law];
}

// One unit of scheduled work: all unit instances at k, all associativity
// instances with first factor a, or all interchange instances with top row
// (a, b).
struct Item {
  Law law;
  int k, j, a, b;
};

std::vector<Item> items_of(const Plan& p) {
  std::vector<Item> items;
  const int n = static_cast<int>(p.trees.size());
  for (int k = 0; k < p.max_dim; ++k) items.push_back({Unit, k, 0, 0, 0});
  for (int k = 0; k < p.max_dim; ++k)
    for (const auto& g : p.groups[k])
      for (int a : g) items.push_back({Assoc, k, 0, a, 0});
  for (int k = 0; k < p.max_dim; ++k)
    for (int j = k + 1; j < p.max_dim; ++j)
      for (int a = 0; a < n; ++a)
        for (int b : p.groups[j][p.group_of[j][a]]) items.push_back({Interchange, k, j, a, b});
  return items;
}

struct ItemResult {
  std::size_t instances = 0;
  std::array<std::size_t, LawCount> failures{};
  std::vector<std::pair<int, std::string>> recorded;  // law, instance
};

template <class Eval>
void run_item(const Plan& p, const Item& it, Eval& ev, std::size_t keep, ItemResult& out) {
  const auto& t = p.trees;
  auto fail = [&](Law law, std::string instance) {
    if (out.failures[law]++ < keep) out.recorded.emplace_back(law, std::move(instance));
  };
  const std::string level = "#" + std::to_string(it.k);
  switch (it.law) {
    case Unit:
      for (int a = 0; a < static_cast<int>(t.size()); ++a) {
        ++out.instances;
        if (!ev.unit(it.k, a)) fail(Unit, level + " " + to_string(t[a]));
      }
      break;
    case Assoc: {
      const auto& g = p.groups[it.k][p.group_of[it.k][it.a]];
      for (int b : g) {
        out.instances += g.size();
        ev.assoc_row(it.k, it.a, b, g, [&](int c) {
          fail(Assoc, level + " " + to_string(t[it.a]) + " " + to_string(t[b]) + " " + to_string(t[c]));
        });
      }
      break;
    }
    case Interchange: {
      // c ranges over trees with the k-truncation of a, d over the j-group of c.
      const auto& cs = p.groups[it.k][p.group_of[it.k][it.a]];
      for (int c : cs) {
        const auto& ds = p.groups[it.j][p.group_of[it.j][c]];
        out.instances += ds.size();
        ev.interchange_row(it.k, it.j, it.a, it.b, c, ds, [&](int d) {
          fail(Interchange, level + "/#" + std::to_string(it.j) + " " + to_string(t[it.a]) + " " +
                                to_string(t[it.b]) + " " + to_string(t[c]) + " " + to_string(t[d]));
        });
      }
      break;
    }
    default: break;
  }
}

TreeCalculusResult merge(const std::vector<ItemResult>& parts, std::size_t keep) {
  TreeCalculusResult r;
  std::array<std::size_t, LawCount> recorded{};
  std::array<std::size_t, LawCount> total{};
  for (const auto& part : parts) {
    r.instances += part.instances;
    for (const auto& [law, instance] : part.recorded)
      if (recorded[law]++ < keep) r.report.add(law_name(law), instance);
    for (int l = 0; l < LawCount; ++l) total[l] += part.failures[l];
  }
  for (int l = 0; l < LawCount; ++l) {
    r.failures += total[l];
    if (total[l] > keep) r.report.add(law_name(l), std::to_string(total[l] - keep) + " further instances");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Reference evaluation on nested trees.

struct NestedEval {
  const Plan& p;

  bool unit(int k, int a) const {
    const Tree& x = p.trees[a];
    const Tree id = truncate(x, k);
    return compose(x, id, k) == x && compose(id, x, k) == x;
  }
  template <class Fail>
  void assoc_row(int k, int a, int b, const std::vector<int>& cs, Fail fail) const {
    const Tree &x = p.trees[a], &y = p.trees[b];
    for (int c : cs) {
      const Tree& z = p.trees[c];
      if (compose(compose(x, y, k), z, k) != compose(x, compose(y, z, k), k)) fail(c);
    }
  }
  template <class Fail>
  void interchange_row(int k, int j, int a, int b, int c, const std::vector<int>& ds, Fail fail) const {
    const Tree &w = p.trees[a], &x = p.trees[b], &y = p.trees[c];
    for (int d : ds) {
      const Tree& z = p.trees[d];
      if (compose(compose(w, x, j), compose(y, z, j), k) != compose(compose(w, y, k), compose(x, z, k), j)) fail(d);
    }
  }
};

// ---------------------------------------------------------------------------
// Hash-consed evaluation. Subtrees are interned; composition of interned
// subtrees is memoized per level, densely for small ids. A root is handled as
// the list of its children's ids so that composites are never interned at
// the top.

class Arena {
public:
  explicit Arena(int levels) : memo_(std::max(levels, 1)), sparse_(std::max(levels, 1)) {
    intern(std::vector<int>{});
  }

  /// Memoizes densely for ids below the current arena size. Call before
  /// composing anything.
  void size_dense_memo() {
    dense_ = static_cast<int>(kids_.size());
    for (auto& m : memo_) m.assign(static_cast<std::size_t>(dense_) * dense_, -2);
  }

  int intern(const std::vector<int>& kids) {
    const auto [it, fresh] = index_.emplace(kids, static_cast<int>(kids_.size()));
    if (fresh) kids_.push_back(kids);
    return it->second;
  }
  int intern(const Tree& t) {
    std::vector<int> kids;
    for (const auto& c : t.children) kids.push_back(intern(c));
    return intern(kids);
  }
  const std::vector<int>& kids(int x) const { return kids_[x]; }

  /// k-composite of interned subtrees, or -1 when boundaries differ.
  [[gnu::always_inline]] int compose(int k, int x, int y) {
    if (static_cast<unsigned>(x) < static_cast<unsigned>(dense_) && static_cast<unsigned>(y) < static_cast<unsigned>(dense_)) {
      const int hit = memo_[k][x * dense_ + y];
      if (hit != -2) return hit;
    }
    return compose_slow(k, x, y);
  }

  /// Children of the k-composite of two roots given by their children.
  bool compose_forest(int k, std::span<const int> x, std::span<const int> y, std::vector<int>& out) {
    out.clear();
    if (k == 0) {
      out.insert(out.end(), x.begin(), x.end());
      out.insert(out.end(), y.begin(), y.end());
      return true;
    }
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const int c = compose(k - 1, x[i], y[i]);
      if (c < 0) return false;
      out.push_back(c);
    }
    return true;
  }

  /// Whether the k-composite of (x, y) and the l-composite of (u, v) exist and
  /// agree, without building either.
  bool same_composite(int k, std::span<const int> x, std::span<const int> y, int l, std::span<const int> u,
                      std::span<const int> v) {
    const std::size_t n = k == 0 ? x.size() + y.size() : x.size();
    const std::size_t m = l == 0 ? u.size() + v.size() : u.size();
    if (n != m || (k > 0 && x.size() != y.size()) || (l > 0 && u.size() != v.size())) return false;
    int lhs[256];
    if (n > std::size(lhs)) {
      std::vector<int> a, b;
      return compose_forest(k, x, y, a) && compose_forest(l, u, v, b) && a == b;
    }
    if (k == 0) {
      for (std::size_t i = 0; i < x.size(); ++i) lhs[i] = x[i];
      for (std::size_t i = 0; i < y.size(); ++i) lhs[x.size() + i] = y[i];
    } else {
      const int* memo = memo_[k - 1].data();
      for (std::size_t i = 0; i < n; ++i)
        if ((lhs[i] = lookup(memo, k - 1, x[i], y[i])) < 0) return false;
    }
    if (l == 0) {
      for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] != lhs[i]) return false;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != lhs[u.size() + i]) return false;
      return true;
    }
    const int* memo = memo_[l - 1].data();
    for (std::size_t i = 0; i < n; ++i)
      if (lookup(memo, l - 1, u[i], v[i]) != lhs[i]) return false;
    return true;
  }

private:
  [[gnu::always_inline]] int lookup(const int* memo, int k, int x, int y) {
    if (static_cast<unsigned>(x) < static_cast<unsigned>(dense_) && static_cast<unsigned>(y) < static_cast<unsigned>(dense_)) {
      const int hit = memo[x * dense_ + y];
      if (hit != -2) return hit;
    }
    return compose_slow(k, x, y);
  }

  [[gnu::noinline]] int compose_slow(int k, int x, int y) {
    int* slot = nullptr;
    if (x < dense_ && y < dense_) {
      slot = &memo_[k][x * dense_ + y];
      if (*slot != -2) return *slot;
    } else {
      const auto it = sparse_[k].find(key(x, y));
      if (it != sparse_[k].end()) return it->second;
    }
    std::vector<int> out;
    const int r = compose_forest(k, kids_[x], kids_[y], out) ? intern(out) : -1;
    if (slot) *slot = r;
    else sparse_[k].emplace(key(x, y), r);
    return r;
  }

  static std::uint64_t key(int x, int y) { return (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint32_t>(y); }

  std::deque<std::vector<int>> kids_;  // stable under growth while composing
  std::unordered_map<std::vector<int>, int, VectorHash> index_;
  int dense_ = 0;
  std::vector<std::vector<int>> memo_;
  std::vector<std::unordered_map<std::uint64_t, int>> sparse_;
};

// Pair composites at each level, computed once in the shared arena.
struct Pairs {
  int n = 0;
  std::vector<std::vector<int>> offset;  // [k][a * n + b] into pool, -1 if not composable
  std::vector<int> pool;                 // length-prefixed child lists

  std::span<const int> get(int k, int a, int b) const {
    const int at = offset[k][a * n + b];
    return {pool.data() + at + 1, static_cast<std::size_t>(pool[at])};
  }
};

class ArenaEval {
public:
  ArenaEval(Arena arena, const std::vector<int>& roots, const std::vector<int>& ids, const Pairs& pairs)
      : arena_(std::move(arena)), roots_(roots), ids_(ids), pairs_(pairs) {}

  bool unit(int k, int a) {
    const auto& x = arena_.kids(roots_[a]);
    const auto& id = arena_.kids(ids_[k * roots_.size() + a]);
    return arena_.compose_forest(k, x, id, out_) && out_ == x && arena_.compose_forest(k, id, x, out_) &&
           out_ == x;
  }
  template <class Fail>
  void assoc_row(int k, int a, int b, const std::vector<int>& cs, Fail fail) {
    const auto ab = pairs_.get(k, a, b);
    const auto& x = arena_.kids(roots_[a]);
    for (int c : cs)
      if (!arena_.same_composite(k, ab, arena_.kids(roots_[c]), k, x, pairs_.get(k, b, c))) fail(c);
  }
  template <class Fail>
  void interchange_row(int k, int j, int a, int b, int c, const std::vector<int>& ds, Fail fail) {
    const auto ab = pairs_.get(j, a, b), ac = pairs_.get(k, a, c);
    for (int d : ds)
      if (!arena_.same_composite(k, ab, pairs_.get(j, c, d), j, ac, pairs_.get(k, b, d))) fail(d);
  }

private:
  Arena arena_;
  const std::vector<int>& roots_;
  const std::vector<int>& ids_;  // [k * n + a]: interned truncate(a, k)
  const Pairs& pairs_;
  std::vector<int> out_;
};

}  // namespace

namespace serial {
TreeCalculusResult check_tree_calculus(const std::vector<Tree>& sample, int max_dim, std::size_t keep) {
  const Plan p = make_plan(sample, max_dim);
  const auto items = items_of(p);
  std::vector<ItemResult> parts(items.size());
  NestedEval ev{p};
  for (std::size_t i = 0; i < items.size(); ++i) run_item(p, items[i], ev, keep, parts[i]);
  return merge(parts, keep);
}
}  // namespace serial

namespace parallel {
TreeCalculusResult check_tree_calculus(const std::vector<Tree>& sample, int max_dim, std::size_t keep) {
  const Plan p = make_plan(sample, max_dim);
  const auto items = items_of(p);
  const int n = static_cast<int>(p.trees.size());

  Arena base(max_dim);
  std::vector<int> roots, ids(static_cast<std::size_t>(std::max(max_dim, 0)) * n);
  for (const auto& t : p.trees) roots.push_back(base.intern(t));
  for (int k = 0; k < max_dim; ++k)
    for (int a = 0; a < n; ++a) ids[k * n + a] = base.intern(truncate(p.trees[a], k));
  base.size_dense_memo();
  Pairs pairs;
  pairs.n = n;
  pairs.offset.assign(std::max(max_dim, 0), std::vector<int>(static_cast<std::size_t>(n) * n, -1));
  std::vector<int> out;
  for (int k = 0; k < max_dim; ++k)
    for (const auto& g : p.groups[k])
      for (int a : g)
        for (int b : g)
          if (base.compose_forest(k, base.kids(roots[a]), base.kids(roots[b]), out)) {
            pairs.offset[k][a * n + b] = static_cast<int>(pairs.pool.size());
            pairs.pool.push_back(static_cast<int>(out.size()));
            pairs.pool.insert(pairs.pool.end(), out.begin(), out.end());
          }
  for (int k = 0; k < max_dim; ++k)
    for (int a = 0; a < n; ++a)
      for (int b : p.groups[k][p.group_of[k][a]])
        if (pairs.offset[k][a * n + b] < 0) {
          // Same truncation but not composable: the composition itself is broken.
          TreeCalculusResult r;
          r.report.add("composable", "#" + std::to_string(k) + " " + to_string(p.trees[a]) + " " +
                                         to_string(p.trees[b]));
          r.failures = 1;
          return r;
        }

  std::vector<ItemResult> parts(items.size());
#pragma omp parallel
  {
    ArenaEval ev(base, roots, ids, pairs);
#pragma omp for schedule(dynamic, 16)
    for (std::size_t i = 0; i < items.size(); ++i) run_item(p, items[i], ev, keep, parts[i]);
  }
  return merge(parts, keep);
}
}  // namespace parallel

TreeCalculusResult check_tree_calculus(const std::vector<Tree>& sample, int max_dim, std::size_t keep) {
  return parallel::check_tree_calculus(sample, max_dim, keep);
}

}  // namespace catkit
