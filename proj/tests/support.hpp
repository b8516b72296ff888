// Seeded generators for small random categories, functors and profunctors.
#pragma once

#include <algorithm>
#include <random>
#include <set>

#include "catkit/fincat.hpp"
#include "catkit/profunctor.hpp"

namespace catkit::testing {

using Rng = std::mt19937;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline FinCat random_preorder(Rng& rng, int n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && uniform(rng, 0, 3) == 0) leq[i][j] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  return preorder_category(n, leq);
}

inline FinCat random_dag_category(Rng& rng, int n) {
  std::vector<Arrow> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int k = uniform(rng, 0, 4) == 0 ? 2 : uniform(rng, 0, 2) == 0 ? 1 : 0;
      for (int e = 0; e < k; ++e) edges.push_back({i, j});
    }
  return free_category_on_dag(n, edges);
}

/// One of several families, at most `max_objects` objects and `max_morphisms` morphisms.
inline FinCat random_category(Rng& rng, int max_objects = 4, int max_morphisms = 12) {
  for (;;) {
    FinCat c;
    switch (uniform(rng, 0, 6)) {
      case 0: c = random_preorder(rng, uniform(rng, 1, max_objects)); break;
      case 1: c = random_dag_category(rng, uniform(rng, 1, max_objects)); break;
      case 2: c = cyclic_group(uniform(rng, 1, 4)); break;
      case 3: c = monoid_category(2, {0, 1, 1, 1}, 0, "m"); break;  // {1, e} with e e = e
      case 4: c = product(walking_arrow(), cyclic_group(2)); break;
      case 5: c = coproduct(random_preorder(rng, uniform(rng, 1, 2)), cyclic_group(uniform(rng, 1, 3))); break;
      default: c = walking_arrow(); break;
    }
    if (c.object_count() <= max_objects && c.morphism_count() <= max_morphisms) return c;
  }
}

inline Functor random_functor(Rng& rng, const CatRef& source, const CatRef& target) {
  auto all = enumerate_functors(source, target, 200);
  return all[uniform(rng, 0, static_cast<int>(all.size()) - 1)];
}

/// A sub-profunctor of a comma profunctor Z(f x, g y): random generators closed
/// under both actions. Fibers may be empty.
inline Profunctor random_profunctor(Rng& rng, const CatRef& x, const CatRef& y) {
  const CatRef z = share(random_category(rng, 3, 8));
  const Functor f = random_functor(rng, x, z);
  const Functor g = random_functor(rng, y, z);
  const Profunctor full = comma_profunctor(f, g);
  const int nx = x->object_count(), ny = y->object_count();
  std::set<std::tuple<int, int, int>> keep;
  std::vector<std::tuple<int, int, int>> stack;
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b)
      for (int p = 0; p < full.fiber_size(a, b); ++p)
        if (uniform(rng, 0, 2) == 0) stack.emplace_back(a, b, p);
  while (!stack.empty()) {
    auto [a, b, p] = stack.back();
    stack.pop_back();
    if (!keep.insert({a, b, p}).second) continue;
    for (int u = 0; u < x->morphism_count(); ++u)
      if (x->cod(u) == a) stack.emplace_back(x->dom(u), b, full.left(u, b, p));
    for (int v = 0; v < y->morphism_count(); ++v)
      if (y->dom(v) == b) stack.emplace_back(a, y->cod(v), full.right(a, p, v));
  }
  std::vector<int> sizes(nx * ny, 0);
  std::vector<std::vector<int>> local(full.sizes().size());
  std::vector<std::vector<std::string>> names(nx * ny);
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b) {
      auto& l = local[a * ny + b];
      l.assign(full.fiber_size(a, b), -1);
      for (int p = 0; p < full.fiber_size(a, b); ++p)
        if (keep.count({a, b, p})) {
          l[p] = sizes[a * ny + b]++;
          names[a * ny + b].push_back("e" + std::to_string(a) + "_" + std::to_string(b) + "_" + std::to_string(p));
        }
    }
  auto global = [&](int a, int b, int q) {
    const auto& l = local[a * ny + b];
    return static_cast<int>(std::find(l.begin(), l.end(), q) - l.begin());
  };
  return Profunctor(
      x, y, sizes,
      [&](int u, int b, int q) { return local[x->dom(u) * ny + b][full.left(u, b, global(x->cod(u), b, q))]; },
      [&](int a, int q, int v) { return local[a * ny + y->cod(v)][full.right(a, global(a, y->dom(v), q), v)]; },
      names);
}

}  // namespace catkit::testing
