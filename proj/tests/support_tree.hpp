// Seeded generators for trees and compatible labellings.
#pragma once

#include "catkit/graft.hpp"
#include "support.hpp"

namespace catkit::testing {

inline Tree random_tree(Rng& rng, int max_nodes, int max_height) {
  // Grow by attaching each new node below a random node of admissible depth.
  Tree t;
  const int target = uniform(rng, 1, max_nodes);
  std::vector<std::pair<std::vector<int>, int>> open{{{}, 0}};  // path, depth
  for (int n = 1; n < target; ++n) {
    std::vector<std::size_t> ok;
    for (std::size_t i = 0; i < open.size(); ++i)
      if (open[i].second < max_height) ok.push_back(i);
    if (ok.empty()) break;
    const auto [path, depth] = open[ok[uniform(rng, 0, static_cast<int>(ok.size()) - 1)]];
    Tree* x = &t;
    for (int i : path) x = &x->children[i];
    x->children.emplace_back();
    auto child = path;
    child.push_back(static_cast<int>(x->children.size()) - 1);
    open.push_back({child, depth + 1});
  }
  return t;
}

/// A tree with truncation t at k - 1: random children below the depth-(k-1) nodes.
inline Tree extend(Rng& rng, const Tree& t, int k, int max_children = 2) {
  if (k <= 0) return t;
  if (k == 1) {
    Tree out;
    for (int i = uniform(rng, 0, max_children); i > 0; --i) out.children.emplace_back();
    return out;
  }
  Tree out;
  for (const auto& c : t.children) out.children.push_back(extend(rng, c, k - 1, max_children));
  return out;
}

inline LabelledTree extend(Rng& rng, const LabelledTree& a, int k) {
  // New depth-k nodes hang below depth-(k-1) nodes w; every gap of w keeps
  // w's label and a new node is labelled by an extension of it.
  LabelledTree out;
  std::function<Tree(const Tree&, std::vector<int>&)> grow = [&](const Tree& x, std::vector<int>& path) {
    Tree y;
    if (static_cast<int>(path.size()) == k - 1) {
      const Tree w = a.labels.at(CellId{path, 0});
      const int n = uniform(rng, 0, 2);
      for (int i = 0; i <= n; ++i) out.labels[{path, i}] = w;
      for (int i = 0; i < n; ++i) {
        y.children.emplace_back();
        auto p = path;
        p.push_back(i);
        out.labels[{p, 0}] = extend(rng, w, k);
      }
      return y;
    }
    for (int g = 0; g <= static_cast<int>(x.arity()); ++g) out.labels[{path, g}] = a.labels.at(CellId{path, g});
    for (std::size_t i = 0; i < x.arity(); ++i) {
      path.push_back(static_cast<int>(i));
      y.children.push_back(grow(x.children[i], path));
      path.pop_back();
    }
    return y;
  };
  std::vector<int> root;
  out.shape = k == 0 ? a.shape : grow(a.shape, root);
  if (k == 0) out.labels = a.labels;
  return out;
}

inline Tree label_point(const Tree*) { return Tree{}; }
inline LabelledTree label_point(const LabelledTree*) { return {Tree{}, {{CellId{{}, 0}, Tree{}}}}; }

/// A compatible labelling of `shape`: every gap of a node carries the node's
/// label, and a child's label extends its parent's.
template <class Label>
Labelled<Label> random_labelling(Rng& rng, const Tree& shape) {
  Labelled<Label> out;
  out.shape = shape;
  std::function<void(const Tree&, std::vector<int>&, const Label&)> go = [&](const Tree& x, std::vector<int>& path,
                                                                              const Label& mine) {
    for (int g = 0; g <= static_cast<int>(x.arity()); ++g) out.labels[{path, g}] = mine;
    for (std::size_t i = 0; i < x.arity(); ++i) {
      path.push_back(static_cast<int>(i));
      go(x.children[i], path, extend(rng, mine, static_cast<int>(path.size())));
      path.pop_back();
    }
  };
  std::vector<int> root;
  go(shape, root, label_point(static_cast<const Label*>(nullptr)));
  return out;
}

}  // namespace catkit::testing
