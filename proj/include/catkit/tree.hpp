// Planar rooted trees as pasting diagrams, globular sets, and the
// realization of a tree as the globular set it pastes.
#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "catkit/delta.hpp"
#include "catkit/report.hpp"

namespace catkit {

/// A planar rooted tree. The leaf is the tree with no children; planar order
/// is part of the value, so equality is syntactic.
struct Tree {
  std::vector<Tree> children;

  Tree() = default;
  explicit Tree(std::vector<Tree> c) : children(std::move(c)) {}

  bool is_leaf() const { return children.empty(); }
  std::size_t arity() const { return children.size(); }

  bool operator==(const Tree&) const = default;
  std::strong_ordering operator<=>(const Tree& other) const;
};

/// Reads the nested bracket form, e.g. "[[[],[]]]". Whitespace is ignored.
/// Throws StructuralError on malformed input.
Tree parse_tree(std::string_view text);
std::string to_string(const Tree& t);

int height(const Tree& t);
int node_count(const Tree& t);
/// Number of nodes at each depth, root first.
std::vector<int> level_counts(const Tree& t);
/// Deletes every node deeper than k.
Tree truncate(const Tree& t, int k);

/// k-composite of two cells. Requires truncate(a, k) == truncate(b, k);
/// throws StructuralError otherwise. At k = 0 the root children are
/// concatenated; above, children are composed pairwise one level down.
Tree compose(const Tree& a, const Tree& b, int k);

/// The tree as a functor [n]^op -> Delta: entry k is the monotone map from
/// level k + 1 to level k, written as fibers (the child counts of level k).
std::vector<Fibers> to_delta_functor(const Tree& t);
/// Inverse of to_delta_functor. Throws StructuralError when consecutive
/// maps are not composable or level 0 is not a single point.
Tree from_delta_functor(const std::vector<Fibers>& maps);

/// Every tree with at most `max_nodes` nodes and height at most `max_height`,
/// by node count, then in tree order.
std::vector<Tree> enumerate_trees(int max_nodes, int max_height);

// ---------------------------------------------------------------------------
// Globular sets

/// Cells of dimension 0..dim; src[k][c] and tgt[k][c] are the source and
/// target (k-1)-cells of the k-cell c (src[0], tgt[0] are empty).
struct GlobularSet {
  std::vector<std::vector<std::string>> names;
  std::vector<std::vector<int>> src;
  std::vector<std::vector<int>> tgt;

  int dim() const { return static_cast<int>(names.size()) - 1; }
  int count(int k) const { return k < static_cast<int>(names.size()) ? static_cast<int>(names[k].size()) : 0; }
  int find(int k, const std::string& name) const;
};

/// Index ranges, then the globularity equations in every dimension >= 2.
Report check_globular(const GlobularSet& g);

/// Shifts every cell up one dimension and adds a source and a target 0-cell.
/// `tag` prefixes the names of the shifted cells.
GlobularSet suspend(const GlobularSet& g, const std::string& tag);
/// Glues the last 0-cell of `a` to the first 0-cell of `b`. The 0-cells of
/// the result are renamed |0, |1, ... from left to right.
GlobularSet wedge(const GlobularSet& a, const GlobularSet& b);

/// A cell of the realization: a node (path of child indices from the root)
/// and a gap between its children, 0 .. arity. Its dimension is the depth.
struct CellId {
  std::vector<int> path;
  int gap = 0;

  int dim() const { return static_cast<int>(path.size()); }
  auto operator<=>(const CellId&) const = default;
};
std::string to_string(const CellId& c);
/// Reads "0.1|2" style names; throws StructuralError.
CellId parse_cell(std::string_view text);

/// The globular set pasted by the tree, built as a wedge of suspensions.
/// Cells are named by their CellId.
GlobularSet realize(const Tree& t);

/// Cells of realize(t) in dimension order, then CellId order.
std::vector<CellId> cells_of(const Tree& t);
const Tree& subtree(const Tree& t, const std::vector<int>& path);

}  // namespace catkit
