// Labelled trees and grafting: the composition of the globular classifier.
//
// A labelling of a shape assigns to every cell of realize(shape) a cell of
// the same or lower dimension, compatibly with sources and targets. Cells of
// Tree have equal source and target (the truncation). Cells of the labelled
// trees themselves do not, so the same pasting routine serves for grafting
// (labels are trees) and for collapsing a labelling of labellings (labels are
// labelled trees).
#pragma once

#include <map>

#include "catkit/tree.hpp"

namespace catkit {

template <class Label>
struct Labelled {
  Tree shape;
  std::map<CellId, Label> labels;

  bool operator==(const Labelled&) const = default;
};
using LabelledTree = Labelled<Tree>;

// Cell algebra of Tree: source and target are both truncation.
inline int cell_dim(const Tree& t) { return height(t); }
inline Tree source(const Tree& t, int k) { return truncate(t, k); }
inline Tree target(const Tree& t, int k) { return truncate(t, k); }

// Cell algebra of labelled trees.
inline int cell_dim(const LabelledTree& l) { return height(l.shape); }
/// The k-source: shape truncated at k, each depth-k node keeping its first gap label.
LabelledTree source(const LabelledTree& l, int k);
/// The k-target: as source(), with the last gap label of each depth-k node.
LabelledTree target(const LabelledTree& l, int k);
/// Pastes b after a along k-cells. Throws StructuralError unless target(a, k) == source(b, k).
LabelledTree compose(const LabelledTree& a, const LabelledTree& b, int k);

/// Exactly the cells of realize(shape) are labelled; a k-cell's label has
/// dimension at most k and its (k-1)-source and -target are the labels of
/// the cell's source and target.
template <class Label>
Report check_labelling(const Labelled<Label>& l);

enum class GraftOrder {
  InnermostLeftmost,   // children first, folded from the left (the canonical order)
  InnermostRightmost,  // children first, folded from the right
  RowFirst,            // composes across each row of grandchildren first, by interchange
};
const char* to_string(GraftOrder o);

/// The pasting composite of a labelling. Throws LawViolation when the
/// labelling is incompatible.
Tree graft(const LabelledTree& l, GraftOrder order = GraftOrder::InnermostLeftmost);
/// Multiplication of the free strict omega-category monad on Tree: grafts
/// a labelling whose labels are themselves labelled trees.
LabelledTree collapse(const Labelled<LabelledTree>& l, GraftOrder order = GraftOrder::InnermostLeftmost);
/// Grafts every label, keeping the outer shape.
LabelledTree graft_labels(const Labelled<LabelledTree>& l);

/// Empty when every evaluation order gives the canonical result.
Report check_graft_orders(const LabelledTree& l);
Report check_graft_orders(const Labelled<LabelledTree>& l);

/// The linear tree of height n, the shape of a single n-cell.
Tree globe(int n);
/// A tree taken as a dim-cell, as the labelling of globe(dim) by its boundaries.
LabelledTree unit_labelling(const Tree& t, int dim);
/// Every k-cell of the shape labelled by globe(k); grafts back to the shape.
LabelledTree generic_labelling(const Tree& shape);

}  // namespace catkit
