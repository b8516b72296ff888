#include "catkit/graft.hpp"

#include <algorithm>
#include <functional>

namespace catkit {
namespace {

LabelledTree boundary(const LabelledTree& l, int k, bool at_target) {
  LabelledTree out;
  out.shape = truncate(l.shape, k);
  for (const auto& [cell, label] : l.labels) {
    if (cell.dim() < k) out.labels.emplace(cell, label);
    else if (cell.dim() == k) {
      const int last = static_cast<int>(subtree(l.shape, cell.path).arity());
      if (cell.gap == (at_target ? last : 0)) out.labels.emplace(CellId{cell.path, 0}, label);
    }
  }
  return out;
}

std::string label_text(const Tree& t) { return to_string(t); }
std::string label_text(const LabelledTree& l) { return to_string(l.shape) + "{" + std::to_string(l.labels.size()) + "}"; }

}  // namespace

LabelledTree source(const LabelledTree& l, int k) { return boundary(l, k, false); }
LabelledTree target(const LabelledTree& l, int k) { return boundary(l, k, true); }

LabelledTree compose(const LabelledTree& a, const LabelledTree& b, int k) {
  if (k < 0) throw StructuralError("compose: negative level");
  if (target(a, k) != source(b, k))
    throw StructuralError("compose: labelled boundaries differ at " + std::to_string(k));
  LabelledTree out;
  out.shape = compose(a.shape, b.shape, k);
  out.labels = a.labels;
  for (const auto& [cell, label] : b.labels) {
    if (cell.dim() < k) continue;
    CellId moved = cell;
    const std::vector<int> node(cell.path.begin(), cell.path.begin() + k);
    const int offset = static_cast<int>(subtree(a.shape, node).arity());
    if (cell.dim() == k) {
      if (cell.gap == 0) continue;  // shared with the last gap of a
      moved.gap += offset;
    } else {
      moved.path[k] += offset;
    }
    out.labels[moved] = label;
  }
  return out;
}

template <class Label>
Report check_labelling(const Labelled<Label>& l) {
  Report r;
  const auto cells = cells_of(l.shape);
  for (const auto& c : cells)
    if (!l.labels.count(c)) r.add("label-missing", to_string(c));
  for (const auto& [c, label] : l.labels)
    if (!std::binary_search(cells.begin(), cells.end(), c,
                            [](const CellId& x, const CellId& y) {
                              return x.dim() != y.dim() ? x.dim() < y.dim() : x < y;
                            }))
      r.add("label-extra", to_string(c));
  if (!r.ok()) return r;
  for (const auto& c : cells) {
    const Label& label = l.labels.at(c);
    const int d = c.dim();
    if (cell_dim(label) > d) {
      r.add("label-dimension", to_string(c) + " " + label_text(label));
      continue;
    }
    if (d == 0) continue;
    const std::vector<int> parent(c.path.begin(), c.path.end() - 1);
    const int i = c.path.back();
    if (source(label, d - 1) != l.labels.at(CellId{parent, i})) r.add("label-source", to_string(c));
    if (target(label, d - 1) != l.labels.at(CellId{parent, i + 1})) r.add("label-target", to_string(c));
  }
  return r;
}

template Report check_labelling(const Labelled<Tree>&);
template Report check_labelling(const Labelled<LabelledTree>&);

const char* to_string(GraftOrder o) {
  switch (o) {
    case GraftOrder::InnermostLeftmost: return "innermost-leftmost";
    case GraftOrder::InnermostRightmost: return "innermost-rightmost";
    case GraftOrder::RowFirst: return "row-first";
  }
  return "?";
}

namespace {

// The pasting composite of the sub-diagram below a node at depth k: its
// children's composites are k-cells-apart and compose along k.
template <class Cell>
Cell paste(const Labelled<Cell>& l, GraftOrder order) {
  std::function<Cell(const std::vector<int>&)> comp = [&](const std::vector<int>& path) -> Cell {
    const Tree& x = subtree(l.shape, path);
    const int k = static_cast<int>(path.size());
    const int q = static_cast<int>(x.arity());
    if (q == 0) return l.labels.at(CellId{path, 0});
    auto child = [&](int i) {
      auto p = path;
      p.push_back(i);
      return p;
    };
    if (order == GraftOrder::InnermostRightmost) {
      Cell acc = comp(child(q - 1));
      for (int i = q - 2; i >= 0; --i) acc = compose(comp(child(i)), acc, k);
      return acc;
    }
    const bool rows = order == GraftOrder::RowFirst &&
                      std::any_of(x.children.begin(), x.children.end(), [](const Tree& c) { return !c.is_leaf(); });
    if (!rows) {
      Cell acc = comp(child(0));
      for (int i = 1; i < q; ++i) acc = compose(acc, comp(child(i)), k);
      return acc;
    }
    // Row r composes the r-th grandchild of every child along k; a child with
    // fewer grandchildren contributes the identity on its last gap label.
    std::size_t depth = 0;
    for (const auto& c : x.children) depth = std::max(depth, c.arity());
    std::optional<Cell> result;
    for (std::size_t r = 0; r < depth; ++r) {
      std::optional<Cell> row;
      for (int i = 0; i < q; ++i) {
        const auto ci = child(i);
        const std::size_t qi = x.children[i].arity();
        Cell entry = [&] {
          if (r < qi) {
            auto g = ci;
            g.push_back(static_cast<int>(r));
            return comp(g);
          }
          return l.labels.at(CellId{ci, static_cast<int>(qi)});
        }();
        row = row ? compose(*row, entry, k) : entry;
      }
      result = result ? compose(*result, *row, k + 1) : *row;
    }
    return *result;
  };
  return comp({});
}

template <class Cell>
Report order_report(const Labelled<Cell>& l) {
  Report r;
  const Cell canonical = paste(l, GraftOrder::InnermostLeftmost);
  for (GraftOrder o : {GraftOrder::InnermostRightmost, GraftOrder::RowFirst})
    if (paste(l, o) != canonical) r.add("graft-order", to_string(o));
  return r;
}

template <class Cell>
void require_labelling(const Labelled<Cell>& l) {
  Report r = check_labelling(l);
  if (!r.ok()) throw LawViolation("incompatible labelling", std::move(r));
}

}  // namespace

Tree graft(const LabelledTree& l, GraftOrder order) {
  require_labelling(l);
  return paste(l, order);
}

LabelledTree collapse(const Labelled<LabelledTree>& l, GraftOrder order) {
  require_labelling(l);
  return paste(l, order);
}

LabelledTree graft_labels(const Labelled<LabelledTree>& l) {
  LabelledTree out;
  out.shape = l.shape;
  for (const auto& [cell, label] : l.labels) out.labels.emplace(cell, graft(label));
  return out;
}

Report check_graft_orders(const LabelledTree& l) {
  require_labelling(l);
  return order_report(l);
}

Report check_graft_orders(const Labelled<LabelledTree>& l) {
  require_labelling(l);
  return order_report(l);
}

Tree globe(int n) {
  Tree t;
  for (int i = 0; i < n; ++i) t = Tree(std::vector<Tree>{t});
  return t;
}

LabelledTree unit_labelling(const Tree& t, int dim) {
  if (dim < height(t)) throw StructuralError("unit_labelling: tree is higher than the dimension");
  LabelledTree out;
  out.shape = globe(dim);
  std::vector<int> path;
  for (int k = 0; k < dim; ++k) {
    out.labels[{path, 0}] = truncate(t, k);
    out.labels[{path, 1}] = truncate(t, k);
    path.push_back(0);
  }
  out.labels[{path, 0}] = t;
  return out;
}

LabelledTree generic_labelling(const Tree& shape) {
  LabelledTree out;
  out.shape = shape;
  for (const auto& c : cells_of(shape)) out.labels.emplace(c, globe(c.dim()));
  return out;
}

}  // namespace catkit
