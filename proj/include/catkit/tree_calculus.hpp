// Exhaustive law checks for the k-compositions of trees.
//
// The serial kernel evaluates every instance with compose() on nested trees
// and is the reference. The parallel kernel hash-conses subtrees into
// per-thread arenas with memoized composition, so an instance costs a few
// table lookups per root child. Both enumerate instances in the same order
// and return identical results.
#pragma once

#include "catkit/tree.hpp"

namespace catkit {

struct TreeCalculusResult {
  Report report;
  std::size_t instances = 0;  // law instances checked
  std::size_t failures = 0;   // all failures, recorded or not

  bool operator==(const TreeCalculusResult&) const = default;
};

// The trees of `sample` with height <= max_dim are taken as max_dim-cells.
// Checked: both unit laws of every compose_k (k < max_dim) against the
// identity cell truncate(t, k); associativity of compose_k; interchange of
// compose_k and compose_j for k < j < max_dim. Every instance whose
// boundaries match is checked. The first `keep` failures of each law are
// recorded in the report.
namespace serial {
TreeCalculusResult check_tree_calculus(const std::vector<Tree>& sample, int max_dim, std::size_t keep = 8);
}
namespace parallel {
TreeCalculusResult check_tree_calculus(const std::vector<Tree>& sample, int max_dim, std::size_t keep = 8);
}
TreeCalculusResult check_tree_calculus(const std::vector<Tree>& sample, int max_dim, std::size_t keep = 8);

}  // namespace catkit
