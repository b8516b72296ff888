// The free strict monoidal category F(M) on a multicategory M.
//
// Objects are lists of M-objects. A morphism <x_1..x_n> -> <y_1..y_m> is a
// tuple of multiarrows b_1..b_m with target(b_j) = y_j whose sources
// concatenate to <x_1..x_n>. Tensor is concatenation.
#pragma once

#include <mutex>
#include <optional>
#include <unordered_map>

#include "catkit/multicat.hpp"
#include "catkit/strict_monoidal.hpp"

namespace catkit {

struct FreeMor {
  List dom;
  List cod;
  std::vector<int> blocks;  // one multiarrow per entry of cod
  bool operator==(const FreeMor&) const = default;
};

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = v.size();
    for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// Symbolic backend: homs are enumerated on demand and memoized.
class FreeMonoidal {
public:
  explicit FreeMonoidal(MultiRef m) : m_(std::move(m)) {}

  const Multicategory& multicategory() const { return *m_; }
  const MultiRef& multicategory_ref() const { return m_; }

  /// Block tuples of every morphism dom -> cod, in lexicographic order.
  const std::vector<std::vector<int>>& hom(const List& dom, const List& cod) const;

  FreeMor identity(const List& objects) const;
  /// g after f; nullopt when a required multicomposite is missing (truncation).
  std::optional<FreeMor> compose(const FreeMor& g, const FreeMor& f) const;
  FreeMor tensor(const FreeMor& a, const FreeMor& b) const;
  /// The unit zeta_M: a multiarrow as a one-block morphism source -> <target>.
  FreeMor zeta(int arrow) const;
  std::string name(const FreeMor& f) const;

private:
  MultiRef m_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<List, List>, std::vector<std::vector<int>>> memo_;
};

/// zeta_M is full and faithful: M(l, y) -> F(M)(l, <y>) is a bijection for
/// every list l up to the bound. Violations are "zeta-not-bijective".
Report check_zeta_fully_faithful(const FreeMonoidal& f, int bound);

/// F(M) restricted to lists of length at most the bound, as a truncated
/// tabulated strict monoidal category.
struct MaterializedFree {
  StrictMonCat cat;
  std::vector<List> objects;         // shortlex
  std::vector<FreeMor> morphisms;    // by (dom, cod, hom order)
  std::unordered_map<std::vector<int>, int, VectorHash> index;  // [dom, cod, blocks...] -> morphism

  int object_index(const List& l) const;
  /// -1 when the morphism lies outside the materialization.
  int morphism_index(const FreeMor& f) const;
};

/// Throws BoundExceeded past `max_morphisms`.
MaterializedFree materialize(const FreeMonoidal& f, int max_length, std::size_t max_morphisms = 1000000);

}  // namespace catkit
