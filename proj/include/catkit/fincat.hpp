// Finite categories, functors and natural transformations.
//
// Objects and morphisms are dense integer indices. Composition is written
// compose(g, f) and means "f then g" everywhere in catkit.
#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catkit/report.hpp"

namespace catkit {

struct Arrow {
  int dom = 0;
  int cod = 0;
  bool operator==(const Arrow&) const = default;
};

/// A finite category with a total composition table.
///
/// The table is stored sparsely: for every morphism f there is one entry per
/// morphism g with dom(g) == cod(f). An entry of -1 marks a missing composite;
/// check_category() reports it as a law violation.
class FinCat {
public:
  FinCat() = default;

  /// Builds the category from raw tables. `composite(g, f)` is queried for
  /// every composable pair. Throws StructuralError on out-of-range indices.
  template <class ComposeFn>
  FinCat(int objects, std::vector<Arrow> arrows, std::vector<int> identities, ComposeFn composite,
         std::vector<std::string> object_names = {}, std::vector<std::string> arrow_names = {})
      : FinCat(objects, std::move(arrows), std::move(identities), std::move(object_names),
               std::move(arrow_names)) {
    for (int f = 0; f < morphism_count(); ++f)
      for (int g : out_[arrows_[f].cod]) table_[row_[f] + out_pos_[g]] = composite(g, f);
    validate_table();
  }

  int object_count() const { return objects_; }
  int morphism_count() const { return static_cast<int>(arrows_.size()); }

  const Arrow& arrow(int f) const { return arrows_[f]; }
  int dom(int f) const { return arrows_[f].dom; }
  int cod(int f) const { return arrows_[f].cod; }
  int identity(int x) const { return identities_[x]; }
  bool is_identity(int f) const { return identities_[arrows_[f].dom] == f; }

  bool composable(int g, int f) const { return arrows_[f].cod == arrows_[g].dom; }
  /// g after f, or -1 when the table has no entry. Requires composable(g, f).
  int compose(int g, int f) const { return table_[row_[f] + out_pos_[g]]; }
  /// Like compose() but throws StructuralError when the pair is not composable.
  int compose_checked(int g, int f) const;

  std::span<const int> hom(int x, int y) const { return homs_[x * objects_ + y]; }
  /// Morphisms with domain x, ascending.
  std::span<const int> out(int x) const { return out_[x]; }
  /// Position of f inside hom(dom f, cod f).
  int hom_position(int f) const { return hom_pos_[f]; }

  /// Some two-sided inverse of f, searched exhaustively in hom(cod f, dom f).
  std::optional<int> inverse(int f) const;
  bool is_iso(int f) const { return inverse(f).has_value(); }

  const std::string& object_name(int x) const { return object_names_[x]; }
  const std::string& morphism_name(int f) const { return arrow_names_[f]; }
  const std::vector<std::string>& object_names() const { return object_names_; }
  const std::vector<std::string>& morphism_names() const { return arrow_names_; }
  std::optional<int> find_object(const std::string& name) const;
  std::optional<int> find_morphism(const std::string& name) const;

  /// Copy with a single composition entry overwritten (seeded defects in tests).
  FinCat with_composite(int g, int f, int h) const;
  FinCat renamed(std::vector<std::string> object_names, std::vector<std::string> arrow_names) const;

  /// Structural equality of the tables; names are ignored.
  bool same_structure(const FinCat& other) const;

private:
  FinCat(int objects, std::vector<Arrow> arrows, std::vector<int> identities,
         std::vector<std::string> object_names, std::vector<std::string> arrow_names);
  void validate_table() const;

  int objects_ = 0;
  std::vector<Arrow> arrows_;
  std::vector<int> identities_;
  std::vector<std::vector<int>> homs_;
  std::vector<std::vector<int>> out_;
  std::vector<int> hom_pos_;
  std::vector<int> out_pos_;
  std::vector<std::size_t> row_;
  std::vector<int> table_;
  std::vector<std::string> object_names_;
  std::vector<std::string> arrow_names_;
};

using CatRef = std::shared_ptr<const FinCat>;

inline CatRef share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }
/// Pointer-equal or structurally equal.
bool same_category(const CatRef& a, const CatRef& b);

/// Incremental construction with automatic identities.
class CategoryBuilder {
public:
  int add_object(std::string name = {});
  int add_morphism(int dom, int cod, std::string name = {});
  /// Records g after f = h. Identity composites are filled in automatically.
  void set_composite(int g, int f, int h);
  int identity(int x) const { return identities_[x]; }
  int object_count() const { return static_cast<int>(identities_.size()); }
  int morphism_count() const { return static_cast<int>(arrows_.size()); }
  /// Missing non-identity composites become -1 entries.
  FinCat build() const;

private:
  std::vector<Arrow> arrows_;
  std::vector<int> identities_;
  std::vector<std::string> object_names_;
  std::vector<std::string> arrow_names_;
  std::vector<std::vector<std::pair<int, int>>> composites_;  // per f: (g, h)
};

// ---------------------------------------------------------------------------
// Standard categories

FinCat terminal_category();
FinCat discrete_category(int objects);
/// a --u--> b
FinCat walking_arrow();
/// One object; morphisms 0..n-1 with the given multiplication table
/// (`mult[a * n + b]` = a after b) and unit element.
FinCat monoid_category(int n, const std::vector<int>& mult, int unit, std::string name = "*");
/// Cyclic group Z/n as a one-object category (composition = addition).
FinCat cyclic_group(int n);
/// Thin category of a preorder given by its reflexive-transitive relation.
FinCat preorder_category(int objects, const std::vector<std::vector<bool>>& leq);
/// Free category on a finite acyclic graph: morphisms are the paths.
FinCat free_category_on_dag(int objects, const std::vector<Arrow>& edges);
FinCat opposite(const FinCat& c);
/// Object (a, b) has index a * |B| + b; morphism (f, g) has index f * |B_1| + g.
FinCat product(const FinCat& a, const FinCat& b);
/// Disjoint union; objects and morphisms of `b` are shifted after those of `a`.
FinCat coproduct(const FinCat& a, const FinCat& b);
/// Morphisms of c as objects, commuting squares as morphisms; built directly.
FinCat arrow_category(const FinCat& c);

// ---------------------------------------------------------------------------
// Validation kernels. The parallel kernel partitions the associativity scan
// over OpenMP threads and merges per-morphism results in index order, so its
// report is identical to the serial one.

namespace serial {
Report check_category(const FinCat& c);
}
namespace parallel {
Report check_category(const FinCat& c);
}
/// Exhaustive law check: composite endpoints, identity laws, associativity.
Report check_category(const FinCat& c);

// ---------------------------------------------------------------------------
// Functors and natural transformations

struct Functor {
  CatRef source;
  CatRef target;
  std::vector<int> object_map;
  std::vector<int> morphism_map;

  int on_object(int x) const { return object_map[x]; }
  int on_morphism(int f) const { return morphism_map[f]; }
};

/// Throws StructuralError when maps have the wrong size or out-of-range values.
void check_functor_shape(const Functor& f);
Report check_functor(const Functor& f);
Functor identity_functor(const CatRef& c);
Functor constant_functor(const CatRef& source, const CatRef& target, int object);
/// `second` after `first`.
Functor compose_functors(const Functor& second, const Functor& first);
bool same_functor(const Functor& a, const Functor& b);
/// Bijective on objects and on morphisms (and a valid functor).
bool is_isomorphism(const Functor& f);
Functor opposite_functor(const Functor& f, const CatRef& source_op, const CatRef& target_op);

/// Every functor source -> target, found by backtracking. Stops after `limit`.
std::vector<Functor> enumerate_functors(const CatRef& source, const CatRef& target,
                                        std::size_t limit = std::numeric_limits<std::size_t>::max());

struct NatTrans {
  Functor source;
  Functor target;
  std::vector<int> components;  // per source object, a morphism of the target category
};

Report check_nat_trans(const NatTrans& t);

// ---------------------------------------------------------------------------
// Comma categories

struct CommaCategory {
  CatRef category;
  Functor to_source;  // projection to the domain of f
  Functor to_target;  // projection to the domain of g
  NatTrans cell;      // f . to_source  =>  g . to_target
  struct Object {
    int x, u, y;  // u : f x -> g y
  };
  struct Morphism {
    int a, b;  // a : x -> x', b : y -> y'
  };
  std::vector<Object> objects;
  std::vector<Morphism> morphisms;
};

/// f : X -> Z, g : Y -> Z. Objects (x, u : f x -> g y, y), morphisms commuting squares.
CommaCategory comma_category(const Functor& f, const Functor& g);

// ---------------------------------------------------------------------------
// Equivalences

struct EquivalenceResult {
  Verdict status = Verdict::Holds;
  std::string reason;
  /// For each target object z: a source object x and an iso F x -> z.
  std::vector<std::pair<int, int>> essential_witnesses;
};

/// Fully faithful plus essentially surjective. The iso search examines at most
/// `search_budget` candidate morphisms; running out yields Indeterminate.
EquivalenceResult equivalence_check(const Functor& f,
                                    std::size_t search_budget = std::numeric_limits<std::size_t>::max());

struct DuplicatedObject {
  FinCat category;                  // original indices preserved, copy is the last object
  std::vector<int> collapse_objects;    // new category -> original
  std::vector<int> collapse_morphisms;
};

/// Adds an isomorphic copy of object `x`. The original category includes into
/// the result index-for-index; the collapse functor is an equivalence back.
DuplicatedObject duplicate_object(const FinCat& c, int x);

}  // namespace catkit
