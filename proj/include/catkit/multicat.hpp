// Planar multicategories, the free-monoid (list) monad, and universality.
//
// A multiarrow has a list of source objects and one target object.
// Composition comp(f; g_1, ..., g_n) plugs g_i into the i-th source slot of f;
// the composite's source is the concatenation of the sources of the g_i.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catkit/fincat.hpp"
#include "catkit/profunctor.hpp"
#include "catkit/strict_monoidal.hpp"

namespace catkit {

// ---------------------------------------------------------------------------
// The list monad on finite sets {0, ..., n-1}, enumerated to a length bound.

using List = std::vector<int>;

/// All lists over {0..n-1} of length at most `max_length`, in shortlex order.
std::vector<List> lists_up_to(int n, int max_length);

/// Unit and associativity laws of (T, eta, mu) on all lists up to the bound.
Report check_list_monad(int n, int max_length);
/// For f : A -> B (|A| = f.size(), |B| = b_size), the naturality squares of
/// eta and mu at f are pullbacks of finite sets, checked by element chase.
Report check_list_cartesian(const std::vector<int>& f, int b_size, int max_length);

// ---------------------------------------------------------------------------

struct MultiArrow {
  List source;
  int target = 0;
  bool operator==(const MultiArrow&) const = default;
};

class Multicategory {
public:
  /// Decides which source lists are stored. Composites whose source lies
  /// outside the range may be missing.
  using RangeFn = std::function<bool(const List&)>;
  using CompositeFn = std::function<int(int f, const std::vector<int>& gs)>;

  Multicategory() = default;
  /// `composite(f, gs)` is queried for every arrow f and every tuple gs whose
  /// targets match the source of f and whose concatenated source is in range.
  /// Returning -1 leaves the composite missing (a law violation in range).
  /// Untruncated multicategories use the arity cap only to bound enumeration.
  Multicategory(int objects, std::vector<MultiArrow> arrows, std::vector<int> identities, const CompositeFn& composite,
                int arity_cap, bool truncated, std::vector<std::string> object_names = {},
                std::vector<std::string> arrow_names = {}, RangeFn range = {});

  int object_count() const { return objects_; }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const MultiArrow& arrow(int a) const { return arrows_[a]; }
  const List& source(int a) const { return arrows_[a].source; }
  int target(int a) const { return arrows_[a].target; }
  int arity(int a) const { return static_cast<int>(arrows_[a].source.size()); }
  int identity(int x) const { return identities_[x]; }
  bool is_identity(int a) const { return arity(a) == 1 && identities_[source(a)[0]] == a; }

  int arity_cap() const { return cap_; }
  bool truncated() const { return truncated_; }
  /// Whether a composite with this source must exist.
  bool in_range(const List& source) const;

  /// comp(f; gs), or -1 when missing.
  int compose(int f, const std::vector<int>& gs) const;
  /// Arrows with the given source and target, ascending.
  const std::vector<int>& hom(const List& source, int target) const;
  /// Arrows with the given target, ascending.
  const std::vector<int>& into(int target) const { return into_[target]; }
  /// All stored composition entries: key [f, g_1, ..., g_n].
  const std::map<std::vector<int>, int>& composites() const { return comp_; }

  const std::string& object_name(int x) const { return object_names_[x]; }
  const std::string& arrow_name(int a) const { return arrow_names_[a]; }
  const std::vector<std::string>& object_names() const { return object_names_; }
  const std::vector<std::string>& arrow_names() const { return arrow_names_; }
  std::optional<int> find_object(const std::string& name) const;
  std::optional<int> find_arrow(const std::string& name) const;
  std::string list_name(const List& objects) const;

  /// Copy with one composition entry overwritten (seeded defects in tests).
  Multicategory with_composite(int f, const std::vector<int>& gs, int h) const;

private:
  int objects_ = 0;
  std::vector<MultiArrow> arrows_;
  std::vector<int> identities_;
  int cap_ = 0;
  bool truncated_ = false;
  RangeFn range_;
  std::map<std::vector<int>, int> comp_;
  std::map<std::pair<List, int>, std::vector<int>> homs_;
  std::vector<std::vector<int>> into_;
  std::vector<std::string> object_names_;
  std::vector<std::string> arrow_names_;
};

using MultiRef = std::shared_ptr<const Multicategory>;
inline MultiRef share(Multicategory m) { return std::make_shared<const Multicategory>(std::move(m)); }

/// Builds a multicategory from explicit composition entries. Identities are
/// added automatically and composites with identities follow the unit laws.
class MulticatBuilder {
public:
  int add_object(std::string name);
  int add_arrow(List source, int target, std::string name);
  void set_composite(int f, std::vector<int> gs, int h);
  int identity(int x) const { return identities_[x]; }
  Multicategory build(int arity_cap, bool truncated) const;

private:
  std::vector<std::string> object_names_;
  std::vector<MultiArrow> arrows_;
  std::vector<std::string> arrow_names_;
  std::vector<int> identities_;
  std::map<std::vector<int>, int> entries_;
};

/// Calls `visit(gs)` for every tuple of arrows whose i-th target is
/// `targets[i]` and whose concatenated source is in range of `m`.
void for_each_tuple(const Multicategory& m, const List& targets,
                    const std::function<void(const std::vector<int>&)>& visit);

/// Endpoint, unit and associativity laws, plus existence of every in-range composite.
Report check_multicategory(const Multicategory& m);

struct MulticatMorphism {
  MultiRef source;
  MultiRef target;
  std::vector<int> object_map;
  std::vector<int> arrow_map;
};
/// Preservation of sources, targets, identities and in-range composites.
Report check_multicat_morphism(const MulticatMorphism& f);
bool same_morphism(const MulticatMorphism& a, const MulticatMorphism& b);

/// One object and one arrow of every arity up to the cap.
Multicategory terminal_multicategory(int arity_cap);

/// R(C): arrows (x_1 ... x_n) -> y are C(x_1 (x) ... (x) x_n, y), for n up to
/// `max_length`. Throws BoundExceeded when more than `max_arrows` arise.
Multicategory underlying_multicat(const StrictMonCat& c, int max_length, int max_arrows = 200000);
/// Index of the R(C)-arrow for the C-morphism `morphism` viewed with `source`.
std::optional<int> underlying_arrow(const StrictMonCat& c, const Multicategory& rc, const List& source, int morphism);

/// Unary arrows with inherited composition.
FinCat linear_core(const Multicategory& m);
/// Arrow of m behind each morphism of linear_core(m).
std::vector<int> linear_core_arrows(const Multicategory& m);

// ---------------------------------------------------------------------------
// Multicategories as normal monads on the list bimodule over the linear core.

struct ListBimodule {
  CatRef core;                       // linear core
  CatRef lists;                      // T(core) up to the cap: lists and lists of unary arrows
  std::vector<List> list_objects;    // object of `lists` -> list of core objects
  Profunctor carrier;                // lists -|-> core; fiber (list, y) = arrows list -> y
  /// Per core morphism u : x -> y, its position in fiber (<x>, y).
  std::vector<int> unit;
  /// Key [fiber f, position f, fiber g_1, position g_1, ...] -> position of
  /// the composite in fiber (concatenated source, target of f).
  std::map<std::vector<int>, int> mult;
  int cap = 0;
  bool truncated = false;
  /// Per object of `lists`: whether composites into that source are required.
  std::vector<bool> in_range;

  int list_index(const List& objects) const;
};

/// Throws BoundExceeded when an arrow's arity exceeds the cap.
ListBimodule to_prof_monad(const Multicategory& m);
/// The forward reading: arrows are the carrier's elements, fiber by fiber.
Multicategory read_back(const ListBimodule& h);
/// Profunctor laws of the carrier, normality of the unit, and the monad laws
/// (unit and associativity of `mult`) on every stored configuration.
Report check_list_bimodule(const ListBimodule& h);

struct Roundtrip {
  Multicategory recovered;
  MulticatMorphism bijection;  // original -> recovered
  Report report;               // empty iff the bijection is an isomorphism
};
Roundtrip multicat_roundtrip(const Multicategory& m);

// ---------------------------------------------------------------------------
// Universality and representability

/// Precomposition with `pi` is a bijection M(G, y) -> M(G[i := source pi], y)
/// for every context G holding target(pi) in slot i, with lists up to `bound`.
bool is_universal(const Multicategory& m, int pi, int bound);
/// Universal arrows grouped by source list (lists up to `bound`).
std::map<List, std::vector<int>> universal_arrows(const Multicategory& m, int bound);

struct Representability {
  bool representable = false;
  /// Least universal arrow out of each source list that has one.
  std::map<List, int> chosen;
  /// Source lists with no universal arrow.
  std::vector<List> missing;
  /// Composites of universal arrows that are not universal: key [f, g_1, ...].
  std::vector<std::vector<int>> closure_failures;
};
Representability is_representable(const Multicategory& m, int bound);

}  // namespace catkit
