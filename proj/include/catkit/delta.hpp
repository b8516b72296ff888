// The simplex category of finite ordinals and monotone maps, with ordinal sum,
// as the free strict monoidal category containing a monoid.
//
// A monotone map n -> m is stored by its fiber sizes: m non-negative entries
// summing to n, entry j counting the preimages of j.
#pragma once

#include "catkit/free_monoidal.hpp"
#include "catkit/strict_monoidal.hpp"

namespace catkit {

using Fibers = std::vector<int>;

/// Compositions of n into m non-negative parts, lexicographically.
std::vector<Fibers> compositions(int n, int m);
/// g after f, for f : n -> m and g : m -> k.
Fibers compose_fibers(const Fibers& g, const Fibers& f);

struct Delta {
  StrictMonCat cat;             // truncated at `max`: ordinal sums beyond it are missing
  std::vector<Fibers> fibers;   // per morphism
  int max = 0;

  /// Morphism index of a fiber vector, or -1 if its endpoints exceed `max`.
  int morphism(const Fibers& f) const;
};

/// Objects 0..n_max named by their size; morphisms named by fiber vectors.
Delta delta(int n_max);

/// The generic monoid: object 1 with the unique maps 0 -> 1 and 2 -> 1.
struct MonoidInC {
  int carrier = 0;
  int unit = 0;  // I -> carrier
  int mult = 0;  // carrier (x) carrier -> carrier
  bool operator==(const MonoidInC&) const = default;
};
MonoidInC generic_monoid(const Delta& d);

/// Endpoint, associativity and unit laws in a strict monoidal category.
Report check_monoid(const StrictMonCat& c, const MonoidInC& m);

/// Isomorphism Delta_L -> F(R(1))_L sending a monotone map to the blocks of
/// its fibers. `free` must materialize F of the terminal multicategory at L.
Functor delta_to_free(const Delta& d, const MaterializedFree& free);
Functor free_to_delta(const MaterializedFree& free, const Delta& d);

/// The strict monoidal functor Delta -> C generated by a monoid, determined by
/// the images of the generic monoid. nullopt when a needed tensor is missing.
std::optional<Functor> functor_from_monoid(const Delta& d, const StrictMonCat& c, const MonoidInC& m);
/// Precomposition with the generic monoid.
MonoidInC monoid_from_functor(const Delta& d, const Functor& f);

struct ClassifiedMonoid {
  MonoidInC monoid;
  Functor functor;  // Delta_bound -> C
};
struct MonoidClassification {
  Delta source;
  /// Monoids found by checking the equations directly.
  std::vector<MonoidInC> direct;
  /// Strict monoidal functors found by checking functor laws on all of
  /// Delta_bound, each transported to a monoid by precomposition.
  std::vector<ClassifiedMonoid> functors;
  /// Disagreements between the two routes and failed roundtrips.
  Report report;
};

/// Both routes over every (carrier, unit, mult) candidate. `bound` >= 3 so
/// that Delta contains the associativity equation.
MonoidClassification classify_monoids(const StrictMonCat& c, int bound = 3);

}  // namespace catkit
