// Globular monoids in a strict monoidal globular category, truncated at a
// finite dimension.
#pragma once

#include "catkit/strict_monoidal.hpp"

namespace catkit {

/// Levels C_0 .. C_n with source and target functors C_k -> C_{k-1} and, on
/// C_k, one strict monoidal structure (x)_i for each i < k. Interchange
/// between (x)_i and (x)_j is required to hold on the nose.
struct GlobularAmbient {
  std::vector<CatRef> levels;
  std::vector<std::vector<StrictMonCat>> tensors;  // [k][i], i < k, over levels[k]
  std::vector<Functor> src;                        // [k], k >= 1; src[0] unused
  std::vector<Functor> tgt;

  int dim() const { return static_cast<int>(levels.size()) - 1; }
};

/// Throws StructuralError on mismatched sizes or bases. Reports the laws of
/// each tensor ("tensor: " prefix), functoriality and globularity of the
/// boundary functors, strict interchange of every pair of tensors on objects
/// and morphisms, and I_j (x)_i I_j = I_j.
Report check_globular_ambient(const GlobularAmbient& a);

/// Every level the same strict monoidal category, identity boundaries.
GlobularAmbient constant_ambient(const StrictMonCat& c, int n);

struct GlobularMonoid {
  std::vector<int> carrier;            // M_k in C_k
  std::vector<std::vector<int>> unit;  // [k][i] : I_i -> M_k in C_k
  std::vector<std::vector<int>> mult;  // [k][i] : M_k (x)_i M_k -> M_k
};

/// Throws StructuralError when sizes are wrong or d(M_k) = c(M_k) = M_{k-1}
/// fails. Reports: each (M_k, unit, mult) a monoid for (x)_i (laws of
/// check_monoid, instance prefixed "k/i"); for i < j < k,
///   "interchange-mult": mu_j . (mu_i (x)_j mu_i) = mu_i . (mu_j (x)_i mu_j)
///   "interchange-unit": mu_i . (iota_j (x)_i iota_j) = iota_j
/// with identity interchange isomorphisms.
Report check_globular_monoid(const GlobularAmbient& a, const GlobularMonoid& m);

}  // namespace catkit
