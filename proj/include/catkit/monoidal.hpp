// Weak monoidal categories, lax monoidal functors into strict targets, the
// monoidal structure induced by a representable multicategory, and the
// classification of lax morphisms through the free strict monoidal category.
#pragma once

#include <array>

#include "catkit/delta.hpp"
#include "catkit/free_monoidal.hpp"
#include "catkit/multicat.hpp"
#include "catkit/strict_monoidal.hpp"

namespace catkit {

/// Tabulated monoidal category with total tensor and invertible constraints.
struct MonoidalCategory {
  CatRef base;
  int unit = 0;
  std::vector<int> tensor_obj;  // [x * n + y]
  std::vector<int> tensor_mor;  // [f * m + g]
  std::vector<int> alpha;       // [(x * n + y) * n + z] : (x (x) y) (x) z -> x (x) (y (x) z)
  std::vector<int> lambda;      // [x] : I (x) x -> x
  std::vector<int> rho;         // [x] : x (x) I -> x

  int object_count() const { return base->object_count(); }
  int tensor(int x, int y) const { return tensor_obj[x * object_count() + y]; }
  int tensor(int x, int y, int z) const { return tensor(tensor(x, y), z); }
  int tensor_m(int f, int g) const { return tensor_mor[f * base->morphism_count() + g]; }
  int assoc(int x, int y, int z) const { return alpha[(x * object_count() + y) * object_count() + z]; }
};

/// Throws StructuralError on size or range errors in the tables.
void check_monoidal_shape(const MonoidalCategory& c);
/// Tensor functoriality, naturality and invertibility of the constraints,
/// pentagon and triangle, on every object tuple. Non-invertible components
/// ("alpha-invertible", ...) are reported apart from equation failures.
Report check_monoidal(const MonoidalCategory& c);

/// An untruncated strict monoidal category with identity constraints.
MonoidalCategory strict_as_monoidal(const StrictMonCat& c);

/// Objects Z/2 ("0", "1"); hom(g, g) = {+1, -1} under multiplication, no
/// other morphisms; tensor adds objects and multiplies signs. The associator
/// at (g, h, k) is the sign omega[(g * 2 + h) * 2 + k]; unitors are +1.
MonoidalCategory cocycle_example(const std::array<int, 8>& omega);
/// omega(g, h, k) = (-1)^(g h k), a normalized 3-cocycle.
std::array<int, 8> standard_cocycle();
/// The 3-cocycle identity for a sign-valued function on (Z/2)^3.
bool is_cocycle(const std::array<int, 8>& omega);

/// F : C -> D with constraints theta_{x,y} : Fx (x) Fy -> F(x (x) y) and
/// theta_0 : I -> FI, into a strict D.
struct LaxMonoidalFunctor {
  const MonoidalCategory* source = nullptr;
  const StrictMonCat* target = nullptr;
  Functor functor;
  std::vector<int> theta;  // [x * n + y]
  int theta0 = 0;
};
/// Naturality of theta, associativity and unit coherence. `strong` is set
/// when every constraint is invertible.
Report check_lax_monoidal(const LaxMonoidalFunctor& f, bool* strong = nullptr);

// ---------------------------------------------------------------------------
// Representable multicategories

/// Tensor, unit and constraints on linear_core(m) from the chosen universal
/// arrows; constraints are the unique factorizations between universal
/// composites. Needs a representable m with arity cap at least 3.
MonoidalCategory induced_monoidal(const Multicategory& m);

// ---------------------------------------------------------------------------
// Lax morphisms M -> R(D) versus strict monoidal functors F(M) -> D

struct LaxClassification {
  MultiRef rd;                                // R(D) at the bound
  std::shared_ptr<const MaterializedFree> fm; // F(M) at the bound
  std::vector<MulticatMorphism> morphisms;    // side A
  std::vector<Functor> functors;              // side B
  /// Side A entry i corresponds to side B entry to_functor[i], and back.
  std::vector<int> to_functor;
  std::vector<int> to_morphism;
  bool partial = false;  // an enumeration hit `max_candidates`
  Report report;         // failed roundtrips and count mismatches
};

/// Enumerates both sides for an untruncated D. `bound` is the length bound
/// for R(D) and F(M); M's arities must not exceed it.
LaxClassification classify_lax_morphisms(const Multicategory& m, const StrictMonCat& d, int bound,
                                         std::size_t max_candidates = 100000);

/// The D-morphism behind an arrow of R(D).
int underlying_morphism(const StrictMonCat& d, const Multicategory& rd, int arrow);

/// Counit F(R(D)) -> D: tensor the objects of a list, tensor then compose the blocks.
Functor counit(const StrictMonCat& d, const Multicategory& rd, const MaterializedFree& frd);

}  // namespace catkit
