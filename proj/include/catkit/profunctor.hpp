// Bimodules (profunctors) between finite categories.
//
// An element p of P(x, y) points from x to y. The left action precomposes
// with u : x' -> x and lands in P(x', y); the right action postcomposes with
// v : y -> y' and lands in P(x, y'). Elements of a fiber are numbered 0..n-1.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "catkit/fincat.hpp"

namespace catkit {

class Profunctor {
public:
  using LeftFn = std::function<int(int u, int y, int p)>;
  using RightFn = std::function<int(int x, int p, int v)>;

  Profunctor() = default;
  /// `sizes[x * |Y| + y]` is |P(x, y)|. The action callbacks are queried for
  /// every morphism and element; results are range-checked.
  Profunctor(CatRef source, CatRef target, std::vector<int> sizes, const LeftFn& left, const RightFn& right,
             std::vector<std::vector<std::string>> names = {});

  const CatRef& source() const { return source_; }
  const CatRef& target() const { return target_; }
  int fiber_index(int x, int y) const { return x * target_->object_count() + y; }
  int fiber_size(int x, int y) const { return sizes_[fiber_index(x, y)]; }
  const std::vector<int>& sizes() const { return sizes_; }
  int total_elements() const;

  /// u : x' -> x acting on p in P(x, y).
  int left(int u, int y, int p) const { return left_[u][y][p]; }
  /// v : y -> y' acting on p in P(x, y).
  int right(int x, int p, int v) const { return right_[v][x][p]; }

  const std::string& element_name(int x, int y, int p) const { return names_[fiber_index(x, y)][p]; }
  const std::vector<std::vector<std::string>>& names() const { return names_; }
  Profunctor renamed(std::vector<std::vector<std::string>> names) const;
  /// Copy with one left-action entry overwritten (seeded defects in tests).
  Profunctor with_left(int u, int y, int p, int result) const;

  /// Same categories, fiber sizes and action tables (names ignored).
  bool same_structure(const Profunctor& other) const;

private:
  CatRef source_;
  CatRef target_;
  std::vector<int> sizes_;
  std::vector<std::vector<std::vector<int>>> left_;   // [u][y][p]
  std::vector<std::vector<std::vector<int>>> right_;  // [v][x][p]
  std::vector<std::vector<std::string>> names_;
};

/// Unit, functoriality and commutation of the two actions.
Report check_profunctor(const Profunctor& p);

/// Hom_X : X -|-> X with fibers X(x, y); element i of (x, y) is hom(x, y)[i].
Profunctor hom_profunctor(const CatRef& x);

// ---------------------------------------------------------------------------
// Morphisms of profunctors (2-cells)

/// Fiberwise element map; `images[fiber][p]` is the image of p.
struct FiberMap {
  std::vector<std::vector<int>> images;
};

/// Endpoint agreement and equivariance for both actions.
Report check_fiber_map(const Profunctor& source, const Profunctor& target, const FiberMap& m);
bool is_fiberwise_bijective(const Profunctor& source, const Profunctor& target, const FiberMap& m);
/// Valid, equivariant and bijective on every fiber.
bool is_isomorphism(const Profunctor& source, const Profunctor& target, const FiberMap& m);

// ---------------------------------------------------------------------------
// Composition

/// P . Q realised as a quotient of the pairs over the middle category.
struct Composite {
  struct Pair {
    int y, p, q;
  };
  Profunctor profunctor;
  /// Per fiber (x, z): raw pairs ordered by y, then p, then q.
  std::vector<std::vector<Pair>> pairs;
  /// Per fiber: offsets of each middle object's block of raw pairs.
  std::vector<std::vector<int>> offsets;
  /// Per fiber: class (= composite element) of each raw pair.
  std::vector<std::vector<int>> class_of;
  /// Per fiber: least raw pair of each class.
  std::vector<std::vector<int>> representative;
  /// Per fiber: |Q(y, z)| for each middle object y.
  std::vector<std::vector<int>> q_counts;
  /// Ill-defined induced actions, if the inputs were not valid profunctors.
  Report well_defined;

  int pair_index(int fiber, int y, int p, int q) const {
    return offsets[fiber][y] + p * q_counts[fiber][y] + q;
  }
  /// Class of the raw pair (y, p, q) in fiber (x, z).
  int class_of_pair(int x, int z, int y, int p, int q) const;
};

/// Requires P.target == Q.source; throws StructuralError otherwise.
Composite compose(const Profunctor& p, const Profunctor& q);

/// Hom . P -> P, [u, p] |-> u acting on p. Empty optional when ill-defined.
std::optional<FiberMap> left_unitor(const Composite& hom_p, const Profunctor& p);
/// P . Hom -> P, [p, v] |-> p acted on by v.
std::optional<FiberMap> right_unitor(const Composite& p_hom, const Profunctor& p);
/// (P . Q) . R -> P . (Q . R), built from raw triples and checked well defined.
std::optional<FiberMap> associator(const Profunctor& p, const Profunctor& q, const Profunctor& r,
                                   const Composite& pq, const Composite& pq_r, const Composite& qr,
                                   const Composite& p_qr);

// ---------------------------------------------------------------------------
// Representables, duality and change of base

struct Representables {
  Profunctor lower;  // f_# : X -|-> Y, f_#(x, y) = Y(f x, y)
  Profunctor upper;  // f^* : Y -|-> X, f^*(y, x) = Y(y, f x)
};
Representables representable(const Functor& f);

/// Swap P^o : Y^op -|-> X^op with P^o(y, x) = P(x, y). Opposite categories are
/// materialised; passing them in keeps repeated duals on shared objects.
Profunctor dual(const Profunctor& p, const CatRef& target_op, const CatRef& source_op);
Profunctor dual(const Profunctor& p);

/// (f, g)^* R with fibers R(f x', g y').
Profunctor change_of_base(const Functor& f, const Functor& g, const Profunctor& r);

/// Profunctor X -|-> Y whose elements are the comma objects (x, u, y) of f and g.
Profunctor comma_profunctor(const Functor& f, const Functor& g);
/// f_# . g^* -> comma profunctor, [p, q] |-> q . p.
std::optional<FiberMap> comma_comparison(const Functor& f, const Functor& g, const Composite& composite,
                                         const Profunctor& comma);

// ---------------------------------------------------------------------------
// Profunctor monads and Kleisli categories

struct ProfMonad {
  Profunctor carrier;  // M : X -|-> X
  /// Per fiber (x, y): image of hom(x, y)[i] under the unit.
  std::vector<std::vector<int>> unit;
  /// Per fiber (x, z): value of the multiplication on each raw pair of M . M,
  /// in the order of Composite::pairs.
  std::vector<std::vector<int>> mult;
  /// When set, check_prof_monad also requires the unit to be bijective.
  bool expect_normal = false;
};

/// Builds the tables from callbacks. `mult(x, y, z, p, q)` receives
/// p in M(x, y) and q in M(y, z).
ProfMonad make_prof_monad(Profunctor carrier, const std::function<int(int u)>& unit,
                          const std::function<int(int x, int y, int z, int p, int q)>& mult);

/// Unit and associativity laws, equivariance, and normality when requested.
/// A multiplication that is not constant on quotient classes is reported as
/// "mult-ill-defined", separately from the law failures.
Report check_prof_monad(const ProfMonad& m);
/// Unit bijective onto every fiber.
bool is_normal(const ProfMonad& m);

struct Kleisli {
  CatRef category;
  Functor inclusion;  // J : X -> Kleisli, identity on objects
};

/// Same objects as X, hom(x, y) = M(x, y). Throws LawViolation for invalid monads.
Kleisli kleisli(const ProfMonad& m);
/// J_# . J^* -> M, [a, b] |-> b . a in the Kleisli category.
std::optional<FiberMap> kleisli_reconstruction(const ProfMonad& m, const Kleisli& k, const Composite& jj);

/// A monad (t, eta, mu) on X given as an endofunctor and two transformations.
struct EndoMonad {
  Functor functor;
  NatTrans unit;  // id => t
  NatTrans mult;  // t t => t
};
Report check_endo_monad(const EndoMonad& t);
/// The profunctor monad on t^*, fibers X(x, t y).
ProfMonad upper_monad(const EndoMonad& t);

struct EndoKleisli {
  CatRef category;              // hom(x, y) = X(x, t y)
  ProfMonad monad;              // t^* with its monad structure
  Kleisli via_profunctor;       // kleisli(monad)
  Functor comparison;           // category -> via_profunctor.category
  bool agrees = false;          // comparison is an isomorphism
};
/// Throws LawViolation when the monad laws fail.
EndoKleisli kleisli_of_endo(const EndoMonad& t);

}  // namespace catkit
