// Strictification of a monoidal category through its multicategory of
// left-bracketed tensors and the free strict monoidal category on it.
#pragma once

#include "catkit/monoidal.hpp"

namespace catkit {

/// Left-bracketed tensor (..(x_1 (x) x_2) (x) ..) (x) x_n; I for the empty list.
int bracket_left(const MonoidalCategory& c, const List& objects);
/// Left-bracketed tensor of morphisms; id_I for the empty list.
int bracket_left_mor(const MonoidalCategory& c, const std::vector<int>& morphisms);
/// The canonical isomorphism lb(lb b_1, ..., lb b_n) -> lb(b_1 ++ ... ++ b_n),
/// assembled from associator, unitor and identity components.
int flatten_iso(const MonoidalCategory& c, const std::vector<List>& blocks);

/// Arrows (x_1 .. x_n) -> y are C(lb(x_1 .. x_n), y) for n up to `max_length`;
/// composition inserts the canonical isomorphism between bracketings.
Multicategory monoidal_multicat(const MonoidalCategory& c, int max_length);

/// C^sigma is the Kleisli category of the idempotent monad zeta . s on F(M),
/// where s sends a list to its left-bracketed tensor: a morphism u -> v is a
/// one-block morphism u -> <lb v> of F(M), i.e. an element of C(lb u, lb v).
struct Strictification {
  MultiRef multicat;                          // the multicategory of C
  std::shared_ptr<const FreeMonoidal> free;   // F(M), symbolic
  std::shared_ptr<const StrictMonCat> strict; // C^sigma on lists up to the bound
  std::vector<List> objects;                  // shortlex
  std::vector<FreeMor> morphisms;             // per morphism: its one-block morphism in F(M)
  Functor comparison;                         // C -> C^sigma, x |-> <x>
  LaxMonoidalFunctor constraints;             // comparison with theta_{x,y} : <x,y> -> <x (x) y>
  bool strong = false;
  Report report;                              // strict laws, lax coherence
  EquivalenceResult equivalence;
  std::shared_ptr<const MonoidalCategory> source_keepalive;  // what constraints.source points to

  int object_index(const List& l) const;
};

/// Requires check_monoidal(c) to be empty (throws LawViolation otherwise).
/// The bound is the object-length bound (at least 3).
Strictification strictify(const MonoidalCategory& c, int bound, std::size_t equivalence_budget = 1000000);

}  // namespace catkit
