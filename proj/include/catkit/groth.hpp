// Lax functors from a finite category into profunctors, the C-star action
// monad, and the total category of a lax functor.
//
// For f : y -> x in the base, M^f : F y -|-> F x, and an element of
// M^f(b, a) is a morphism (y, b) -> (x, a) of the total category lying over
// f. The multiplication m^{f,g} composes an element over g : z -> y with one
// over f, so it is a map out of compose(M^g, M^f) (M^g first) into M^{f.g}.
#pragma once

#include <map>
#include <optional>
#include <utility>

#include "catkit/profunctor.hpp"

namespace catkit {

// ---------------------------------------------------------------------------
// Normal lax functors C -> Bimod(Cat)

struct LaxProfFunctor {
  /// m^{f,g} for a composable pair of non-identity morphisms.
  struct Mult {
    int f = 0, g = 0;
    Composite composite;                     // compose(M^g, M^f)
    std::vector<std::vector<int>> values;    // [fiber (c, a)][class] -> element of M^{f.g}(c, a)
  };

  CatRef base;
  std::vector<CatRef> fibers;     // F x per base object
  std::vector<Profunctor> arrows; // M^f per base morphism; identities hold Hom (normality)
  std::vector<Mult> mults;        // ordered by (f, g)
  std::map<std::pair<int, int>, int> mult_index;  // (f, g) -> position in mults

  const Profunctor& arrow(int f) const { return arrows[f]; }
  /// Null when f or g is an identity.
  const Mult* mult(int f, int g) const;
  /// The composite over f.g of phi in M^g(c, b) and psi in M^f(b, a); identity
  /// morphisms of the base act through the profunctor actions.
  int compose_elements(int f, int g, int c, int b, int a, int phi, int psi) const;
};

/// `arrows[f]` for non-identity f; identity slots are replaced by Hom.
/// `mult(f, g, c, b, a, phi, psi)` is queried on every raw pair of every
/// composite. Throws StructuralError on mismatched endpoints and LawViolation
/// ("mult-ill-defined") when mult is not constant on a quotient class.
LaxProfFunctor make_lax_functor(CatRef base, std::vector<CatRef> fibers, std::vector<Profunctor> arrows,
                                const std::function<int(int f, int g, int c, int b, int a, int phi, int psi)>& mult);

/// Fibers and profunctors valid, each m^{f,g} a profunctor morphism (laws of
/// check_fiber_map, prefixed "m^{f,g}: "), and associativity checked on every triple of composable elements over
/// non-identity morphisms.
Report check_lax_functor(const LaxProfFunctor& l);

/// Copy with one class value of m^{f,g} overwritten (seeded defects in tests).
LaxProfFunctor with_mult_value(const LaxProfFunctor& l, int f, int g, int fiber, int cls, int value);

/// Pulls each fiber back along a fully faithful functor pi_x : F'x -> F x.
/// Throws StructuralError when some pi_x is not fully faithful.
LaxProfFunctor restrict_fibers(const LaxProfFunctor& l, const std::vector<Functor>& pi);

// ---------------------------------------------------------------------------
// Total category

struct Grothendieck {
  struct Morphism {
    int f, b, a, e;  // element e of M^f(b, a)
  };
  CatRef total;
  Functor projection;                  // total -> base
  std::vector<int> object_offset;      // object (x, a) has index object_offset[x] + a
  std::vector<std::pair<int, int>> objects;  // (x, a) per total object
  std::vector<Morphism> morphisms;
};

/// Objects (x, a); morphisms over f : y -> x from (y, b) to (x, a) are the
/// elements of M^f(b, a); composition through m^{f,g}. A lax functor that
/// passes check_lax_functor yields a category that passes check_category.
Grothendieck grothendieck(const LaxProfFunctor& l);

struct FiberDecomposition {
  LaxProfFunctor lax;
  std::vector<std::vector<int>> objects;  // [x][a] -> object of E
  /// [f][fiber (b, a)][e] -> morphism of E.
  std::vector<std::vector<std::vector<int>>> elements;
};

/// The lax functor of a functor p : E -> C: fibers over each object, M^f(b, a)
/// the morphisms b -> a of E lying over f, composition from E. Inverse to
/// grothendieck() up to isomorphism over C.
FiberDecomposition lax_from_projection(const Functor& p);

// ---------------------------------------------------------------------------
// Pseudo-functors and representability

/// A pseudo-functor C -> Cat with identities preserved strictly.
struct PseudoFunctor {
  CatRef base;
  std::vector<CatRef> fibers;
  std::vector<Functor> maps;  // G_f : F y -> F x; identity functors on identities
  /// For non-identity f, g: components of the iso G_f G_g => G_{f.g}, one per
  /// object of F(dom g).
  std::map<std::pair<int, int>, std::vector<int>> comparison;
};

/// Identity comparisons; requires the maps to compose strictly.
PseudoFunctor strict_pseudo(CatRef base, std::vector<CatRef> fibers, std::vector<Functor> maps);

/// Functor laws of each G_f, G_id = id ("pseudo-identity"), comparisons
/// natural ("pseudo-naturality") and invertible ("pseudo-invertible"), and
/// the associativity coherence on every composable triple ("pseudo-associativity").
Report check_pseudo_functor(const PseudoFunctor& p);

/// M^f = (G_f)_# and m^{f,g}[phi, psi] = psi . G_f(phi) . comparison^{-1}.
/// Throws StructuralError when a comparison component is not invertible.
LaxProfFunctor lax_from_pseudo(const PseudoFunctor& p);

struct RepresentabilityResult {
  std::optional<PseudoFunctor> pseudo;
  /// Per base morphism f, per object b of F(dom f): a universal element of
  /// M^f(b, G_f b). Filled for morphisms that were found representable.
  std::vector<std::vector<int>> universal;
  /// Empty on success; otherwise names the first failing morphism or pair.
  std::string failure;
};

/// Succeeds iff every M^f is representable and every m^{f,g} is invertible.
/// Universal elements are searched object by object, lowest target first.
RepresentabilityResult is_representable_lax(const LaxProfFunctor& l);

// ---------------------------------------------------------------------------
// The C-star monad on C-indexed families of categories

/// (C*F)(x) = disjoint union over f : y -> x of F y.
struct CStar {
  CatRef base;
  std::vector<CatRef> family;
  std::vector<CatRef> categories;                 // (C*F)(x)
  std::vector<std::vector<int>> into;             // [x]: morphisms with codomain x, ascending
  std::vector<std::vector<int>> object_offset;    // [x][position in into[x]]
  std::vector<std::vector<int>> morphism_offset;

  /// Injection F(dom f) -> (C*F)(cod f) of the summand f.
  Functor injection(int f) const;
  int position(int f) const;
};

CStar cstar(CatRef base, std::vector<CatRef> family);
/// eta_x : F x -> (C*F)(x), the summand id_x.
std::vector<Functor> cstar_unit(const CStar& s);
/// mu_x : (C*C*F)(x) -> (C*F)(x), <f, <g, phi>> |-> <f.g, phi>. `ss` = cstar of s.categories.
std::vector<Functor> cstar_mult(const CStar& s, const CStar& ss);
/// (C*h)_x : (C*G)(x) -> (C*H)(x) for a family h_x : G x -> H x.
std::vector<Functor> cstar_map(const CStar& from, const CStar& to, const std::vector<Functor>& h);

/// alpha_x : (C*F)(x) -> F x. Functor laws ("alpha x: " prefix), the unit law
/// alpha . eta = id ("algebra-unit") and alpha . mu = alpha . C*alpha
/// ("algebra-associativity"), on objects and morphisms.
Report check_cstar_algebra(const CStar& s, const CStar& ss, const std::vector<Functor>& alpha);

/// G_f = alpha_x restricted to the summand f.
std::vector<Functor> algebra_to_action(const CStar& s, const std::vector<Functor>& alpha);
/// alpha_x = [G_f]_f.
std::vector<Functor> action_to_algebra(const CStar& s, const std::vector<Functor>& maps);
/// G_f valid functors F(dom f) -> F(cod f), G_id = id ("action-identity"),
/// G_{f.g} = G_f G_g ("action-composition").
Report check_strict_action(const CatRef& base, const std::vector<CatRef>& family, const std::vector<Functor>& maps);

}  // namespace catkit
