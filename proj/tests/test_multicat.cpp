#include <set>

#include "doctest.h"
#include "support_multicat.hpp"

using namespace catkit;
using namespace catkit::testing;

namespace {

bool same_multicategory(const Multicategory& a, const Multicategory& b) {
  if (a.object_count() != b.object_count() || a.arrow_count() != b.arrow_count()) return false;
  for (int f = 0; f < a.arrow_count(); ++f)
    if (!(a.arrow(f) == b.arrow(f))) return false;
  for (int x = 0; x < a.object_count(); ++x)
    if (a.identity(x) != b.identity(x)) return false;
  return a.composites() == b.composites();
}

// Objects a, b; identities and one binary arrow f : (a, a) -> b.
// With `with_g`, also g : (a, a) -> a.
Multicategory two_object_example(bool with_g, int cap) {
  MulticatBuilder b;
  const int a = b.add_object("a");
  const int bb = b.add_object("b");
  b.add_arrow({a, a}, bb, "f");
  if (with_g) b.add_arrow({a, a}, a, "g");
  return b.build(cap, true);
}

std::vector<Multicategory> roundtrip_corpus() {
  std::vector<Multicategory> corpus;
  corpus.push_back(terminal_multicategory(3));
  corpus.push_back(underlying_multicat(discrete_group(2), 3));
  corpus.push_back(underlying_multicat(discrete_group(3), 3));
  corpus.push_back(underlying_multicat(commutative_monoid_strict(cyclic_group(3)), 3));
  corpus.push_back(underlying_multicat(commutative_monoid_strict(monoid_category(2, {0, 1, 1, 1}, 0)), 3));
  corpus.push_back(two_object_example(false, 3));
  corpus.push_back(two_object_example(true, 2));
  Rng rng(11);
  const Multicategory z3 = underlying_multicat(discrete_group(3), 3);
  for (int i = 0; i < 3; ++i) corpus.push_back(random_sub(rng, z3, 4));
  return corpus;
}

}  // namespace

TEST_CASE("list monad laws and cartesian squares") {
  for (int n = 0; n <= 4; ++n) CHECK(check_list_monad(n, 3).ok());
  CHECK(lists_up_to(2, 2).size() == 7);
  CHECK(lists_up_to(2, 2)[3] == List{0, 0});
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int a = uniform(rng, 0, 3), b = uniform(rng, 1, 3);
    std::vector<int> f(a);
    for (auto& v : f) v = uniform(rng, 0, b - 1);
    const Report r = check_list_cartesian(f, b, 3);
    CHECK_MESSAGE(r.ok(), r);
  }
}

TEST_CASE("terminal multicategory") {
  for (int cap = 1; cap <= 4; ++cap) {
    const Multicategory t = terminal_multicategory(cap);
    CHECK(t.arrow_count() == cap + 1);
    CHECK(check_multicategory(t).ok());
  }
  CHECK(linear_core(terminal_multicategory(3)).same_structure(terminal_category()));
  CHECK(same_multicategory(underlying_multicat(terminal_strict(), 4), terminal_multicategory(4)));
}

TEST_CASE("seeded associativity defect") {
  const Multicategory m = underlying_multicat(commutative_monoid_strict(cyclic_group(3)), 3);
  REQUIRE(check_multicategory(m).ok());
  // Binary arrow 0 composed with two copies of the unary arrow for 1.
  const List pair{0, 0};
  const int f = m.hom(pair, 0)[0];
  const int u = m.hom({0}, 0)[1];
  const int h = m.compose(f, {u, u});
  const auto& choices = m.hom(pair, 0);
  const int wrong = choices[(std::find(choices.begin(), choices.end(), h) - choices.begin() + 1) % 3];
  const Report r = check_multicategory(m.with_composite(f, {u, u}, wrong));
  CHECK(r.has("associativity"));
}

TEST_CASE("structural errors") {
  CHECK_THROWS_AS(Multicategory(1, {{{0}, 1}}, {0}, [](int, const std::vector<int>&) { return 0; }, 2, true),
                  StructuralError);
  CHECK_THROWS_AS(Multicategory(1, {{{0, 0}, 0}}, {0}, [](int, const std::vector<int>&) { return 0; }, 2, true),
                  StructuralError);
  MulticatBuilder b;
  b.add_object("a");
  b.add_arrow({0, 0, 0}, 0, "t");
  CHECK_THROWS_AS(b.build(2, true), StructuralError);
}

TEST_CASE("underlying multicategory of Z/2") {
  const StrictMonCat z2 = discrete_group(2);
  const Multicategory m = underlying_multicat(z2, 4);
  CHECK(check_multicategory(m).ok());
  for (const auto& l : lists_up_to(2, 4)) {
    int sum = 0;
    for (int g : l) sum += g;
    for (int h = 0; h < 2; ++h) CHECK(m.hom(l, h).size() == (sum % 2 == h ? 1u : 0u));
  }
}

TEST_CASE("linear core of R(C) is C") {
  for (const StrictMonCat& c : {discrete_group(3), commutative_monoid_strict(cyclic_group(4)),
                                commutative_monoid_strict(monoid_category(2, {0, 1, 1, 1}, 0))}) {
    const Multicategory m = underlying_multicat(c, 2);
    const CatRef core = share(linear_core(m));
    CHECK(check_category(*core).ok());
    const auto core_arrows = linear_core_arrows(m);
    std::vector<int> objects, morphisms;
    for (int x = 0; x < c.category().object_count(); ++x) objects.push_back(x);
    for (int phi = 0; phi < c.category().morphism_count(); ++phi) {
      const auto a = underlying_arrow(c, m, {c.category().dom(phi)}, phi);
      REQUIRE(a.has_value());
      morphisms.push_back(static_cast<int>(std::find(core_arrows.begin(), core_arrows.end(), *a) - core_arrows.begin()));
    }
    CHECK(is_isomorphism(Functor{c.base(), core, objects, morphisms}));
  }
}

TEST_CASE("roundtrip through the list bimodule") {
  const auto corpus = roundtrip_corpus();
  CHECK(corpus.size() >= 5);
  for (const auto& m : corpus) {
    REQUIRE(check_multicategory(m).ok());
    const ListBimodule h = to_prof_monad(m);
    const Report hr = check_list_bimodule(h);
    CHECK_MESSAGE(hr.ok(), hr);
    const Roundtrip rt = multicat_roundtrip(m);
    CHECK_MESSAGE(rt.report.ok(), rt.report);
    CHECK(check_multicategory(rt.recovered).ok());
    for (int a = 0; a < m.arrow_count(); ++a)
      CHECK(rt.recovered.arrow_name(rt.bijection.arrow_map[a]) == m.arrow_name(a));
  }
  // Arrows already listed by (source, target) come back in place.
  const Multicategory t = terminal_multicategory(3);
  CHECK(same_multicategory(multicat_roundtrip(t).recovered, t));
}

TEST_CASE("unary fibers of to_prof_monad(R(C)) are homs of C") {
  const StrictMonCat c = commutative_monoid_strict(cyclic_group(3));
  const ListBimodule h = to_prof_monad(underlying_multicat(c, 2));
  for (int x = 0; x < c.category().object_count(); ++x)
    for (int y = 0; y < c.category().object_count(); ++y)
      CHECK(h.carrier.fiber_size(h.list_index({x}), y) == static_cast<int>(c.category().hom(x, y).size()));
}

TEST_CASE("a broken unit is not normal") {
  ListBimodule h = to_prof_monad(underlying_multicat(commutative_monoid_strict(cyclic_group(3)), 2));
  h.unit[1] = h.unit[0];
  CHECK(check_list_bimodule(h).has("normality"));
}

TEST_CASE("universality in the terminal multicategory and in R(C)") {
  const Multicategory t = terminal_multicategory(3);
  for (int a = 0; a < t.arrow_count(); ++a) CHECK(is_universal(t, a, 3));
  CHECK(is_representable(t, 3).representable);

  for (const StrictMonCat& c : {discrete_group(2), discrete_group(3), commutative_monoid_strict(cyclic_group(3))}) {
    const Multicategory m = underlying_multicat(c, 3);
    const Representability r = is_representable(m, 3);
    CHECK(r.representable);
    for (const auto& l : lists_up_to(c.category().object_count(), 3)) {
      const int t_obj = c.tensor_all(l);
      const auto pi = underlying_arrow(c, m, l, c.category().identity(t_obj));
      REQUIRE(pi.has_value());
      CHECK(is_universal(m, *pi, 3));
      CHECK(r.chosen.count(l));
    }
  }
}

TEST_CASE("two-object example is not representable") {
  // The binary arrow alone is universal (both its contexts biject), but the
  // empty list and mixed lists have no universal arrow.
  const Multicategory m = two_object_example(false, 2);
  REQUIRE(check_multicategory(m).ok());
  const int f = *m.find_arrow("f");
  CHECK(is_universal(m, f, 2));
  const Representability r = is_representable(m, 2);
  CHECK_FALSE(r.representable);
  CHECK(std::find(r.missing.begin(), r.missing.end(), List{}) != r.missing.end());
  CHECK(std::find(r.missing.begin(), r.missing.end(), List{0, 1}) != r.missing.end());

  // Adding g : (a, a) -> a breaks precomposition into target a.
  const Multicategory v = two_object_example(true, 2);
  REQUIRE(check_multicategory(v).ok());
  CHECK_FALSE(is_universal(v, *v.find_arrow("f"), 2));
  CHECK_FALSE(is_universal(v, *v.find_arrow("g"), 2));
  const Representability rv = is_representable(v, 2);
  CHECK_FALSE(rv.representable);
  CHECK(std::find(rv.missing.begin(), rv.missing.end(), List{0, 0}) != rv.missing.end());
}

TEST_CASE("universality agrees with the naive oracle") {
  Rng rng(5);
  std::vector<Multicategory> pool;
  pool.push_back(underlying_multicat(discrete_group(3), 3));
  pool.push_back(underlying_multicat(commutative_monoid_strict(cyclic_group(3)), 3));
  pool.push_back(underlying_multicat(commutative_monoid_strict(monoid_category(2, {0, 1, 1, 1}, 0)), 3));
  for (int trial = 0; trial < 24; ++trial) {
    const Multicategory m = random_sub(rng, pool[trial % pool.size()], uniform(rng, 2, 6));
    REQUIRE(check_multicategory(m).ok());
    for (int a = 0; a < m.arrow_count(); ++a) CHECK(is_universal(m, a, 3) == naive_universal(m, a, 3));
  }
}

TEST_CASE("closure check flags exactly the non-universal composites of universals") {
  Rng rng(7);
  std::vector<Multicategory> pool;
  pool.push_back(underlying_multicat(discrete_group(2), 3));
  pool.push_back(underlying_multicat(commutative_monoid_strict(cyclic_group(3)), 3));
  pool.push_back(underlying_multicat(commutative_monoid_strict(monoid_category(2, {0, 1, 1, 1}, 0)), 3));
  pool.push_back(two_object_example(true, 2));
  // Composites of universals are universal in any lawful multicategory, so a
  // failure needs a law-breaking table: redirect f(c, c) for the binary unit
  // f and the nullary unit c to the nullary non-universal arrow.
  {
    const Multicategory& m = pool[2];
    const int f = m.hom({0, 0}, 0)[0], c = m.hom({}, 0)[0], ce = m.hom({}, 0)[1];
    pool.push_back(m.with_composite(f, {c, c}, ce));
  }
  int with_failures = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Multicategory m = trial < 5 ? pool[trial] : random_sub(rng, pool[trial % 4], uniform(rng, 2, 5));
    const Representability r = is_representable(m, 3);
    std::vector<bool> univ(m.arrow_count());
    for (int a = 0; a < m.arrow_count(); ++a) univ[a] = naive_universal(m, a, 3);
    std::set<std::vector<int>> expected;
    for (const auto& [key, h] : m.composites()) {
      if (!std::all_of(key.begin(), key.end(), [&](int a) { return univ[a]; })) continue;
      if (m.arity(h) <= 3 && !univ[h]) expected.insert(key);
    }
    const std::set<std::vector<int>> found(r.closure_failures.begin(), r.closure_failures.end());
    CHECK(found == expected);
    CHECK(found.size() == r.closure_failures.size());
    bool all_sources = true;
    for (const auto& l : lists_up_to(m.object_count(), 3)) {
      if (!m.in_range(l)) continue;
      bool any = false;
      for (int y = 0; y < m.object_count(); ++y)
        for (int a : m.hom(l, y)) any = any || univ[a];
      all_sources = all_sources && any;
    }
    CHECK(r.representable == (all_sources && expected.empty()));
    with_failures += !expected.empty();
  }
  CHECK(with_failures >= 1);
}
