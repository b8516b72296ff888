#include "doctest.h"
#include "support.hpp"

using namespace catkit;

TEST_CASE("walking arrow is a valid category") {
  const FinCat c = walking_arrow();
  CHECK(c.object_count() == 2);
  CHECK(c.morphism_count() == 3);
  CHECK(check_category(c).ok());
}

TEST_CASE("a corrupted unit composite is reported") {
  const FinCat c = walking_arrow();
  const int u = *c.find_morphism("u");
  const FinCat bad = c.with_composite(u, c.identity(0), c.identity(1));
  const Report r = check_category(bad);
  CHECK_FALSE(r.ok());
  CHECK(r.has("right-unit"));
}

TEST_CASE("Z/2 as a one-object category") {
  const FinCat c = cyclic_group(2);
  CHECK(check_category(c).ok());
  CHECK(c.compose(1, 1) == 0);
}

TEST_CASE("out-of-range tables are structural errors") {
  CHECK_THROWS_AS(FinCat(1, {{0, 1}}, {0}, [](int, int) { return 0; }), StructuralError);
  CHECK_THROWS_AS(FinCat(1, {{0, 0}}, {0}, [](int, int) { return 7; }), StructuralError);
  CHECK_THROWS_AS(walking_arrow().compose_checked(2, 2), StructuralError);
}

namespace {

// Direct transcription of the category axioms over full (g, f) tables.
bool naive_is_category(const FinCat& c) {
  const int m = c.morphism_count();
  auto comp = [&](int g, int f) { return c.compose(g, f); };
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      if (c.cod(f) != c.dom(g)) continue;
      const int h = comp(g, f);
      if (h < 0 || c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g)) return false;
    }
  for (int f = 0; f < m; ++f)
    if (comp(c.identity(c.cod(f)), f) != f || comp(f, c.identity(c.dom(f))) != f) return false;
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g)
      for (int h = 0; h < m; ++h)
        if (c.cod(f) == c.dom(g) && c.cod(g) == c.dom(h) && comp(h, comp(g, f)) != comp(comp(h, g), f))
          return false;
  return true;
}

}  // namespace

TEST_CASE("single-entry corruptions agree with a direct axiom check") {
  // Some corruptions are themselves categories: Z/2 becomes {1, e} with e e = e.
  const FinCat z2 = cyclic_group(2);
  CHECK(check_category(z2.with_composite(1, 1, 1)).ok());
  testing::Rng rng(11);
  int detected = 0, total = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const FinCat c = testing::random_category(rng);
    REQUIRE(check_category(c).ok());
    for (int f = 0; f < c.morphism_count(); ++f)
      for (int g : c.out(c.cod(f))) {
        const int h = c.compose(g, f);
        for (int other = 0; other < c.morphism_count(); ++other) {
          if (other == h) continue;
          const FinCat bad = c.with_composite(g, f, other);
          const bool ok = check_category(bad).ok();
          CHECK(ok == naive_is_category(bad));
          // Entries fixed by the unit laws can never be changed silently.
          if (c.is_identity(f) || c.is_identity(g)) CHECK_FALSE(ok);
          detected += !ok;
          ++total;
        }
      }
  }
  CHECK(detected > 0);
  CHECK(detected <= total);
}

TEST_CASE("serial and parallel category kernels agree") {
  testing::Rng rng(5);
  const FinCat big = product(product(walking_arrow(), cyclic_group(3)), testing::random_preorder(rng, 4));
  CHECK(serial::check_category(big) == parallel::check_category(big));
  const FinCat bad = big.with_composite(5, big.identity(big.dom(5)), 0);
  const Report s = serial::check_category(bad);
  CHECK_FALSE(s.ok());
  CHECK(s == parallel::check_category(bad));
}

TEST_CASE("identity and constant functors are valid") {
  const CatRef c = share(product(walking_arrow(), cyclic_group(2)));
  CHECK(check_functor(identity_functor(c)).ok());
  const CatRef t = share(walking_arrow());
  CHECK(check_functor(constant_functor(c, t, 1)).ok());
}

TEST_CASE("a functor with mismatched endpoints is rejected") {
  const CatRef c = share(walking_arrow());
  Functor f = identity_functor(c);
  f.morphism_map[*c->find_morphism("u")] = c->identity(0);
  const Report r = check_functor(f);
  CHECK(r.has("functor-endpoints"));
  f.object_map[0] = 5;
  CHECK_THROWS_AS(check_functor(f), StructuralError);
}

TEST_CASE("comma of identities is the arrow category") {
  testing::Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const CatRef x = share(testing::random_category(rng));
    const CommaCategory comma = comma_category(identity_functor(x), identity_functor(x));
    const FinCat arrows = arrow_category(*x);
    CHECK(check_category(*comma.category).ok());
    CHECK(comma.category->object_count() == arrows.object_count());
    CHECK(comma.category->morphism_count() == arrows.morphism_count());
    // Comma object (a, u, b) corresponds to arrow-category object u.
    Functor iso{comma.category, share(arrows), {}, {}};
    for (const auto& o : comma.objects) iso.object_map.push_back(o.u);
    for (int h = 0; h < comma.category->morphism_count(); ++h) {
      const int s = comma.category->dom(h), t = comma.category->cod(h);
      const auto& m = comma.morphisms[h];
      int image = -1;
      for (int k : arrows.hom(comma.objects[s].u, comma.objects[t].u)) {
        // arrow_category lists squares in (top, bottom, left, right) order
        int pos = 0;
        for (int a : x->hom(x->dom(comma.objects[s].u), x->dom(comma.objects[t].u)))
          for (int b : x->hom(x->cod(comma.objects[s].u), x->cod(comma.objects[t].u)))
            if (x->compose(b, comma.objects[s].u) == x->compose(comma.objects[t].u, a)) {
              if (a == m.a && b == m.b && pos == arrows.hom_position(k)) image = k;
              ++pos;
            }
      }
      iso.morphism_map.push_back(image);
    }
    CHECK(is_isomorphism(iso));
    CHECK(check_nat_trans(comma.cell).ok());
  }
}

TEST_CASE("comma of two points is a hom-set") {
  const CatRef one = share(terminal_category());
  const CatRef z = share(product(walking_arrow(), cyclic_group(2)));
  const Functor a = constant_functor(one, z, 0);
  const Functor b = constant_functor(one, z, 1);
  const CommaCategory comma = comma_category(a, b);
  CHECK(comma.category->object_count() == static_cast<int>(z->hom(0, 1).size()));
  CHECK(comma.category->morphism_count() == comma.category->object_count());
  const CommaCategory point = comma_category(identity_functor(one), identity_functor(one));
  CHECK(point.category->object_count() == 1);
  CHECK(point.category->morphism_count() == 1);
}

TEST_CASE("equivalence checks") {
  const CatRef c = share(walking_arrow());
  CHECK(equivalence_check(identity_functor(c)).status == Verdict::Holds);

  const DuplicatedObject dup = duplicate_object(*c, 1);
  const CatRef big = share(dup.category);
  REQUIRE(check_category(*big).ok());
  Functor incl{c, big, {0, 1}, {}};
  for (int f = 0; f < c->morphism_count(); ++f) incl.morphism_map.push_back(f);
  const EquivalenceResult res = equivalence_check(incl);
  CHECK(res.status == Verdict::Holds);
  CHECK(res.essential_witnesses.size() == 3);
  CHECK(equivalence_check(Functor{big, c, dup.collapse_objects, dup.collapse_morphisms}).status == Verdict::Holds);

  const CatRef two = share(discrete_category(2));
  const CatRef one = share(terminal_category());
  const EquivalenceResult collapse = equivalence_check(constant_functor(two, one, 0));
  CHECK(collapse.status == Verdict::Fails);
  CHECK(collapse.reason.find("not full") == 0);
  CHECK(equivalence_check(incl, 1).status == Verdict::Indeterminate);
}

TEST_CASE("functor enumeration counts") {
  const CatRef arrow = share(walking_arrow());
  // Functors from the walking arrow into a category are its morphisms.
  const CatRef z = share(product(walking_arrow(), cyclic_group(2)));
  CHECK(enumerate_functors(arrow, z).size() == static_cast<std::size_t>(z->morphism_count()));
  // Endomorphisms of Z/3 as a group.
  CHECK(enumerate_functors(share(cyclic_group(3)), share(cyclic_group(3))).size() == 3);
  for (const auto& f : enumerate_functors(share(cyclic_group(4)), share(cyclic_group(2))))
    CHECK(check_functor(f).ok());
}

TEST_CASE("standard constructions are categories") {
  testing::Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const FinCat a = testing::random_category(rng);
    const FinCat b = testing::random_category(rng, 2, 4);
    CHECK(check_category(opposite(a)).ok());
    CHECK(check_category(product(a, b)).ok());
    CHECK(check_category(coproduct(a, b)).ok());
    CHECK(check_category(arrow_category(a)).ok());
  }
}
