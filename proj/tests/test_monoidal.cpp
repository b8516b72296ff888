#include <chrono>
#include <set>

#include "catkit/strictify.hpp"
#include "doctest.h"
#include "support_multicat.hpp"

using namespace catkit;
using namespace catkit::testing;

namespace {

// Monotone maps {0..n-1} -> {0..m-1} as value tables, by brute force.
std::vector<std::vector<int>> monotone_maps(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> go = [&](int lo) {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v < m; ++v) {
      cur.push_back(v);
      go(v);
      cur.pop_back();
    }
  };
  go(0);
  return out;
}

std::vector<int> fibers_of(const std::vector<int>& table, int m) {
  std::vector<int> f(m, 0);
  for (int v : table) ++f[v];
  return f;
}

std::vector<int> table_of(const Fibers& f) {
  std::vector<int> t;
  for (int j = 0; j < static_cast<int>(f.size()); ++j)
    for (int k = 0; k < f[j]; ++k) t.push_back(j);
  return t;
}

// Strict monoidal category with objects and morphisms renumbered by the given permutations (old -> new).
StrictMonCat relabel(const StrictMonCat& c, const std::vector<int>& p, const std::vector<int>& q) {
  const FinCat& b = c.category();
  const int n = b.object_count(), m = b.morphism_count();
  std::vector<int> pinv(n), qinv(m);
  for (int x = 0; x < n; ++x) pinv[p[x]] = x;
  for (int f = 0; f < m; ++f) qinv[q[f]] = f;
  std::vector<Arrow> arrows(m);
  std::vector<std::string> mnames(m), onames(n);
  for (int f = 0; f < m; ++f) {
    arrows[q[f]] = {p[b.dom(f)], p[b.cod(f)]};
    mnames[q[f]] = b.morphism_name(f);
  }
  std::vector<int> ids(n);
  for (int x = 0; x < n; ++x) {
    ids[p[x]] = q[b.identity(x)];
    onames[p[x]] = b.object_name(x);
  }
  CatRef base = share(FinCat(n, arrows, ids, [&](int g, int f) { return q[b.compose(qinv[g], qinv[f])]; }, onames, mnames));
  std::vector<int> table(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int t = c.tensor(pinv[x], pinv[y]);
      table[x * n + y] = t < 0 ? -1 : p[t];
    }
  return StrictMonCat(base, p[c.unit()], table, [&](int f, int g) {
    const int t = c.tensor_mor(qinv[f], qinv[g]);
    return t < 0 ? -1 : q[t];
  }, c.truncated());
}

// Cocycle identity written with exponents in Z/2.
bool cocycle_oracle(const std::array<int, 8>& w) {
  auto bit = [&](int g, int h, int k) { return w[((g & 1) * 2 + (h & 1)) * 2 + (k & 1)] == -1 ? 1 : 0; };
  for (int code = 0; code < 16; ++code) {
    const int g = code & 1, h = (code >> 1) & 1, k = (code >> 2) & 1, l = (code >> 3) & 1;
    const int lhs = bit(h, k, l) ^ bit(g, h ^ k, l) ^ bit(g, h, k);
    const int rhs = bit(g ^ h, k, l) ^ bit(g, h, k ^ l);
    if (lhs != rhs) return false;
  }
  return true;
}

Multicategory two_object_example() {
  MulticatBuilder b;
  b.add_object("a");
  b.add_object("b");
  b.add_arrow({0, 0}, 1, "f");
  return b.build(2, true);
}

}  // namespace

TEST_CASE("hom sizes of F(R(1)) count monotone maps") {
  const auto start = std::chrono::steady_clock::now();
  const FreeMonoidal f(share(terminal_multicategory(6)));
  for (int n = 0; n <= 6; ++n)
    for (int m = 0; m <= 6; ++m)
      CHECK(f.hom(List(n, 0), List(m, 0)).size() == monotone_maps(n, m).size());
  CHECK(f.hom({0, 0}, {0, 0}).size() == 3);
  CHECK(f.hom({}, {}).size() == 1);
  CHECK(f.hom({}, {}).front().empty());
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 10.0);
}

TEST_CASE("zeta is full and faithful") {
  std::vector<Multicategory> corpus{terminal_multicategory(3), underlying_multicat(discrete_group(2), 3),
                                    underlying_multicat(commutative_monoid_strict(cyclic_group(3)), 3),
                                    two_object_example()};
  Rng rng(2);
  corpus.push_back(random_sub(rng, underlying_multicat(discrete_group(3), 3), 3));
  for (const auto& m : corpus) {
    const FreeMonoidal f(share(m));
    CHECK(check_zeta_fully_faithful(f, m.arity_cap()).ok());
  }
}

TEST_CASE("materialized free monoidal categories are strict monoidal") {
  const FreeMonoidal f(share(underlying_multicat(discrete_group(2), 3)));
  const MaterializedFree mat = materialize(f, 3);
  const Report r = check_strict_monoidal(mat.cat);
  CHECK_MESSAGE(r.ok(), r);
  CHECK(mat.cat.unit() == mat.object_index({}));
  CHECK_THROWS_AS(materialize(f, 4), StructuralError);
}

TEST_CASE("delta") {
  const Delta d = delta(4);
  CHECK(check_strict_monoidal(d.cat).ok());
  for (int n = 0; n <= 4; ++n) CHECK(d.cat.category().hom(n, 1).size() == 1);
  CHECK(d.cat.category().hom(2, 2).size() == 3);
  CHECK(d.cat.category().hom(1, 0).empty());
  const MonoidInC g = generic_monoid(d);
  CHECK(g.carrier == 1);
  CHECK(d.fibers[g.unit] == Fibers{0});
  CHECK(d.fibers[g.mult] == Fibers{2});
  CHECK(check_monoid(d.cat, g).ok());
}

TEST_CASE("fiber composition and tensor agree with monotone maps") {
  for (int n = 0; n <= 5; ++n)
    for (int m = 0; m <= 5; ++m)
      for (int k = 0; k <= 5; ++k)
        for (const auto& f : monotone_maps(n, m))
          for (const auto& g : monotone_maps(m, k)) {
            std::vector<int> gf;
            for (int v : f) gf.push_back(g[v]);
            CHECK(compose_fibers(fibers_of(g, k), fibers_of(f, m)) == fibers_of(gf, k));
          }
  // Ordinal sum of tables is concatenation of fibers.
  const auto a = monotone_maps(2, 2)[1], b = monotone_maps(3, 2)[2];
  std::vector<int> sum = a;
  for (int v : b) sum.push_back(v + 2);
  Fibers cat = fibers_of(a, 2);
  const Fibers fb = fibers_of(b, 2);
  cat.insert(cat.end(), fb.begin(), fb.end());
  CHECK(fibers_of(sum, 4) == cat);
  CHECK(table_of(cat) == sum);
}

TEST_CASE("delta is isomorphic to F(R(1))") {
  for (int L = 0; L <= 5; ++L) {
    const Delta d = delta(L);
    const FreeMonoidal f(share(terminal_multicategory(std::max(L, 1))));
    const MaterializedFree mat = materialize(f, L);
    const Functor to = delta_to_free(d, mat);
    const Functor from = free_to_delta(mat, d);
    CHECK(is_isomorphism(to));
    CHECK(check_strict_functor(d.cat, mat.cat, to).ok());
    CHECK(check_strict_functor(mat.cat, d.cat, from).ok());
    CHECK(same_functor(compose_functors(from, to), identity_functor(d.cat.base())));
  }
}

TEST_CASE("monoid classification") {
  SUBCASE("terminal") {
    const auto r = classify_monoids(terminal_strict());
    CHECK(r.report.ok());
    CHECK(r.direct.size() == 1);
  }
  SUBCASE("discrete Z/2") {
    const StrictMonCat z2 = discrete_group(2);
    const auto r = classify_monoids(z2);
    CHECK(r.report.ok());
    REQUIRE(r.direct.size() == 1);
    CHECK(r.direct[0].carrier == 0);
  }
  SUBCASE("truncated delta") {
    const Delta d = delta(3);
    const auto r = classify_monoids(d.cat);
    CHECK_MESSAGE(r.report.ok(), r.report);
    const MonoidInC g = generic_monoid(d);
    CHECK(std::find(r.direct.begin(), r.direct.end(), g) != r.direct.end());
    const MonoidInC trivial{0, d.morphism({}), d.morphism({})};
    CHECK(std::find(r.direct.begin(), r.direct.end(), trivial) != r.direct.end());
    // functor -> monoid -> functor on three functors
    REQUIRE(r.functors.size() >= 2);
    for (std::size_t i = 0; i < std::min<std::size_t>(3, r.functors.size()); ++i) {
      const auto back = functor_from_monoid(r.source, d.cat, monoid_from_functor(r.source, r.functors[i].functor));
      REQUIRE(back.has_value());
      CHECK(same_functor(*back, r.functors[i].functor));
    }
  }
  SUBCASE("commutative monoids as one-object categories") {
    // One object, morphisms Z/3, composition and tensor both addition.
    // Associativity always holds; both unit laws read m + e = 0.
    const FinCat z3 = cyclic_group(3);
    const auto r = classify_monoids(commutative_monoid_strict(z3));
    CHECK(r.report.ok());
    int expected = 0;
    for (int e = 0; e < 3; ++e)
      for (int m = 0; m < 3; ++m) expected += (m + e) % 3 == 0;
    CHECK(static_cast<int>(r.direct.size()) == expected);
  }
}

TEST_CASE("monoids are invariant under relabelling") {
  Rng rng(9);
  const Delta d = delta(3);
  for (const StrictMonCat& c : {d.cat, discrete_group(3), commutative_monoid_strict(cyclic_group(4))}) {
    const int n = c.category().object_count(), m = c.category().morphism_count();
    std::vector<int> p(n), q(m);
    std::iota(p.begin(), p.end(), 0);
    std::iota(q.begin(), q.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    std::shuffle(q.begin(), q.end(), rng);
    const StrictMonCat copy = relabel(c, p, q);
    REQUIRE(check_strict_monoidal(copy).ok());
    std::set<std::array<int, 3>> original, transported;
    for (const auto& mo : classify_monoids(c).direct) original.insert({p[mo.carrier], q[mo.unit], q[mo.mult]});
    for (const auto& mo : classify_monoids(copy).direct) transported.insert({mo.carrier, mo.unit, mo.mult});
    CHECK(original == transported);
  }
}

TEST_CASE("strict categories with identity constraints are monoidal") {
  CHECK(check_monoidal(strict_as_monoidal(discrete_group(3))).ok());
  CHECK(check_monoidal(strict_as_monoidal(commutative_monoid_strict(cyclic_group(4)))).ok());
  CHECK_THROWS_AS(strict_as_monoidal(delta(3).cat), StructuralError);
}

TEST_CASE("pentagon holds exactly for cocycles") {
  int cocycles = 0;
  for (int bits = 0; bits < 256; ++bits) {
    std::array<int, 8> w{};
    for (int i = 0; i < 8; ++i) w[i] = (bits >> i) & 1 ? -1 : 1;
    const Report r = check_monoidal(cocycle_example(w));
    CHECK(is_cocycle(w) == cocycle_oracle(w));
    CHECK((r.count("pentagon") == 0) == cocycle_oracle(w));
    CHECK(r.count("alpha-invertible") == 0);
    cocycles += cocycle_oracle(w);
  }
  CHECK(cocycles > 1);
  CHECK(check_monoidal(cocycle_example(standard_cocycle())).ok());
  std::array<int, 8> bad{1, 1, 1, 1, 1, 1, -1, 1};  // omega(1, 1, 0) = -1 only
  CHECK(check_monoidal(cocycle_example(bad)).has("pentagon"));
}

TEST_CASE("non-invertible constraints are reported apart") {
  MonoidalCategory c = strict_as_monoidal(commutative_monoid_strict(monoid_category(2, {0, 1, 1, 1}, 0)));
  c.alpha[0] = 1;  // e is not invertible
  const Report r = check_monoidal(c);
  CHECK(r.has("alpha-invertible"));
  CHECK_FALSE(r.has("alpha-endpoints"));
}

TEST_CASE("induced monoidal structure of a representable multicategory") {
  const MonoidalCategory z3 = induced_monoidal(underlying_multicat(discrete_group(3), 3));
  CHECK(check_monoidal(z3).ok());
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) CHECK(z3.tensor(x, y) == (x + y) % 3);

  // The multicategory of the cocycle example gives back its associator.
  const MonoidalCategory c = cocycle_example(standard_cocycle());
  const MonoidalCategory back = induced_monoidal(monoidal_multicat(c, 3));
  CHECK(check_monoidal(back).ok());
  CHECK(back.tensor_obj == c.tensor_obj);
  CHECK(back.alpha == c.alpha);
  CHECK(back.lambda == c.lambda);
  CHECK(back.rho == c.rho);

  CHECK_THROWS_AS(induced_monoidal(two_object_example()), StructuralError);
  MulticatBuilder b;
  b.add_object("a");
  CHECK_THROWS_AS(induced_monoidal(b.build(3, true)), LawViolation);
}

TEST_CASE("lax morphisms versus strict functors") {
  struct Case {
    Multicategory m;
    StrictMonCat d;
    int bound;
    std::size_t expected;  // 0 = not fixed
  };
  std::vector<Case> cases;
  cases.push_back({terminal_multicategory(3), terminal_strict(), 3, 1});
  cases.push_back({terminal_multicategory(3), discrete_group(2), 3, 1});
  cases.push_back({terminal_multicategory(2), commutative_monoid_strict(cyclic_group(3)), 2, 0});
  cases.push_back({two_object_example(), discrete_group(2), 2, 0});
  cases.push_back({underlying_multicat(discrete_group(2), 2), discrete_group(2), 2, 0});
  cases.push_back({underlying_multicat(discrete_group(2), 2), commutative_monoid_strict(cyclic_group(2)), 2, 0});
  for (const auto& c : cases) {
    REQUIRE(c.m.object_count() <= 2);
    REQUIRE(c.m.arrow_count() <= 8);
    const LaxClassification r = classify_lax_morphisms(c.m, c.d, c.bound);
    CHECK_FALSE(r.partial);
    CHECK_MESSAGE(r.report.ok(), r.report);
    CHECK(r.morphisms.size() == r.functors.size());
    CHECK(r.morphisms.size() > 0);
    if (c.expected) CHECK(r.morphisms.size() == c.expected);
  }
  // Z/2 valued monoids in the terminal multicategory: t_0 forces the neutral element.
  const LaxClassification z2 = classify_lax_morphisms(terminal_multicategory(3), discrete_group(2), 3);
  REQUIRE(z2.morphisms.size() == 1);
  CHECK(z2.morphisms[0].object_map == std::vector<int>{0});
}

TEST_CASE("counit is a strict monoidal functor") {
  for (const StrictMonCat& d : {discrete_group(2), commutative_monoid_strict(cyclic_group(3))}) {
    const MultiRef rd = share(underlying_multicat(d, 3));
    const FreeMonoidal f(rd);
    const MaterializedFree frd = materialize(f, 3);
    const Functor eps = counit(d, *rd, frd);
    CHECK(check_strict_functor(frd.cat, d, eps).ok());
  }
}

TEST_CASE("strictification") {
  SUBCASE("strict input") {
    const MonoidalCategory c = strict_as_monoidal(discrete_group(2));
    const Strictification s = strictify(c, 3);
    CHECK_MESSAGE(s.report.ok(), s.report);
    CHECK(s.strong);
    CHECK(s.equivalence.status == Verdict::Holds);
  }
  SUBCASE("cocycle example at bound 4") {
    const auto start = std::chrono::steady_clock::now();
    const MonoidalCategory c = cocycle_example(standard_cocycle());
    const Strictification s = strictify(c, 4);
    CHECK_MESSAGE(s.report.ok(), s.report);
    CHECK(s.strong);
    CHECK(s.equivalence.status == Verdict::Holds);
    const FinCat& sigma = s.strict->category();
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        CHECK(sigma.hom(s.object_index({x}), s.object_index({y})).size() == c.base->hom(x, y).size());
    CHECK(check_multicategory(monoidal_multicat(c, 3)).ok());
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 60.0);
  }
  SUBCASE("trivial cocycle agrees on unary homs") {
    const Strictification a = strictify(cocycle_example(standard_cocycle()), 4);
    const Strictification b = strictify(cocycle_example({1, 1, 1, 1, 1, 1, 1, 1}), 4);
    CHECK(b.report.ok());
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        const auto ha = a.strict->category().hom(a.object_index({x}), a.object_index({y}));
        const auto hb = b.strict->category().hom(b.object_index({x}), b.object_index({y}));
        REQUIRE(ha.size() == hb.size());
        for (std::size_t i = 0; i < ha.size(); ++i)
          CHECK(a.strict->category().morphism_name(ha[i]) == b.strict->category().morphism_name(hb[i]));
      }
  }
  SUBCASE("non-monoidal input") {
    std::array<int, 8> bad{1, 1, 1, 1, 1, 1, -1, 1};
    CHECK_THROWS_AS(strictify(cocycle_example(bad), 3), LawViolation);
  }
}
