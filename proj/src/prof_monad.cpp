#include "catkit/profunctor.hpp"

namespace catkit {

ProfMonad make_prof_monad(Profunctor carrier, const std::function<int(int u)>& unit,
                          const std::function<int(int x, int y, int z, int p, int q)>& mult) {
  const FinCat& x = *carrier.source();
  if (!same_category(carrier.source(), carrier.target()))
    throw StructuralError("profunctor monad carrier must be an endo-profunctor");
  const int n = x.object_count();
  ProfMonad m;
  m.unit.resize(n * n);
  m.mult.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int u : x.hom(a, b)) m.unit[a * n + b].push_back(unit(u));
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int b = 0; b < n; ++b)
        for (int p = 0; p < carrier.fiber_size(a, b); ++p)
          for (int q = 0; q < carrier.fiber_size(b, c); ++q) m.mult[a * n + c].push_back(mult(a, b, c, p, q));
  m.carrier = std::move(carrier);
  return m;
}

namespace {

void check_tables(const ProfMonad& m, const Composite& mm) {
  const FinCat& x = *m.carrier.source();
  const int n = x.object_count();
  if (m.unit.size() != static_cast<std::size_t>(n * n) || m.mult.size() != static_cast<std::size_t>(n * n))
    throw StructuralError("profunctor monad tables have the wrong fiber count");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int f = a * n + b;
      if (m.unit[f].size() != x.hom(a, b).size()) throw StructuralError("unit table has the wrong size");
      for (int v : m.unit[f])
        if (v < 0 || v >= m.carrier.fiber_size(a, b)) throw StructuralError("unit value out of range");
      if (m.mult[f].size() != mm.pairs[f].size()) throw StructuralError("mult table has the wrong size");
      for (int v : m.mult[f])
        if (v < 0 || v >= m.carrier.fiber_size(a, b)) throw StructuralError("mult value out of range");
    }
}

}  // namespace

Report check_prof_monad(const ProfMonad& m) {
  Report r = check_profunctor(m.carrier);
  if (!same_category(m.carrier.source(), m.carrier.target()))
    throw StructuralError("profunctor monad carrier must be an endo-profunctor");
  const Profunctor& c = m.carrier;
  const FinCat& x = *c.source();
  const int n = x.object_count();
  const Composite mm = compose(c, c);
  check_tables(m, mm);
  auto mult = [&](int a, int b, int d, int p, int q) { return m.mult[a * n + d][mm.pair_index(a * n + d, b, p, q)]; };
  auto unit = [&](int u) { return m.unit[x.dom(u) * n + x.cod(u)][x.hom_position(u)]; };

  // Unit as a 2-cell Hom -> M.
  const Profunctor hom = hom_profunctor(c.source());
  r.append(check_fiber_map(hom, c, FiberMap{m.unit}), "unit: ");

  // Multiplication must be constant on the classes of M . M.
  FiberMap induced;
  induced.images.resize(n * n);
  bool well_defined = true;
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d) {
      const int f = a * n + d;
      auto& img = induced.images[f];
      img.assign(mm.profunctor.fiber_size(a, d), -1);
      for (std::size_t i = 0; i < mm.pairs[f].size(); ++i) {
        int& slot = img[mm.class_of[f][i]];
        if (slot == -1) {
          slot = m.mult[f][i];
        } else if (slot != m.mult[f][i]) {
          const auto& pr = mm.pairs[f][i];
          r.add("mult-ill-defined", "[" + c.element_name(a, pr.y, pr.p) + "," + c.element_name(pr.y, d, pr.q) + "]");
          well_defined = false;
        }
      }
    }
  if (well_defined) r.append(check_fiber_map(mm.profunctor, c, induced), "mult: ");

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        for (int u : x.hom(a, b))
          for (int q = 0; q < c.fiber_size(b, d); ++q)
            if (mult(a, b, d, unit(u), q) != c.left(u, d, q))
              r.add("left-unit-law", x.morphism_name(u) + ", " + c.element_name(b, d, q));
        for (int p = 0; p < c.fiber_size(a, b); ++p)
          for (int v : x.hom(b, d))
            if (mult(a, b, d, p, unit(v)) != c.right(a, p, v))
              r.add("right-unit-law", c.element_name(a, b, p) + ", " + x.morphism_name(v));
      }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d)
        for (int e = 0; e < n; ++e)
          for (int p = 0; p < c.fiber_size(a, b); ++p)
            for (int q = 0; q < c.fiber_size(b, d); ++q)
              for (int s = 0; s < c.fiber_size(d, e); ++s)
                if (mult(a, d, e, mult(a, b, d, p, q), s) != mult(a, b, e, p, mult(b, d, e, q, s)))
                  r.add("associativity", c.element_name(a, b, p) + ", " + c.element_name(b, d, q) + ", " +
                                             c.element_name(d, e, s));

  if (m.expect_normal && !is_normal(m)) r.add("normality", "unit is not bijective");
  return r;
}

bool is_normal(const ProfMonad& m) {
  const Profunctor hom = hom_profunctor(m.carrier.source());
  return is_fiberwise_bijective(hom, m.carrier, FiberMap{m.unit});
}

Kleisli kleisli(const ProfMonad& m) {
  const Report r = check_prof_monad(m);
  if (!r.ok()) throw LawViolation("kleisli: not a profunctor monad", r);
  const Profunctor& c = m.carrier;
  const FinCat& x = *c.source();
  const int n = x.object_count();
  const Composite mm = compose(c, c);

  std::vector<Arrow> arrows;
  std::vector<std::string> names;
  std::vector<int> offset(n * n);
  std::vector<int> element_of;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      offset[a * n + b] = static_cast<int>(arrows.size());
      for (int p = 0; p < c.fiber_size(a, b); ++p) {
        arrows.push_back({a, b});
        names.push_back(c.element_name(a, b, p));
        element_of.push_back(p);
      }
    }
  std::vector<int> identities(n);
  for (int a = 0; a < n; ++a)
    identities[a] = offset[a * n + a] + m.unit[a * n + a][x.hom_position(x.identity(a))];
  auto composite = [&](int g, int f) {
    const int a = arrows[f].dom, b = arrows[f].cod, d = arrows[g].cod;
    const int fiber = a * n + d;
    return offset[fiber] + m.mult[fiber][mm.pair_index(fiber, b, element_of[f], element_of[g])];
  };
  auto k = share(FinCat(n, arrows, identities, composite, x.object_names(), names));

  Functor j{c.source(), k, {}, {}};
  for (int a = 0; a < n; ++a) j.object_map.push_back(a);
  for (int u = 0; u < x.morphism_count(); ++u)
    j.morphism_map.push_back(offset[x.dom(u) * n + x.cod(u)] + m.unit[x.dom(u) * n + x.cod(u)][x.hom_position(u)]);
  return {k, std::move(j)};
}

std::optional<FiberMap> kleisli_reconstruction(const ProfMonad& m, const Kleisli& k, const Composite& jj) {
  const FinCat& kc = *k.category;
  const int n = m.carrier.source()->object_count();
  FiberMap out;
  out.images.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int fiber = a * n + b;
      auto& img = out.images[fiber];
      img.assign(jj.profunctor.fiber_size(a, b), -1);
      for (std::size_t i = 0; i < jj.pairs[fiber].size(); ++i) {
        const auto& pr = jj.pairs[fiber][i];
        const int first = kc.hom(a, pr.y)[pr.p];
        const int second = kc.hom(pr.y, b)[pr.q];
        const int v = kc.hom_position(kc.compose(second, first));
        int& slot = img[jj.class_of[fiber][i]];
        if (slot == -1)
          slot = v;
        else if (slot != v)
          return std::nullopt;
      }
    }
  return out;
}

// ---------------------------------------------------------------------------

Report check_endo_monad(const EndoMonad& t) {
  Report r;
  const Functor& f = t.functor;
  if (!same_category(f.source, f.target)) throw StructuralError("endomonad functor must be an endofunctor");
  r.append(check_functor(f), "functor: ");
  r.append(check_nat_trans(t.unit), "unit: ");
  r.append(check_nat_trans(t.mult), "mult: ");
  if (!r.ok()) return r;
  const FinCat& x = *f.source;
  if (!same_functor(t.unit.source, identity_functor(f.source)) || !same_functor(t.unit.target, f))
    throw StructuralError("endomonad unit must go from the identity to t");
  if (!same_functor(t.mult.source, compose_functors(f, f)) || !same_functor(t.mult.target, f))
    throw StructuralError("endomonad mult must go from t t to t");
  for (int a = 0; a < x.object_count(); ++a) {
    const int ta = f.on_object(a);
    const int mu = t.mult.components[a];
    const int id = x.identity(ta);
    if (x.compose(mu, t.unit.components[ta]) != id) r.add("left-unit-law", x.object_name(a));
    if (x.compose(mu, f.on_morphism(t.unit.components[a])) != id) r.add("right-unit-law", x.object_name(a));
    if (x.compose(mu, t.mult.components[ta]) != x.compose(mu, f.on_morphism(mu)))
      r.add("associativity", x.object_name(a));
  }
  return r;
}

ProfMonad upper_monad(const EndoMonad& t) {
  const Functor& f = t.functor;
  const FinCat& x = *f.source;
  Profunctor carrier = representable(f).upper;
  // carrier(a, b) = X(a, t b)
  auto unit = [&](int u) {
    return x.hom_position(x.compose(t.unit.components[x.cod(u)], u));
  };
  auto mult = [&](int a, int b, int c, int p, int q) {
    const int pm = x.hom(a, f.on_object(b))[p];
    const int qm = x.hom(b, f.on_object(c))[q];
    return x.hom_position(x.compose(t.mult.components[c], x.compose(f.on_morphism(qm), pm)));
  };
  return make_prof_monad(std::move(carrier), unit, mult);
}

EndoKleisli kleisli_of_endo(const EndoMonad& t) {
  const Report r = check_endo_monad(t);
  if (!r.ok()) throw LawViolation("kleisli_of_endo: not a monad", r);
  const Functor& f = t.functor;
  const FinCat& x = *f.source;
  const int n = x.object_count();

  std::vector<Arrow> arrows;
  std::vector<std::string> names;
  std::vector<int> underlying;  // the X-morphism a -> t b behind each Kleisli arrow
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int g : x.hom(a, f.on_object(b))) {
        arrows.push_back({a, b});
        names.push_back(x.morphism_name(g));
        underlying.push_back(g);
      }
  std::vector<int> index_of(x.morphism_count() * n, -1);
  for (int k = 0; k < static_cast<int>(arrows.size()); ++k) index_of[underlying[k] * n + arrows[k].cod] = k;
  std::vector<int> identities(n);
  for (int a = 0; a < n; ++a) identities[a] = index_of[t.unit.components[a] * n + a];
  auto composite = [&](int g, int h) {
    const int c = arrows[g].cod;
    const int m = x.compose(t.mult.components[c], x.compose(f.on_morphism(underlying[g]), underlying[h]));
    return index_of[m * n + c];
  };

  EndoKleisli out;
  out.category = share(FinCat(n, arrows, identities, composite, x.object_names(), names));
  out.monad = upper_monad(t);
  out.via_profunctor = kleisli(out.monad);
  // Both categories list arrows (a, b, position in X(a, t b)) in the same order.
  Functor cmp{out.category, out.via_profunctor.category, {}, {}};
  for (int a = 0; a < n; ++a) cmp.object_map.push_back(a);
  for (int k = 0; k < static_cast<int>(arrows.size()); ++k) cmp.morphism_map.push_back(k);
  if (out.via_profunctor.category->morphism_count() != static_cast<int>(arrows.size()))
    throw StructuralError("kleisli_of_endo: arrow count mismatch");
  out.comparison = std::move(cmp);
  out.agrees = is_isomorphism(out.comparison);
  return out;
}

}  // namespace catkit
