#include "catkit/monoidal.hpp"

namespace catkit {

void check_monoidal_shape(const MonoidalCategory& c) {
  if (!c.base) throw StructuralError("monoidal category without base");
  const int n = c.object_count(), m = c.base->morphism_count();
  auto in = [](const std::vector<int>& v, std::size_t size, int bound, const char* what) {
    if (v.size() != size) throw StructuralError(std::string(what) + " table has wrong size");
    for (int x : v)
      if (x < 0 || x >= bound) throw StructuralError(std::string(what) + " entry out of range");
  };
  if (c.unit < 0 || c.unit >= n) throw StructuralError("unit object out of range");
  in(c.tensor_obj, static_cast<std::size_t>(n) * n, n, "object tensor");
  in(c.tensor_mor, static_cast<std::size_t>(m) * m, m, "morphism tensor");
  in(c.alpha, static_cast<std::size_t>(n) * n * n, m, "associator");
  in(c.lambda, n, m, "left unitor");
  in(c.rho, n, m, "right unitor");
}

Report check_monoidal(const MonoidalCategory& c) {
  check_monoidal_shape(c);
  const FinCat& b = *c.base;
  const int n = b.object_count(), m = b.morphism_count();
  const int I = c.unit;
  Report r;
  auto on = [&](int x) { return b.object_name(x); };
  auto mn = [&](int f) { return b.morphism_name(f); };
  auto arrow_is = [&](int f, int dom, int cod) { return b.dom(f) == dom && b.cod(f) == cod; };

  bool tensor_ok = true;
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g)
      if (!arrow_is(c.tensor_m(f, g), c.tensor(b.dom(f), b.dom(g)), c.tensor(b.cod(f), b.cod(g)))) {
        r.add("tensor-endpoints", mn(f) + ", " + mn(g));
        tensor_ok = false;
      }
  if (!tensor_ok) return r;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (c.tensor_m(b.identity(x), b.identity(y)) != b.identity(c.tensor(x, y)))
        r.add("tensor-identity", on(x) + ", " + on(y));
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g)
      for (int f2 : b.out(b.cod(f)))
        for (int g2 : b.out(b.cod(g)))
          if (b.compose(c.tensor_m(f2, g2), c.tensor_m(f, g)) != c.tensor_m(b.compose(f2, f), b.compose(g2, g)))
            r.add("tensor-composition", mn(f2) + " . " + mn(f) + ", " + mn(g2) + " . " + mn(g));

  bool constraints_ok = true;
  for (int x = 0; x < n; ++x) {
    if (!arrow_is(c.lambda[x], c.tensor(I, x), x)) {
      r.add("lambda-endpoints", on(x));
      constraints_ok = false;
    } else if (!b.is_iso(c.lambda[x])) {
      r.add("lambda-invertible", on(x));
    }
    if (!arrow_is(c.rho[x], c.tensor(x, I), x)) {
      r.add("rho-endpoints", on(x));
      constraints_ok = false;
    } else if (!b.is_iso(c.rho[x])) {
      r.add("rho-invertible", on(x));
    }
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const int a = c.assoc(x, y, z);
        if (!arrow_is(a, c.tensor(c.tensor(x, y), z), c.tensor(x, c.tensor(y, z)))) {
          r.add("alpha-endpoints", on(x) + ", " + on(y) + ", " + on(z));
          constraints_ok = false;
        } else if (!b.is_iso(a)) {
          r.add("alpha-invertible", on(x) + ", " + on(y) + ", " + on(z));
        }
      }
  }
  if (!constraints_ok) return r;

  for (int f = 0; f < m; ++f) {
    const int x = b.dom(f), x2 = b.cod(f);
    if (b.compose(f, c.lambda[x]) != b.compose(c.lambda[x2], c.tensor_m(b.identity(I), f)))
      r.add("lambda-naturality", mn(f));
    if (b.compose(f, c.rho[x]) != b.compose(c.rho[x2], c.tensor_m(f, b.identity(I))))
      r.add("rho-naturality", mn(f));
    for (int g = 0; g < m; ++g)
      for (int h = 0; h < m; ++h) {
        const int y = b.dom(g), y2 = b.cod(g), z = b.dom(h), z2 = b.cod(h);
        const int lhs = b.compose(c.assoc(x2, y2, z2), c.tensor_m(c.tensor_m(f, g), h));
        const int rhs = b.compose(c.tensor_m(f, c.tensor_m(g, h)), c.assoc(x, y, z));
        if (lhs != rhs) r.add("alpha-naturality", mn(f) + ", " + mn(g) + ", " + mn(h));
      }
  }
  for (int w = 0; w < n; ++w)
    for (int x = 0; x < n; ++x) {
      // (id_w (x) lambda_x) . alpha_{w,I,x} = rho_w (x) id_x
      if (b.compose(c.tensor_m(b.identity(w), c.lambda[x]), c.assoc(w, I, x)) !=
          c.tensor_m(c.rho[w], b.identity(x)))
        r.add("triangle", on(w) + ", " + on(x));
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          const int wx = c.tensor(w, x), yz = c.tensor(y, z), xy = c.tensor(x, y);
          const int lhs = b.compose(c.assoc(w, x, yz), c.assoc(wx, y, z));
          int rhs = c.tensor_m(c.assoc(w, x, y), b.identity(z));
          rhs = b.compose(c.assoc(w, xy, z), rhs);
          rhs = b.compose(c.tensor_m(b.identity(w), c.assoc(x, y, z)), rhs);
          if (lhs != rhs) r.add("pentagon", on(w) + ", " + on(x) + ", " + on(y) + ", " + on(z));
        }
    }
  return r;
}

MonoidalCategory strict_as_monoidal(const StrictMonCat& s) {
  if (s.truncated()) throw StructuralError("strict_as_monoidal needs an untruncated category");
  const FinCat& b = s.category();
  const int n = b.object_count(), m = b.morphism_count();
  MonoidalCategory c;
  c.base = s.base();
  c.unit = s.unit();
  c.tensor_obj = s.tensor_table();
  c.tensor_mor.resize(static_cast<std::size_t>(m) * m);
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) c.tensor_mor[f * m + g] = s.tensor_mor(f, g);
  for (int x = 0; x < n; ++x) {
    c.lambda.push_back(b.identity(x));
    c.rho.push_back(b.identity(x));
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) c.alpha.push_back(b.identity(s.tensor(s.tensor(x, y), z)));
  }
  return c;
}

std::array<int, 8> standard_cocycle() {
  std::array<int, 8> w{};
  for (int i = 0; i < 8; ++i) w[i] = i == 7 ? -1 : 1;
  return w;
}

bool is_cocycle(const std::array<int, 8>& w) {
  auto om = [&](int g, int h, int k) { return w[((g % 2) * 2 + h % 2) * 2 + k % 2]; };
  for (int g = 0; g < 2; ++g)
    for (int h = 0; h < 2; ++h)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          if (om(h, k, l) * om(g, h + k, l) * om(g, h, k) != om(g + h, k, l) * om(g, h, k + l)) return false;
  return true;
}

MonoidalCategory cocycle_example(const std::array<int, 8>& omega) {
  for (int s : omega)
    if (s != 1 && s != -1) throw StructuralError("cocycle values must be +1 or -1");
  // Morphism 2g + s: the sign (+1 for s = 0, -1 for s = 1) on object g.
  std::vector<Arrow> arrows{{0, 0}, {0, 0}, {1, 1}, {1, 1}};
  FinCat base(2, arrows, {0, 2}, [](int g, int f) { return (f & 2) | ((g ^ f) & 1); }, {"0", "1"},
              {"+1@0", "-1@0", "+1@1", "-1@1"});
  MonoidalCategory c;
  c.base = share(std::move(base));
  c.unit = 0;
  c.tensor_obj = {0, 1, 1, 0};
  for (int f = 0; f < 4; ++f)
    for (int g = 0; g < 4; ++g) c.tensor_mor.push_back((((f >> 1) ^ (g >> 1)) << 1) | ((f ^ g) & 1));
  for (int g = 0; g < 2; ++g)
    for (int h = 0; h < 2; ++h)
      for (int k = 0; k < 2; ++k) {
        const int obj = (g + h + k) % 2;
        c.alpha.push_back(2 * obj + (omega[(g * 2 + h) * 2 + k] == -1 ? 1 : 0));
      }
  c.lambda = {0, 2};
  c.rho = {0, 2};
  return c;
}

Report check_lax_monoidal(const LaxMonoidalFunctor& lf, bool* strong) {
  const MonoidalCategory& c = *lf.source;
  const StrictMonCat& d = *lf.target;
  const FinCat& cb = *c.base;
  const FinCat& db = d.category();
  const Functor& F = lf.functor;
  const int n = cb.object_count();
  Report r = check_functor(F);
  if (!r.ok()) return r;
  auto on = [&](int x) { return cb.object_name(x); };
  auto th = [&](int x, int y) { return lf.theta[x * n + y]; };
  if (static_cast<int>(lf.theta.size()) != n * n) throw StructuralError("theta table has wrong size");

  auto arrow_is = [&](int f, int dom, int cod) { return f >= 0 && db.dom(f) == dom && db.cod(f) == cod; };
  if (!arrow_is(lf.theta0, d.unit(), F.on_object(c.unit))) r.add("theta-endpoints", "unit");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (!arrow_is(th(x, y), d.tensor(F.on_object(x), F.on_object(y)), F.on_object(c.tensor(x, y))))
        r.add("theta-endpoints", on(x) + ", " + on(y));
  if (!r.ok()) return r;

  // Composition that reports missing tensors as -1 instead of indexing garbage.
  auto comp = [&](int g, int f) { return f < 0 || g < 0 || db.cod(f) != db.dom(g) ? -1 : db.compose(g, f); };
  for (int f = 0; f < cb.morphism_count(); ++f)
    for (int g = 0; g < cb.morphism_count(); ++g) {
      const int x = cb.dom(f), x2 = cb.cod(f), y = cb.dom(g), y2 = cb.cod(g);
      const int lhs = comp(F.on_morphism(c.tensor_m(f, g)), th(x, y));
      const int rhs = comp(th(x2, y2), d.tensor_mor(F.on_morphism(f), F.on_morphism(g)));
      if (lhs < 0 || lhs != rhs) r.add("theta-naturality", cb.morphism_name(f) + ", " + cb.morphism_name(g));
    }
  for (int x = 0; x < n; ++x) {
    const int idx = db.identity(F.on_object(x));
    const int left = comp(F.on_morphism(c.lambda[x]), comp(th(c.unit, x), d.tensor_mor(lf.theta0, idx)));
    if (left != idx) r.add("lax-left-unit", on(x));
    const int right = comp(F.on_morphism(c.rho[x]), comp(th(x, c.unit), d.tensor_mor(idx, lf.theta0)));
    if (right != idx) r.add("lax-right-unit", on(x));
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const int idz = db.identity(F.on_object(z));
        const int lhs = comp(F.on_morphism(c.assoc(x, y, z)),
                             comp(th(c.tensor(x, y), z), d.tensor_mor(th(x, y), idz)));
        const int rhs = comp(th(x, c.tensor(y, z)), d.tensor_mor(idx, th(y, z)));
        if (lhs < 0 || lhs != rhs) r.add("lax-associativity", on(x) + ", " + on(y) + ", " + on(z));
      }
  }
  if (strong) {
    *strong = db.is_iso(lf.theta0);
    for (int t : lf.theta) *strong = *strong && db.is_iso(t);
  }
  return r;
}

// ---------------------------------------------------------------------------

MonoidalCategory induced_monoidal(const Multicategory& m) {
  if (m.truncated() && m.arity_cap() < 3) throw StructuralError("induced_monoidal needs arity cap at least 3");
  const Representability rep = is_representable(m, 3);
  if (!rep.representable) {
    Report r;
    for (const auto& l : rep.missing) r.add("representable", "no universal arrow out of " + m.list_name(l));
    for (const auto& k : rep.closure_failures) r.add("representable", "closure fails at " + m.arrow_name(k[0]));
    throw LawViolation("multicategory is not representable", r);
  }
  const CatRef core = share(linear_core(m));
  const auto unary = linear_core_arrows(m);
  std::vector<int> pos(m.arrow_count(), -1);
  for (int i = 0; i < static_cast<int>(unary.size()); ++i) pos[unary[i]] = i;
  const int n = m.object_count();

  std::vector<int> pi2(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) pi2[x * n + y] = rep.chosen.at({x, y});
  const int pi0 = rep.chosen.at({});
  auto P = [&](int x, int y) { return pi2[x * n + y]; };

  // The unique unary w : target(s) -> target(t) with w . s = t.
  auto factor = [&](int t, int s, const std::string& what) {
    int found = -1;
    for (int w : m.hom({m.target(s)}, m.target(t)))
      if (m.compose(w, {s}) == t) {
        if (found >= 0) throw LawViolation("factorization is not unique", Report{});
        found = w;
      }
    if (found < 0) {
      Report r;
      r.add("factorization", what);
      throw LawViolation("no factorization through a universal arrow", r);
    }
    return pos[found];
  };

  MonoidalCategory c;
  c.base = core;
  c.unit = m.target(pi0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) c.tensor_obj.push_back(m.target(P(x, y)));
  const int mc = core->morphism_count();
  for (int u = 0; u < mc; ++u)
    for (int v = 0; v < mc; ++v) {
      const int x = core->dom(u), x2 = core->cod(u), y = core->dom(v), y2 = core->cod(v);
      c.tensor_mor.push_back(factor(m.compose(P(x2, y2), {unary[u], unary[v]}), P(x, y), "tensor"));
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const int xy = c.tensor_obj[x * n + y], yz = c.tensor_obj[y * n + z];
        const int s = m.compose(P(xy, z), {P(x, y), m.identity(z)});
        const int t = m.compose(P(x, yz), {m.identity(x), P(y, z)});
        c.alpha.push_back(factor(t, s, "associator"));
      }
  for (int x = 0; x < n; ++x) {
    c.lambda.push_back(factor(m.identity(x), m.compose(P(c.unit, x), {pi0, m.identity(x)}), "left unitor"));
    c.rho.push_back(factor(m.identity(x), m.compose(P(x, c.unit), {m.identity(x), pi0}), "right unitor"));
  }
  return c;
}

// ---------------------------------------------------------------------------

int underlying_morphism(const StrictMonCat& d, const Multicategory& rd, int arrow) {
  const List& l = rd.source(arrow);
  const auto& arrows = rd.hom(l, rd.target(arrow));
  const auto pos = std::find(arrows.begin(), arrows.end(), arrow) - arrows.begin();
  return d.category().hom(d.tensor_all(l), rd.target(arrow))[pos];
}

Functor counit(const StrictMonCat& d, const Multicategory& rd, const MaterializedFree& frd) {
  Functor f{frd.cat.base(), d.base(), {}, {}};
  for (const auto& l : frd.objects) f.object_map.push_back(d.tensor_all(l));
  for (const auto& mor : frd.morphisms) {
    std::vector<int> parts;
    for (int b : mor.blocks) parts.push_back(underlying_morphism(d, rd, b));
    f.morphism_map.push_back(d.tensor_all_mor(parts));
  }
  check_functor_shape(f);
  return f;
}

namespace {

/// Calls visit(object_map) for every map from `from` objects to `to` objects.
void for_each_object_map(int from, int to, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur(from, 0);
  if (to == 0 && from > 0) return;
  for (;;) {
    visit(cur);
    int i = 0;
    while (i < from && ++cur[i] == to) cur[i++] = 0;
    if (i == from) return;
  }
}

/// Calls visit(choice) for every element of the product of `options`; stops
/// and returns false once `budget` choices have been visited.
bool for_each_choice(const std::vector<std::vector<int>>& options, std::size_t& budget,
                     const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur(options.size());
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == options.size()) {
      if (budget == 0) return false;
      --budget;
      visit(cur);
      return true;
    }
    for (int o : options[i]) {
      cur[i] = o;
      if (!go(i + 1)) return false;
    }
    return true;
  };
  return go(0);
}

Functor functor_from_generators(const MaterializedFree& fm, const StrictMonCat& d, const std::vector<int>& objects,
                                const std::vector<int>& arrows) {
  Functor f{fm.cat.base(), d.base(), {}, {}};
  for (const auto& l : fm.objects) {
    List mapped;
    for (int x : l) mapped.push_back(objects[x]);
    f.object_map.push_back(d.tensor_all(mapped));
  }
  for (const auto& mor : fm.morphisms) {
    std::vector<int> parts;
    for (int b : mor.blocks) parts.push_back(arrows[b]);
    f.morphism_map.push_back(d.tensor_all_mor(parts));
  }
  return f;
}

}  // namespace

LaxClassification classify_lax_morphisms(const Multicategory& m, const StrictMonCat& d, int bound,
                                         std::size_t max_candidates) {
  if (d.truncated()) throw StructuralError("classify_lax_morphisms needs an untruncated target");
  for (int a = 0; a < m.arrow_count(); ++a)
    if (m.arity(a) > bound) throw BoundExceeded("arrow " + m.arrow_name(a) + " exceeds the length bound");
  if (m.truncated() && bound > m.arity_cap()) throw StructuralError("bound exceeds the multicategory's arity cap");
  const FinCat& db = d.category();
  LaxClassification out;
  const MultiRef ms = share(m);
  out.rd = share(underlying_multicat(d, bound));
  const FreeMonoidal free(ms);
  out.fm = std::make_shared<const MaterializedFree>(materialize(free, bound));
  const Multicategory& rd = *out.rd;
  const MaterializedFree& fm = *out.fm;

  std::size_t budget_a = max_candidates, budget_b = max_candidates;
  for_each_object_map(m.object_count(), db.object_count(), [&](const std::vector<int>& obj) {
    std::vector<std::vector<int>> options_a, options_b;
    for (int a = 0; a < m.arrow_count(); ++a) {
      List mapped;
      for (int x : m.source(a)) mapped.push_back(obj[x]);
      const int y = obj[m.target(a)];
      if (m.is_identity(a)) {
        options_a.push_back({rd.identity(y)});
        options_b.push_back({db.identity(y)});
      } else {
        options_a.push_back(rd.hom(mapped, y));
        const auto h = db.hom(d.tensor_all(mapped), y);
        options_b.emplace_back(h.begin(), h.end());
      }
    }
    out.partial |= !for_each_choice(options_a, budget_a, [&](const std::vector<int>& arrows) {
      MulticatMorphism f{ms, out.rd, obj, arrows};
      if (check_multicat_morphism(f).ok()) out.morphisms.push_back(std::move(f));
    });
    out.partial |= !for_each_choice(options_b, budget_b, [&](const std::vector<int>& arrows) {
      Functor f = functor_from_generators(fm, d, obj, arrows);
      if (check_strict_functor(fm.cat, d, f).ok()) out.functors.push_back(std::move(f));
    });
  });

  if (out.morphisms.size() != out.functors.size()) out.report.add("lax-count", "sides differ in size");
  for (const auto& f : out.morphisms) {
    std::vector<int> arrows;
    for (int a = 0; a < m.arrow_count(); ++a) arrows.push_back(underlying_morphism(d, rd, f.arrow_map[a]));
    const Functor image = functor_from_generators(fm, d, f.object_map, arrows);
    int found = -1;
    for (int j = 0; j < static_cast<int>(out.functors.size()); ++j)
      if (same_functor(out.functors[j], image)) found = j;
    out.to_functor.push_back(found);
  }
  for (const auto& F : out.functors) {
    MulticatMorphism image{ms, out.rd, {}, {}};
    for (int x = 0; x < m.object_count(); ++x) image.object_map.push_back(F.on_object(fm.object_index({x})));
    for (int a = 0; a < m.arrow_count(); ++a) {
      List mapped;
      for (int x : m.source(a)) mapped.push_back(image.object_map[x]);
      const int phi = F.on_morphism(fm.morphism_index(free.zeta(a)));
      image.arrow_map.push_back(underlying_arrow(d, rd, mapped, phi).value_or(-1));
    }
    int found = -1;
    for (int i = 0; i < static_cast<int>(out.morphisms.size()); ++i)
      if (same_morphism(out.morphisms[i], image)) found = i;
    out.to_morphism.push_back(found);
  }
  for (std::size_t i = 0; i < out.to_functor.size(); ++i) {
    const int j = out.to_functor[i];
    if (j < 0 || out.to_morphism[j] != static_cast<int>(i))
      out.report.add("lax-roundtrip", "morphism " + std::to_string(i));
  }
  for (std::size_t j = 0; j < out.to_morphism.size(); ++j) {
    const int i = out.to_morphism[j];
    if (i < 0 || out.to_functor[i] != static_cast<int>(j)) out.report.add("lax-roundtrip", "functor " + std::to_string(j));
  }
  return out;
}

}  // namespace catkit
