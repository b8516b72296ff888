#include "catkit/groth.hpp"

#include <algorithm>

namespace catkit {
namespace {

std::string pair_name(const FinCat& c, int f, int g) { return c.morphism_name(f) + "," + c.morphism_name(g); }

// Morphism v in hom(a, a') with right(b, e, v) == target, or -1.
int factor_through(const Profunctor& m, const FinCat& fx, int b, int e, int a, int a2, int target) {
  const auto hom = fx.hom(a, a2);
  for (int i = 0; i < static_cast<int>(hom.size()); ++i)
    if (m.right(b, e, hom[i]) == target) return hom[i];
  return -1;
}

bool is_universal(const Profunctor& m, const FinCat& fx, int b, int a, int e) {
  for (int a2 = 0; a2 < fx.object_count(); ++a2) {
    const auto hom = fx.hom(a, a2);
    const int n = m.fiber_size(b, a2);
    if (static_cast<int>(hom.size()) != n) return false;
    std::vector<bool> hit(n, false);
    for (int v : hom) {
      const int img = m.right(b, e, v);
      if (hit[img]) return false;
      hit[img] = true;
    }
  }
  return true;
}

}  // namespace

const LaxProfFunctor::Mult* LaxProfFunctor::mult(int f, int g) const {
  auto it = mult_index.find({f, g});
  return it == mult_index.end() ? nullptr : &mults[it->second];
}

int LaxProfFunctor::compose_elements(int f, int g, int c, int b, int a, int phi, int psi) const {
  const FinCat& cat = *base;
  if (cat.is_identity(g)) return arrows[f].left(fibers[cat.cod(g)]->hom(c, b)[phi], a, psi);
  if (cat.is_identity(f)) return arrows[g].right(c, phi, fibers[cat.cod(f)]->hom(b, a)[psi]);
  const Mult& m = *mult(f, g);
  const int fiber = m.composite.profunctor.fiber_index(c, a);
  return m.values[fiber][m.composite.class_of[fiber][m.composite.pair_index(fiber, b, phi, psi)]];
}

LaxProfFunctor make_lax_functor(CatRef base, std::vector<CatRef> fibers, std::vector<Profunctor> arrows,
                                const std::function<int(int, int, int, int, int, int, int)>& mult) {
  const FinCat& c = *base;
  if (static_cast<int>(fibers.size()) != c.object_count())
    throw StructuralError("lax functor: one fiber per base object required");
  if (static_cast<int>(arrows.size()) != c.morphism_count())
    throw StructuralError("lax functor: one profunctor per base morphism required");
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) {
      arrows[f] = hom_profunctor(fibers[c.dom(f)]);
      continue;
    }
    if (!same_category(arrows[f].source(), fibers[c.dom(f)]) || !same_category(arrows[f].target(), fibers[c.cod(f)]))
      throw StructuralError("lax functor: M^" + c.morphism_name(f) + " does not run between the fibers");
  }
  LaxProfFunctor l;
  l.base = std::move(base);
  l.fibers = std::move(fibers);
  l.arrows = std::move(arrows);
  Report ill;
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (c.is_identity(g) || c.cod(g) != c.dom(f)) continue;
      LaxProfFunctor::Mult m;
      m.f = f;
      m.g = g;
      m.composite = compose(l.arrows[g], l.arrows[f]);
      const Profunctor& target = l.arrows[c.compose(f, g)];
      const FinCat& fz = *l.fibers[c.dom(g)];
      const FinCat& fx = *l.fibers[c.cod(f)];
      m.values.resize(m.composite.pairs.size());
      for (int zc = 0; zc < fz.object_count(); ++zc)
        for (int xa = 0; xa < fx.object_count(); ++xa) {
          const int fiber = m.composite.profunctor.fiber_index(zc, xa);
          const auto& pairs = m.composite.pairs[fiber];
          auto& values = m.values[fiber];
          values.assign(m.composite.representative[fiber].size(), -1);
          for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& pr = pairs[i];
            const int v = mult(f, g, zc, pr.y, xa, pr.p, pr.q);
            if (v < 0 || v >= target.fiber_size(zc, xa))
              throw StructuralError("lax functor: m^{" + pair_name(c, f, g) + "} value out of range");
            int& slot = values[m.composite.class_of[fiber][i]];
            if (slot == -1) slot = v;
            else if (slot != v)
              ill.add("mult-ill-defined", pair_name(c, f, g) + " at (" + fz.object_name(zc) + ", " +
                                              fx.object_name(xa) + ") pair " + std::to_string(i));
          }
        }
      l.mult_index[{f, g}] = static_cast<int>(l.mults.size());
      l.mults.push_back(std::move(m));
    }
  }
  if (!ill.ok()) throw LawViolation("multiplication not constant on quotient classes", std::move(ill));
  return l;
}

Report check_lax_functor(const LaxProfFunctor& l) {
  const FinCat& c = *l.base;
  Report r;
  for (int x = 0; x < c.object_count(); ++x) r.append(check_category(*l.fibers[x]), "fiber " + c.object_name(x) + ": ");
  for (int f = 0; f < c.morphism_count(); ++f)
    if (!c.is_identity(f)) r.append(check_profunctor(l.arrows[f]), "M^" + c.morphism_name(f) + ": ");
  if (!r.ok()) return r;
  for (const auto& m : l.mults) {
    const std::string prefix = "m^{" + pair_name(c, m.f, m.g) + "}: ";
    r.append(m.composite.well_defined, prefix);
    r.append(check_fiber_map(m.composite.profunctor, l.arrows[c.compose(m.f, m.g)], FiberMap{m.values}), prefix);
  }
  if (!r.ok()) return r;
  for (int h = 0; h < c.morphism_count(); ++h) {
    if (c.is_identity(h)) continue;
    for (int g : c.out(c.cod(h))) {
      if (c.is_identity(g)) continue;
      for (int f : c.out(c.cod(g))) {
        if (c.is_identity(f)) continue;
        const int fg = c.compose(f, g), gh = c.compose(g, h);
        const FinCat& fw = *l.fibers[c.dom(h)];
        const FinCat& fz = *l.fibers[c.dom(g)];
        const FinCat& fy = *l.fibers[c.dom(f)];
        const FinCat& fx = *l.fibers[c.cod(f)];
        const Profunctor &mh = l.arrows[h], &mg = l.arrows[g], &mf = l.arrows[f];
        for (int d = 0; d < fw.object_count(); ++d)
          for (int zc = 0; zc < fz.object_count(); ++zc)
            for (int yb = 0; yb < fy.object_count(); ++yb)
              for (int xa = 0; xa < fx.object_count(); ++xa)
                for (int chi = 0; chi < mh.fiber_size(d, zc); ++chi)
                  for (int phi = 0; phi < mg.fiber_size(zc, yb); ++phi)
                    for (int psi = 0; psi < mf.fiber_size(yb, xa); ++psi) {
                      const int left = l.compose_elements(fg, h, d, zc, xa, chi,
                                                          l.compose_elements(f, g, zc, yb, xa, phi, psi));
                      const int right = l.compose_elements(f, gh, d, yb, xa,
                                                           l.compose_elements(g, h, d, zc, yb, chi, phi), psi);
                      if (left != right)
                        r.add("associativity", c.morphism_name(h) + " " + c.morphism_name(g) + " " +
                                                   c.morphism_name(f) + ": " + mh.element_name(d, zc, chi) + " " +
                                                   mg.element_name(zc, yb, phi) + " " + mf.element_name(yb, xa, psi));
                    }
      }
    }
  }
  return r;
}

LaxProfFunctor with_mult_value(const LaxProfFunctor& l, int f, int g, int fiber, int cls, int value) {
  LaxProfFunctor out = l;
  auto it = out.mult_index.find({f, g});
  if (it == out.mult_index.end()) throw StructuralError("with_mult_value: no multiplication for that pair");
  out.mults[it->second].values.at(fiber).at(cls) = value;
  return out;
}

LaxProfFunctor restrict_fibers(const LaxProfFunctor& l, const std::vector<Functor>& pi) {
  const FinCat& c = *l.base;
  if (static_cast<int>(pi.size()) != c.object_count()) throw StructuralError("restrict_fibers: one functor per object");
  std::vector<CatRef> fibers;
  // position[x][(i, j)][k]: the F'x morphism i -> j whose image is hom(pi i, pi j)[k]
  std::vector<std::vector<std::vector<int>>> preimage(c.object_count());
  for (int x = 0; x < c.object_count(); ++x) {
    check_functor_shape(pi[x]);
    if (!same_category(pi[x].target, l.fibers[x])) throw StructuralError("restrict_fibers: functor misses the fiber");
    const FinCat& src = *pi[x].source;
    const FinCat& tgt = *l.fibers[x];
    const int n = src.object_count();
    preimage[x].resize(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto hom = tgt.hom(pi[x].on_object(i), pi[x].on_object(j));
        auto& pre = preimage[x][i * n + j];
        pre.assign(hom.size(), -1);
        if (src.hom(i, j).size() != hom.size()) throw StructuralError("restrict_fibers: functor not fully faithful");
        for (int u : src.hom(i, j)) {
          int& slot = pre[tgt.hom_position(pi[x].on_morphism(u))];
          if (slot != -1) throw StructuralError("restrict_fibers: functor not fully faithful");
          slot = u;
        }
      }
    fibers.push_back(pi[x].source);
  }
  std::vector<Profunctor> arrows(c.morphism_count());
  for (int f = 0; f < c.morphism_count(); ++f)
    if (!c.is_identity(f)) arrows[f] = change_of_base(pi[c.dom(f)], pi[c.cod(f)], l.arrows[f]);
  return make_lax_functor(l.base, std::move(fibers), std::move(arrows),
                          [&](int f, int g, int zc, int yb, int xa, int phi, int psi) {
                            const int x = c.cod(f);
                            const int v = l.compose_elements(f, g, pi[c.dom(g)].on_object(zc), pi[c.dom(f)].on_object(yb),
                                                             pi[x].on_object(xa), phi, psi);
                            if (!c.is_identity(c.compose(f, g))) return v;
                            const int n = pi[x].source->object_count();
                            return pi[x].source->hom_position(preimage[x][zc * n + xa][v]);
                          });
}

// ---------------------------------------------------------------------------

Grothendieck grothendieck(const LaxProfFunctor& l) {
  const FinCat& c = *l.base;
  Grothendieck g;
  int objects = 0;
  for (int x = 0; x < c.object_count(); ++x) {
    g.object_offset.push_back(objects);
    for (int a = 0; a < l.fibers[x]->object_count(); ++a) g.objects.push_back({x, a});
    objects += l.fibers[x]->object_count();
  }
  std::vector<Arrow> arrows;
  std::vector<std::string> object_names, arrow_names;
  for (const auto& [x, a] : g.objects) object_names.push_back(c.object_name(x) + ":" + l.fibers[x]->object_name(a));
  std::vector<std::vector<int>> start(c.morphism_count());  // [f][fiber] -> first total morphism
  for (int f = 0; f < c.morphism_count(); ++f) {
    const Profunctor& m = l.arrows[f];
    const int y = c.dom(f), x = c.cod(f);
    const int ny = l.fibers[y]->object_count(), nx = l.fibers[x]->object_count();
    start[f].resize(ny * nx);
    for (int b = 0; b < ny; ++b)
      for (int a = 0; a < nx; ++a) {
        start[f][m.fiber_index(b, a)] = static_cast<int>(g.morphisms.size());
        for (int e = 0; e < m.fiber_size(b, a); ++e) {
          g.morphisms.push_back({f, b, a, e});
          arrows.push_back({g.object_offset[y] + b, g.object_offset[x] + a});
          arrow_names.push_back(c.morphism_name(f) + ":" + m.element_name(b, a, e));
        }
      }
  }
  std::vector<int> identities;
  for (const auto& [x, a] : g.objects) {
    const int id = c.identity(x);
    const FinCat& fx = *l.fibers[x];
    identities.push_back(start[id][l.arrows[id].fiber_index(a, a)] + fx.hom_position(fx.identity(a)));
  }
  FinCat total(objects, std::move(arrows), std::move(identities),
               [&](int second, int first) {
                 const auto& p = g.morphisms[first];   // over p.f : (y, p.b) -> (y', p.a)
                 const auto& q = g.morphisms[second];  // over q.f, starting at (y', p.a)
                 const int fg = c.compose(q.f, p.f);
                 const int e = l.compose_elements(q.f, p.f, p.b, p.a, q.a, p.e, q.e);
                 if (e < 0 || e >= l.arrows[fg].fiber_size(p.b, q.a)) return -1;
                 return start[fg][l.arrows[fg].fiber_index(p.b, q.a)] + e;
               },
               std::move(object_names), std::move(arrow_names));
  g.total = share(std::move(total));
  g.projection.source = g.total;
  g.projection.target = l.base;
  for (const auto& [x, a] : g.objects) g.projection.object_map.push_back(x);
  for (const auto& m : g.morphisms) g.projection.morphism_map.push_back(m.f);
  return g;
}

FiberDecomposition lax_from_projection(const Functor& p) {
  check_functor_shape(p);
  const FinCat& e = *p.source;
  const FinCat& c = *p.target;
  FiberDecomposition out;
  out.objects.resize(c.object_count());
  std::vector<int> local(e.object_count());
  for (int o = 0; o < e.object_count(); ++o) {
    auto& list = out.objects[p.on_object(o)];
    local[o] = static_cast<int>(list.size());
    list.push_back(o);
  }
  // Every morphism of E sits in the list for (p m, dom m, cod m); pos[m] is its
  // place. Lists are in ascending order, so for identities pos is hom order.
  out.elements.resize(c.morphism_count());
  for (int f = 0; f < c.morphism_count(); ++f)
    out.elements[f].resize(out.objects[c.dom(f)].size() * out.objects[c.cod(f)].size());
  std::vector<int> pos(e.morphism_count());
  for (int m = 0; m < e.morphism_count(); ++m) {
    const int f = p.on_morphism(m);
    auto& list = out.elements[f][local[e.dom(m)] * out.objects[c.cod(f)].size() + local[e.cod(m)]];
    pos[m] = static_cast<int>(list.size());
    list.push_back(m);
  }
  std::vector<CatRef> fibers;
  std::vector<std::vector<int>> fiber_morphisms(c.object_count());  // local morphism -> E morphism
  std::vector<int> local_morphism(e.morphism_count(), -1);
  for (int x = 0; x < c.object_count(); ++x) {
    const int id = c.identity(x);
    for (int m = 0; m < e.morphism_count(); ++m)
      if (p.on_morphism(m) == id) {
        local_morphism[m] = static_cast<int>(fiber_morphisms[x].size());
        fiber_morphisms[x].push_back(m);
      }
    std::vector<Arrow> arrows;
    std::vector<std::string> arrow_names, object_names;
    for (int m : fiber_morphisms[x]) {
      arrows.push_back({local[e.dom(m)], local[e.cod(m)]});
      arrow_names.push_back(e.morphism_name(m));
    }
    std::vector<int> identities;
    for (int o : out.objects[x]) {
      identities.push_back(local_morphism[e.identity(o)]);
      object_names.push_back(e.object_name(o));
    }
    const auto& fm = fiber_morphisms[x];
    fibers.push_back(share(FinCat(static_cast<int>(out.objects[x].size()), std::move(arrows), std::move(identities),
                                  [&](int g, int f) { return local_morphism[e.compose(fm[g], fm[f])]; },
                                  std::move(object_names), std::move(arrow_names))));
  }
  std::vector<Profunctor> arrows(c.morphism_count());
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    const int y = c.dom(f), x = c.cod(f);
    const int nx = static_cast<int>(out.objects[x].size());
    const auto& el = out.elements[f];
    std::vector<int> sizes;
    std::vector<std::vector<std::string>> names;
    for (const auto& list : el) {
      sizes.push_back(static_cast<int>(list.size()));
      names.emplace_back();
      for (int m : list) names.back().push_back(e.morphism_name(m));
    }
    arrows[f] = Profunctor(
        fibers[y], fibers[x], sizes,
        [&](int u, int a, int q) {
          const int b = fibers[y]->cod(u);
          return pos[e.compose(el[b * nx + a][q], fiber_morphisms[y][u])];
        },
        [&](int b, int q, int v) {
          const int a = fibers[x]->dom(v);
          return pos[e.compose(fiber_morphisms[x][v], el[b * nx + a][q])];
        },
        names);
  }
  out.lax = make_lax_functor(p.target, fibers, std::move(arrows), [&](int f, int g, int zc, int yb, int xa, int phi, int psi) {
    const int ny = static_cast<int>(out.objects[c.dom(f)].size());
    const int nx = static_cast<int>(out.objects[c.cod(f)].size());
    const int first = out.elements[g][zc * ny + yb][phi];
    const int second = out.elements[f][yb * nx + xa][psi];
    return pos[e.compose(second, first)];
  });
  return out;
}

// ---------------------------------------------------------------------------

PseudoFunctor strict_pseudo(CatRef base, std::vector<CatRef> fibers, std::vector<Functor> maps) {
  PseudoFunctor p{std::move(base), std::move(fibers), std::move(maps), {}};
  const FinCat& c = *p.base;
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (c.is_identity(f) || c.is_identity(g) || c.cod(g) != c.dom(f)) continue;
      const FinCat& fx = *p.fibers[c.cod(f)];
      const Functor& fg = p.maps[c.compose(f, g)];
      auto& comp = p.comparison[{f, g}];
      for (int z = 0; z < p.fibers[c.dom(g)]->object_count(); ++z) {
        const int obj = p.maps[f].on_object(p.maps[g].on_object(z));
        if (obj != fg.on_object(z)) throw StructuralError("strict_pseudo: maps do not compose strictly");
        comp.push_back(fx.identity(obj));
      }
    }
  return p;
}

namespace {

void check_pseudo_shape(const PseudoFunctor& p) {
  const FinCat& c = *p.base;
  if (static_cast<int>(p.fibers.size()) != c.object_count() || static_cast<int>(p.maps.size()) != c.morphism_count())
    throw StructuralError("pseudo-functor: wrong number of fibers or maps");
  for (int f = 0; f < c.morphism_count(); ++f) {
    check_functor_shape(p.maps[f]);
    if (!same_category(p.maps[f].source, p.fibers[c.dom(f)]) || !same_category(p.maps[f].target, p.fibers[c.cod(f)]))
      throw StructuralError("pseudo-functor: G_" + c.morphism_name(f) + " does not run between the fibers");
  }
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (c.is_identity(f) || c.is_identity(g) || c.cod(g) != c.dom(f)) continue;
      auto it = p.comparison.find({f, g});
      if (it == p.comparison.end() ||
          static_cast<int>(it->second.size()) != p.fibers[c.dom(g)]->object_count())
        throw StructuralError("pseudo-functor: missing comparison for " + pair_name(c, f, g));
      for (int u : it->second)
        if (u < 0 || u >= p.fibers[c.cod(f)]->morphism_count())
          throw StructuralError("pseudo-functor: comparison component out of range");
    }
}

// Component of G_f G_g => G_{f.g} at z, the identity when f or g is one.
int theta(const PseudoFunctor& p, int f, int g, int z) {
  const FinCat& c = *p.base;
  if (c.is_identity(f) || c.is_identity(g))
    return p.fibers[c.cod(f)]->identity(p.maps[f].on_object(p.maps[g].on_object(z)));
  return p.comparison.at({f, g})[z];
}

}  // namespace

Report check_pseudo_functor(const PseudoFunctor& p) {
  check_pseudo_shape(p);
  const FinCat& c = *p.base;
  Report r;
  for (int f = 0; f < c.morphism_count(); ++f) {
    r.append(check_functor(p.maps[f]), "G_" + c.morphism_name(f) + ": ");
    if (c.is_identity(f) && !same_functor(p.maps[f], identity_functor(p.fibers[c.dom(f)])))
      r.add("pseudo-identity", c.morphism_name(f));
  }
  if (!r.ok()) return r;
  for (const auto& [key, comp] : p.comparison) {
    const auto [f, g] = key;
    const FinCat& fz = *p.fibers[c.dom(g)];
    const FinCat& fx = *p.fibers[c.cod(f)];
    const Functor& gfg = p.maps[c.compose(f, g)];
    for (int z = 0; z < fz.object_count(); ++z) {
      const int u = comp[z];
      if (fx.dom(u) != p.maps[f].on_object(p.maps[g].on_object(z)) || fx.cod(u) != gfg.on_object(z)) {
        r.add("pseudo-naturality", pair_name(c, f, g) + " endpoints at " + fz.object_name(z));
        return r;
      }
      if (!fx.is_iso(u)) r.add("pseudo-invertible", pair_name(c, f, g) + " at " + fz.object_name(z));
    }
    for (int w = 0; w < fz.morphism_count(); ++w) {
      const int lhs = fx.compose(gfg.on_morphism(w), comp[fz.dom(w)]);
      const int rhs = fx.compose(comp[fz.cod(w)], p.maps[f].on_morphism(p.maps[g].on_morphism(w)));
      if (lhs != rhs) r.add("pseudo-naturality", pair_name(c, f, g) + " at " + fz.morphism_name(w));
    }
  }
  for (int h = 0; h < c.morphism_count(); ++h) {
    if (c.is_identity(h)) continue;
    for (int g : c.out(c.cod(h))) {
      if (c.is_identity(g)) continue;
      for (int f : c.out(c.cod(g))) {
        if (c.is_identity(f)) continue;
        const int fg = c.compose(f, g), gh = c.compose(g, h);
        const FinCat& fx = *p.fibers[c.cod(f)];
        for (int d = 0; d < p.fibers[c.dom(h)]->object_count(); ++d) {
          const int lhs = fx.compose(theta(p, fg, h, d), theta(p, f, g, p.maps[h].on_object(d)));
          const int rhs = fx.compose(theta(p, f, gh, d), p.maps[f].on_morphism(theta(p, g, h, d)));
          if (lhs != rhs)
            r.add("pseudo-associativity", c.morphism_name(h) + " " + c.morphism_name(g) + " " + c.morphism_name(f) +
                                              " at " + p.fibers[c.dom(h)]->object_name(d));
        }
      }
    }
  }
  return r;
}

LaxProfFunctor lax_from_pseudo(const PseudoFunctor& p) {
  check_pseudo_shape(p);
  const FinCat& c = *p.base;
  std::vector<Profunctor> arrows(c.morphism_count());
  for (int f = 0; f < c.morphism_count(); ++f)
    if (!c.is_identity(f)) arrows[f] = representable(p.maps[f]).lower;
  std::map<std::pair<int, int>, std::vector<int>> inverse;
  for (const auto& [key, comp] : p.comparison) {
    const FinCat& fx = *p.fibers[c.cod(key.first)];
    auto& inv = inverse[key];
    for (int u : comp) {
      const auto i = fx.inverse(u);
      if (!i) throw StructuralError("lax_from_pseudo: comparison component " + fx.morphism_name(u) + " not invertible");
      inv.push_back(*i);
    }
  }
  return make_lax_functor(p.base, p.fibers, std::move(arrows), [&](int f, int g, int zc, int yb, int xa, int phi, int psi) {
    const FinCat& fy = *p.fibers[c.dom(f)];
    const FinCat& fx = *p.fibers[c.cod(f)];
    const int first = fy.hom(p.maps[g].on_object(zc), yb)[phi];
    const int second = fx.hom(p.maps[f].on_object(yb), xa)[psi];
    const int through = fx.compose(second, p.maps[f].on_morphism(first));
    return fx.hom_position(fx.compose(through, inverse.at({f, g})[zc]));
  });
}

RepresentabilityResult is_representable_lax(const LaxProfFunctor& l) {
  const FinCat& c = *l.base;
  RepresentabilityResult out;
  out.universal.resize(c.morphism_count());
  PseudoFunctor p{l.base, l.fibers, {}, {}};
  for (int f = 0; f < c.morphism_count(); ++f) {
    const FinCat& fy = *l.fibers[c.dom(f)];
    const FinCat& fx = *l.fibers[c.cod(f)];
    if (c.is_identity(f)) {
      p.maps.push_back(identity_functor(l.fibers[c.dom(f)]));
      for (int b = 0; b < fy.object_count(); ++b) out.universal[f].push_back(fy.hom_position(fy.identity(b)));
      continue;
    }
    const Profunctor& m = l.arrows[f];
    Functor g{l.fibers[c.dom(f)], l.fibers[c.cod(f)], {}, {}};
    for (int b = 0; b < fy.object_count(); ++b) {
      bool found = false;
      for (int a = 0; a < fx.object_count() && !found; ++a)
        for (int e = 0; e < m.fiber_size(b, a) && !found; ++e)
          if (is_universal(m, fx, b, a, e)) {
            g.object_map.push_back(a);
            out.universal[f].push_back(e);
            found = true;
          }
      if (!found) {
        out.failure = "M^" + c.morphism_name(f) + " has no universal element at " + fy.object_name(b);
        return out;
      }
    }
    for (int w = 0; w < fy.morphism_count(); ++w) {
      const int b2 = fy.dom(w), b = fy.cod(w);
      const int target = m.left(w, g.object_map[b], out.universal[f][b]);
      g.morphism_map.push_back(factor_through(m, fx, b2, out.universal[f][b2], g.object_map[b2], g.object_map[b], target));
    }
    p.maps.push_back(std::move(g));
  }
  for (const auto& mm : l.mults) {
    const int f = mm.f, g = mm.g, fg = c.compose(f, g);
    const FinCat& fz = *l.fibers[c.dom(g)];
    const FinCat& fx = *l.fibers[c.cod(f)];
    const Profunctor& target = l.arrows[fg];
    for (int zc = 0; zc < fz.object_count(); ++zc)
      for (int xa = 0; xa < fx.object_count(); ++xa) {
        const int fiber = mm.composite.profunctor.fiber_index(zc, xa);
        const auto& values = mm.values[fiber];
        std::vector<int> sorted = values;
        std::sort(sorted.begin(), sorted.end());
        bool bijective = static_cast<int>(values.size()) == target.fiber_size(zc, xa);
        for (std::size_t i = 0; bijective && i < sorted.size(); ++i) bijective = sorted[i] == static_cast<int>(i);
        if (!bijective) {
          out.failure = "m^{" + pair_name(c, f, g) + "} is not invertible at (" + fz.object_name(zc) + ", " +
                        fx.object_name(xa) + ")";
          return out;
        }
      }
    auto& comp = p.comparison[{f, g}];
    for (int zc = 0; zc < fz.object_count(); ++zc) {
      const int yb = p.maps[g].on_object(zc);
      const int xa = p.maps[f].on_object(yb);
      const int value = l.compose_elements(f, g, zc, yb, xa, out.universal[g][zc], out.universal[f][yb]);
      const int t = factor_through(target, fx, zc, out.universal[fg][zc], p.maps[fg].on_object(zc), xa, value);
      const auto inv = t < 0 ? std::nullopt : fx.inverse(t);
      if (!inv) {
        out.failure = "m^{" + pair_name(c, f, g) + "} gives no comparison iso at " + fz.object_name(zc);
        return out;
      }
      comp.push_back(*inv);
    }
  }
  out.pseudo = std::move(p);
  return out;
}

// ---------------------------------------------------------------------------

int CStar::position(int f) const {
  const auto& list = into[base->cod(f)];
  return static_cast<int>(std::lower_bound(list.begin(), list.end(), f) - list.begin());
}

Functor CStar::injection(int f) const {
  const int x = base->cod(f), i = position(f);
  const FinCat& src = *family[base->dom(f)];
  Functor j{family[base->dom(f)], categories[x], {}, {}};
  for (int o = 0; o < src.object_count(); ++o) j.object_map.push_back(object_offset[x][i] + o);
  for (int m = 0; m < src.morphism_count(); ++m) j.morphism_map.push_back(morphism_offset[x][i] + m);
  return j;
}

CStar cstar(CatRef base, std::vector<CatRef> family) {
  const FinCat& c = *base;
  if (static_cast<int>(family.size()) != c.object_count()) throw StructuralError("cstar: one category per object");
  CStar s{std::move(base), std::move(family), {}, {}, {}, {}};
  s.into.resize(c.object_count());
  for (int f = 0; f < c.morphism_count(); ++f) s.into[c.cod(f)].push_back(f);
  for (int x = 0; x < c.object_count(); ++x) {
    int objects = 0, morphisms = 0;
    std::vector<Arrow> arrows;
    std::vector<int> identities;
    std::vector<std::string> object_names, arrow_names;
    std::vector<std::pair<int, int>> owner;  // morphism -> (summand, local morphism)
    s.object_offset.emplace_back();
    s.morphism_offset.emplace_back();
    for (int i = 0; i < static_cast<int>(s.into[x].size()); ++i) {
      const int f = s.into[x][i];
      const FinCat& fy = *s.family[c.dom(f)];
      s.object_offset[x].push_back(objects);
      s.morphism_offset[x].push_back(morphisms);
      for (int o = 0; o < fy.object_count(); ++o) {
        identities.push_back(morphisms + fy.identity(o));
        object_names.push_back(c.morphism_name(f) + ":" + fy.object_name(o));
      }
      for (int m = 0; m < fy.morphism_count(); ++m) {
        arrows.push_back({objects + fy.dom(m), objects + fy.cod(m)});
        arrow_names.push_back(c.morphism_name(f) + ":" + fy.morphism_name(m));
        owner.push_back({i, m});
      }
      objects += fy.object_count();
      morphisms += fy.morphism_count();
    }
    const auto& offsets = s.morphism_offset[x];
    s.categories.push_back(share(FinCat(
        objects, std::move(arrows), std::move(identities),
        [&](int g, int f) {
          const auto [i, lf] = owner[f];
          const FinCat& fy = *s.family[c.dom(s.into[x][i])];
          const int h = fy.compose(owner[g].second, lf);
          return h < 0 ? -1 : offsets[i] + h;
        },
        std::move(object_names), std::move(arrow_names))));
  }
  return s;
}

std::vector<Functor> cstar_unit(const CStar& s) {
  std::vector<Functor> eta;
  for (int x = 0; x < s.base->object_count(); ++x) eta.push_back(s.injection(s.base->identity(x)));
  return eta;
}

namespace {

// Summand position and local index of an object or morphism of (C*F)(x).
std::pair<int, int> locate(const std::vector<int>& offsets, int index) {
  const int i = static_cast<int>(std::upper_bound(offsets.begin(), offsets.end(), index) - offsets.begin()) - 1;
  return {i, index - offsets[i]};
}

}  // namespace

std::vector<Functor> cstar_mult(const CStar& s, const CStar& ss) {
  const FinCat& c = *s.base;
  std::vector<Functor> mu;
  for (int x = 0; x < c.object_count(); ++x) {
    Functor m{ss.categories[x], s.categories[x], {}, {}};
    for (int i = 0; i < static_cast<int>(ss.into[x].size()); ++i) {
      const int f = ss.into[x][i], y = c.dom(f);
      const FinCat& sy = *s.categories[y];
      for (int o = 0; o < sy.object_count(); ++o) {
        const auto [j, local] = locate(s.object_offset[y], o);
        const int fg = c.compose(f, s.into[y][j]);
        m.object_map.push_back(s.object_offset[x][s.position(fg)] + local);
      }
    }
    for (int i = 0; i < static_cast<int>(ss.into[x].size()); ++i) {
      const int f = ss.into[x][i], y = c.dom(f);
      const FinCat& sy = *s.categories[y];
      for (int u = 0; u < sy.morphism_count(); ++u) {
        const auto [j, local] = locate(s.morphism_offset[y], u);
        const int fg = c.compose(f, s.into[y][j]);
        m.morphism_map.push_back(s.morphism_offset[x][s.position(fg)] + local);
      }
    }
    mu.push_back(std::move(m));
  }
  return mu;
}

std::vector<Functor> cstar_map(const CStar& from, const CStar& to, const std::vector<Functor>& h) {
  const FinCat& c = *from.base;
  std::vector<Functor> out;
  for (int x = 0; x < c.object_count(); ++x) {
    Functor m{from.categories[x], to.categories[x], {}, {}};
    for (int i = 0; i < static_cast<int>(from.into[x].size()); ++i) {
      const Functor& hy = h[c.dom(from.into[x][i])];
      for (int o : hy.object_map) m.object_map.push_back(to.object_offset[x][i] + o);
    }
    for (int i = 0; i < static_cast<int>(from.into[x].size()); ++i) {
      const Functor& hy = h[c.dom(from.into[x][i])];
      for (int u : hy.morphism_map) m.morphism_map.push_back(to.morphism_offset[x][i] + u);
    }
    out.push_back(std::move(m));
  }
  return out;
}

Report check_cstar_algebra(const CStar& s, const CStar& ss, const std::vector<Functor>& alpha) {
  const FinCat& c = *s.base;
  if (static_cast<int>(alpha.size()) != c.object_count()) throw StructuralError("algebra: one functor per object");
  Report r;
  for (int x = 0; x < c.object_count(); ++x) {
    check_functor_shape(alpha[x]);
    if (!same_category(alpha[x].source, s.categories[x]) || !same_category(alpha[x].target, s.family[x]))
      throw StructuralError("algebra: alpha_" + c.object_name(x) + " has the wrong endpoints");
    r.append(check_functor(alpha[x]), "alpha " + c.object_name(x) + ": ");
  }
  if (!r.ok()) return r;
  const auto eta = cstar_unit(s);
  const auto mu = cstar_mult(s, ss);
  const auto lifted = cstar_map(ss, s, alpha);
  for (int x = 0; x < c.object_count(); ++x) {
    const FinCat& fx = *s.family[x];
    const Functor unit = compose_functors(alpha[x], eta[x]);
    for (int o = 0; o < fx.object_count(); ++o)
      if (unit.on_object(o) != o) r.add("algebra-unit", c.object_name(x) + " " + fx.object_name(o));
    for (int u = 0; u < fx.morphism_count(); ++u)
      if (unit.on_morphism(u) != u) r.add("algebra-unit", c.object_name(x) + " " + fx.morphism_name(u));
    const Functor a = compose_functors(alpha[x], mu[x]);
    const Functor b = compose_functors(alpha[x], lifted[x]);
    const FinCat& sx = *ss.categories[x];
    for (int o = 0; o < sx.object_count(); ++o)
      if (a.on_object(o) != b.on_object(o)) r.add("algebra-associativity", c.object_name(x) + " " + sx.object_name(o));
    for (int u = 0; u < sx.morphism_count(); ++u)
      if (a.on_morphism(u) != b.on_morphism(u))
        r.add("algebra-associativity", c.object_name(x) + " " + sx.morphism_name(u));
  }
  return r;
}

std::vector<Functor> algebra_to_action(const CStar& s, const std::vector<Functor>& alpha) {
  std::vector<Functor> maps;
  for (int f = 0; f < s.base->morphism_count(); ++f)
    maps.push_back(compose_functors(alpha[s.base->cod(f)], s.injection(f)));
  return maps;
}

std::vector<Functor> action_to_algebra(const CStar& s, const std::vector<Functor>& maps) {
  const FinCat& c = *s.base;
  std::vector<Functor> alpha;
  for (int x = 0; x < c.object_count(); ++x) {
    Functor a{s.categories[x], s.family[x], {}, {}};
    for (int f : s.into[x])
      for (int o : maps[f].object_map) a.object_map.push_back(o);
    for (int f : s.into[x])
      for (int u : maps[f].morphism_map) a.morphism_map.push_back(u);
    alpha.push_back(std::move(a));
  }
  return alpha;
}

Report check_strict_action(const CatRef& base, const std::vector<CatRef>& family, const std::vector<Functor>& maps) {
  const FinCat& c = *base;
  if (static_cast<int>(family.size()) != c.object_count() || static_cast<int>(maps.size()) != c.morphism_count())
    throw StructuralError("action: wrong number of categories or functors");
  Report r;
  for (int f = 0; f < c.morphism_count(); ++f) {
    check_functor_shape(maps[f]);
    if (!same_category(maps[f].source, family[c.dom(f)]) || !same_category(maps[f].target, family[c.cod(f)]))
      throw StructuralError("action: G_" + c.morphism_name(f) + " has the wrong endpoints");
    r.append(check_functor(maps[f]), "G_" + c.morphism_name(f) + ": ");
  }
  if (!r.ok()) return r;
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f) && !same_functor(maps[f], identity_functor(family[c.dom(f)])))
      r.add("action-identity", c.morphism_name(f));
    for (int g = 0; g < c.morphism_count(); ++g)
      if (c.cod(g) == c.dom(f) && !same_functor(maps[c.compose(f, g)], compose_functors(maps[f], maps[g])))
        r.add("action-composition", pair_name(c, f, g));
  }
  return r;
}

}  // namespace catkit
