#include "catkit/delta.hpp"

#include <numeric>

namespace catkit {

std::vector<Fibers> compositions(int n, int m) {
  std::vector<Fibers> out;
  if (m == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  Fibers cur;
  std::function<void(int)> go = [&](int left) {
    if (static_cast<int>(cur.size()) == m - 1) {
      cur.push_back(left);
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur.push_back(k);
      go(left - k);
      cur.pop_back();
    }
  };
  go(n);
  return out;
}

Fibers compose_fibers(const Fibers& g, const Fibers& f) {
  if (std::accumulate(g.begin(), g.end(), 0) != static_cast<int>(f.size()))
    throw StructuralError("compose_fibers: maps are not composable");
  Fibers out;
  std::size_t at = 0;
  for (int b : g) {
    out.push_back(std::accumulate(f.begin() + at, f.begin() + at + b, 0));
    at += b;
  }
  return out;
}

namespace {

std::string fibers_name(const Fibers& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + "]";
}

int total(const Fibers& f) { return std::accumulate(f.begin(), f.end(), 0); }

}  // namespace

int Delta::morphism(const Fibers& f) const {
  if (static_cast<int>(f.size()) > max || total(f) > max) return -1;
  // Morphisms are ordered by (source, target, lexicographic fibers).
  const int n = total(f), m = static_cast<int>(f.size());
  const auto homs = cat.category().hom(n, m);
  for (int phi : homs)
    if (fibers[phi] == f) return phi;
  return -1;
}

Delta delta(int n_max) {
  if (n_max < 0) throw StructuralError("delta: negative bound");
  Delta d;
  d.max = n_max;
  std::vector<Arrow> arrows;
  std::vector<std::string> names;
  std::map<Fibers, int> index;
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= n_max; ++m)
      for (auto& f : compositions(n, m)) {
        index[f] = static_cast<int>(arrows.size());
        arrows.push_back({n, m});
        names.push_back(fibers_name(f));
        d.fibers.push_back(std::move(f));
      }
  std::vector<int> ids;
  std::vector<std::string> object_names;
  for (int n = 0; n <= n_max; ++n) {
    ids.push_back(index.at(Fibers(n, 1)));
    object_names.push_back(std::to_string(n));
  }
  const auto& fibers = d.fibers;
  CatRef base = share(FinCat(
      n_max + 1, arrows, ids, [&](int g, int f) { return index.at(compose_fibers(fibers[g], fibers[f])); },
      object_names, names));
  std::vector<int> table(static_cast<std::size_t>(n_max + 1) * (n_max + 1));
  for (int a = 0; a <= n_max; ++a)
    for (int b = 0; b <= n_max; ++b) table[a * (n_max + 1) + b] = a + b <= n_max ? a + b : -1;
  d.cat = StrictMonCat(
      base, 0, table,
      [&](int f, int g) {
        Fibers s = fibers[f];
        s.insert(s.end(), fibers[g].begin(), fibers[g].end());
        auto it = index.find(s);
        return it == index.end() ? -1 : it->second;
      },
      true);
  return d;
}

MonoidInC generic_monoid(const Delta& d) {
  if (d.max < 2) throw StructuralError("generic monoid needs Delta up to 2");
  return {1, d.morphism({0}), d.morphism({2})};
}

Report check_monoid(const StrictMonCat& c, const MonoidInC& m) {
  const FinCat& base = c.category();
  Report r;
  const int x = m.carrier;
  const int xx = c.tensor(x, x);
  if (base.dom(m.unit) != c.unit() || base.cod(m.unit) != x) r.add("monoid-endpoints", "unit");
  if (xx < 0 || base.dom(m.mult) != xx || base.cod(m.mult) != x) r.add("monoid-endpoints", "mult");
  if (!r.ok()) return r;
  const int id = base.identity(x);
  const int m_id = c.tensor_mor(m.mult, id), id_m = c.tensor_mor(id, m.mult);
  if (m_id < 0 || id_m < 0 || base.compose(m.mult, m_id) != base.compose(m.mult, id_m))
    r.add("associativity", base.object_name(x));
  const int e_id = c.tensor_mor(m.unit, id), id_e = c.tensor_mor(id, m.unit);
  if (e_id < 0 || base.compose(m.mult, e_id) != id) r.add("left-unit", base.object_name(x));
  if (id_e < 0 || base.compose(m.mult, id_e) != id) r.add("right-unit", base.object_name(x));
  return r;
}

Functor delta_to_free(const Delta& d, const MaterializedFree& free) {
  const FinCat& source = d.cat.category();
  Functor f{d.cat.base(), free.cat.base(), {}, {}};
  for (int n = 0; n <= d.max; ++n) f.object_map.push_back(free.object_index(List(n, 0)));
  for (int phi = 0; phi < source.morphism_count(); ++phi) {
    // Arrow k of the terminal multicategory has arity k.
    FreeMor mor{List(source.dom(phi), 0), List(source.cod(phi), 0), d.fibers[phi]};
    f.morphism_map.push_back(free.morphism_index(mor));
  }
  check_functor_shape(f);
  return f;
}

Functor free_to_delta(const MaterializedFree& free, const Delta& d) {
  Functor f{free.cat.base(), d.cat.base(), {}, {}};
  for (const auto& l : free.objects) f.object_map.push_back(static_cast<int>(l.size()));
  for (const auto& mor : free.morphisms) f.morphism_map.push_back(d.morphism(mor.blocks));
  check_functor_shape(f);
  return f;
}

std::optional<Functor> functor_from_monoid(const Delta& d, const StrictMonCat& c, const MonoidInC& m) {
  const FinCat& base = c.category();
  Functor f{d.cat.base(), c.base(), {}, {}};
  for (int n = 0; n <= d.max; ++n) {
    const int xn = c.tensor_all(List(n, m.carrier));
    if (xn < 0) return std::nullopt;
    f.object_map.push_back(xn);
  }
  // mu_k : X^k -> X, with mu_0 = unit, mu_1 = id, mu_k = mult . (mu_{k-1} (x) id)
  std::vector<int> mu{m.unit, base.identity(m.carrier)};
  for (int k = 2; k <= d.max; ++k) {
    const int t = c.tensor_mor(mu[k - 1], base.identity(m.carrier));
    if (t < 0 || base.cod(t) != base.dom(m.mult)) return std::nullopt;
    mu.push_back(base.compose(m.mult, t));
  }
  for (const auto& fib : d.fibers) {
    std::vector<int> parts;
    for (int a : fib) parts.push_back(mu[a]);
    const int image = c.tensor_all_mor(parts);
    if (image < 0) return std::nullopt;
    f.morphism_map.push_back(image);
  }
  return f;
}

MonoidInC monoid_from_functor(const Delta& d, const Functor& f) {
  const MonoidInC g = generic_monoid(d);
  return {f.on_object(g.carrier), f.on_morphism(g.unit), f.on_morphism(g.mult)};
}

MonoidClassification classify_monoids(const StrictMonCat& c, int bound) {
  if (bound < 3) throw StructuralError("classify_monoids needs Delta up to 3");
  MonoidClassification out;
  out.source = delta(bound);
  const FinCat& base = c.category();
  for (int x = 0; x < base.object_count(); ++x) {
    const int xx = c.tensor(x, x);
    if (xx < 0) continue;
    for (int e : base.hom(c.unit(), x))
      for (int m : base.hom(xx, x)) {
        const MonoidInC candidate{x, e, m};
        if (check_monoid(c, candidate).ok()) out.direct.push_back(candidate);
        const auto f = functor_from_monoid(out.source, c, candidate);
        if (f && check_strict_functor(out.source.cat, c, *f).ok())
          out.functors.push_back({monoid_from_functor(out.source, *f), *f});
      }
  }
  auto name = [&](const MonoidInC& m) {
    return base.object_name(m.carrier) + " " + base.morphism_name(m.unit) + " " + base.morphism_name(m.mult);
  };
  if (out.direct.size() != out.functors.size()) out.report.add("classifier-count", "routes differ in size");
  for (std::size_t i = 0; i < std::min(out.direct.size(), out.functors.size()); ++i)
    if (!(out.direct[i] == out.functors[i].monoid)) out.report.add("classifier-mismatch", name(out.direct[i]));
  for (const auto& entry : out.functors) {
    const auto back = functor_from_monoid(out.source, c, entry.monoid);
    if (!back || !same_functor(*back, entry.functor)) out.report.add("classifier-roundtrip", name(entry.monoid));
  }
  return out;
}

}  // namespace catkit
