#include "catkit/strictify.hpp"

namespace catkit {

int bracket_left(const MonoidalCategory& c, const List& objects) {
  if (objects.empty()) return c.unit;
  int acc = objects[0];
  for (std::size_t i = 1; i < objects.size(); ++i) acc = c.tensor(acc, objects[i]);
  return acc;
}

int bracket_left_mor(const MonoidalCategory& c, const std::vector<int>& morphisms) {
  if (morphisms.empty()) return c.base->identity(c.unit);
  int acc = morphisms[0];
  for (std::size_t i = 1; i < morphisms.size(); ++i) acc = c.tensor_m(acc, morphisms[i]);
  return acc;
}

namespace {

int inverse_of(const FinCat& b, int f) {
  const auto inv = b.inverse(f);
  if (!inv) throw LawViolation("coherence component is not invertible", Report{});
  return *inv;
}

/// lb(A) (x) lb(B) -> lb(A ++ B).
int merge(const MonoidalCategory& c, const List& a, const List& b) {
  const FinCat& base = *c.base;
  if (b.empty()) return c.rho[bracket_left(c, a)];
  if (a.empty()) return c.lambda[bracket_left(c, b)];
  if (b.size() == 1) return base.identity(c.tensor(bracket_left(c, a), b[0]));
  const List front(b.begin(), b.end() - 1);
  const int last = b.back();
  const int reassoc = inverse_of(base, c.assoc(bracket_left(c, a), bracket_left(c, front), last));
  return base.compose(c.tensor_m(merge(c, a, front), base.identity(last)), reassoc);
}

}  // namespace

int flatten_iso(const MonoidalCategory& c, const std::vector<List>& blocks) {
  const FinCat& base = *c.base;
  if (blocks.empty()) return base.identity(c.unit);
  if (blocks.size() == 1) return base.identity(bracket_left(c, blocks[0]));
  const std::vector<List> front(blocks.begin(), blocks.end() - 1);
  List joined;
  for (const auto& b : front) joined.insert(joined.end(), b.begin(), b.end());
  const int step = c.tensor_m(flatten_iso(c, front), base.identity(bracket_left(c, blocks.back())));
  return base.compose(merge(c, joined, blocks.back()), step);
}

Multicategory monoidal_multicat(const MonoidalCategory& c, int max_length) {
  check_monoidal_shape(c);
  const FinCat& base = *c.base;
  const int n = base.object_count();
  std::vector<MultiArrow> arrows;
  std::vector<int> morphism_of;
  std::vector<std::string> names;
  std::map<std::pair<List, int>, int> index;
  for (const auto& l : lists_up_to(n, max_length)) {
    std::string lname = "(";
    for (std::size_t i = 0; i < l.size(); ++i) lname += (i ? "," : "") + base.object_name(l[i]);
    lname += ")";
    const int t = bracket_left(c, l);
    for (int y = 0; y < n; ++y)
      for (int phi : base.hom(t, y)) {
        index[{l, phi}] = static_cast<int>(arrows.size());
        arrows.push_back({l, y});
        morphism_of.push_back(phi);
        names.push_back(base.morphism_name(phi) + "@" + lname);
      }
  }
  std::vector<int> ids;
  for (int x = 0; x < n; ++x) ids.push_back(index.at({List{x}, base.identity(x)}));
  std::map<std::vector<List>, int> flatten_inverse;
  auto composite = [&](int f, const std::vector<int>& gs) {
    std::vector<List> blocks;
    std::vector<int> psi;
    List source;
    for (int g : gs) {
      blocks.push_back(arrows[g].source);
      psi.push_back(morphism_of[g]);
      source.insert(source.end(), arrows[g].source.begin(), arrows[g].source.end());
    }
    auto it = flatten_inverse.find(blocks);
    if (it == flatten_inverse.end())
      it = flatten_inverse.emplace(blocks, inverse_of(base, flatten_iso(c, blocks))).first;
    const int h = base.compose(morphism_of[f], base.compose(bracket_left_mor(c, psi), it->second));
    return index.at({source, h});
  };
  return Multicategory(n, arrows, ids, composite, max_length, true, base.object_names(), names);
}

int Strictification::object_index(const List& l) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), l, [](const List& a, const List& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return it != objects.end() && *it == l ? static_cast<int>(it - objects.begin()) : -1;
}

Strictification strictify(const MonoidalCategory& c, int bound, std::size_t equivalence_budget) {
  const Report input = check_monoidal(c);
  if (!input.ok()) throw LawViolation("strictify needs a monoidal category", input);
  if (bound < 3) throw StructuralError("strictify needs an object-length bound of at least 3");
  const FinCat& base = *c.base;
  const int n = base.object_count();

  Strictification s;
  s.multicat = share(monoidal_multicat(c, bound));
  const Multicategory& m = *s.multicat;
  s.free = std::make_shared<const FreeMonoidal>(s.multicat);
  s.objects = lists_up_to(n, bound);
  const int objects = static_cast<int>(s.objects.size());

  // The arrow of m with source l behind the morphism phi : lb(l) -> y.
  auto arrow = [&](const List& l, int phi) { return m.hom(l, base.cod(phi))[base.hom_position(phi)]; };
  std::vector<int> lb(objects);
  for (int i = 0; i < objects; ++i) lb[i] = bracket_left(c, s.objects[i]);

  std::vector<Arrow> arrows;
  std::vector<std::string> names;
  std::vector<int> morphism_of;  // C-morphism behind each C^sigma morphism
  std::map<std::pair<std::pair<int, int>, int>, int> index;  // ((u, v), C-morphism) -> morphism
  for (int u = 0; u < objects; ++u)
    for (int v = 0; v < objects; ++v)
      for (int phi : base.hom(lb[u], lb[v])) {
        const int a = arrow(s.objects[u], phi);
        index[{{u, v}, phi}] = static_cast<int>(arrows.size());
        arrows.push_back({u, v});
        morphism_of.push_back(phi);
        s.morphisms.push_back(s.free->zeta(a));
        names.push_back(m.arrow_name(a) + ">" + m.list_name(s.objects[v]));
      }
  std::vector<int> ids;
  std::vector<std::string> object_names;
  for (int u = 0; u < objects; ++u) {
    ids.push_back(index.at({{u, u}, base.identity(lb[u])}));
    object_names.push_back(m.list_name(s.objects[u]));
  }
  // C-morphism behind each arrow of m.
  std::vector<int> behind(m.arrow_count());
  for (int a = 0; a < m.arrow_count(); ++a) {
    const auto& hom = m.hom(m.source(a), m.target(a));
    const auto pos = std::find(hom.begin(), hom.end(), a) - hom.begin();
    behind[a] = base.hom(bracket_left(c, m.source(a)), m.target(a))[pos];
  }
  // Kleisli composite: g is transported to the unary arrow <lb v> -> lb w,
  // then composed in m with the one-block morphism f.
  auto compose = [&](int g, int f) {
    const int unary = arrow({lb[arrows[g].dom]}, morphism_of[g]);
    const int h = m.compose(unary, {s.morphisms[f].blocks[0]});
    return h < 0 ? -1 : index.at({{arrows[f].dom, arrows[g].cod}, behind[h]});
  };
  CatRef sigma = share(FinCat(objects, arrows, ids, compose, object_names, names));

  std::vector<int> table(static_cast<std::size_t>(objects) * objects);
  for (int u = 0; u < objects; ++u)
    for (int v = 0; v < objects; ++v) {
      List l = s.objects[u];
      l.insert(l.end(), s.objects[v].begin(), s.objects[v].end());
      table[u * objects + v] = s.object_index(l);
    }
  // f (x) f' through the arrow (lb v, lb v') -> lb(v ++ v') carrying the canonical iso.
  auto tensor = [&](int f, int f2) {
    const int v = arrows[f].cod, v2 = arrows[f2].cod;
    const int uu = table[arrows[f].dom * objects + arrows[f2].dom];
    const int vv = table[v * objects + v2];
    if (uu < 0 || vv < 0) return -1;
    const int glue = arrow({lb[v], lb[v2]}, flatten_iso(c, {s.objects[v], s.objects[v2]}));
    const int h = m.compose(glue, {s.morphisms[f].blocks[0], s.morphisms[f2].blocks[0]});
    return h < 0 ? -1 : index.at({{uu, vv}, behind[h]});
  };
  s.strict = std::make_shared<const StrictMonCat>(sigma, s.object_index({}), table, tensor, true);

  s.comparison = Functor{c.base, sigma, {}, {}};
  for (int x = 0; x < n; ++x) s.comparison.object_map.push_back(s.object_index({x}));
  for (int phi = 0; phi < base.morphism_count(); ++phi)
    s.comparison.morphism_map.push_back(
        index.at({{s.object_index({base.dom(phi)}), s.object_index({base.cod(phi)})}, phi}));
  check_functor_shape(s.comparison);

  auto source = std::make_shared<const MonoidalCategory>(c);
  s.source_keepalive = source;
  s.constraints.source = source.get();
  s.constraints.target = s.strict.get();
  s.constraints.functor = s.comparison;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int xy = c.tensor(x, y);
      s.constraints.theta.push_back(
          index.at({{s.object_index({x, y}), s.object_index({xy})}, base.identity(xy)}));
    }
  s.constraints.theta0 = index.at({{s.object_index({}), s.object_index({c.unit})}, base.identity(c.unit)});

  s.report.append(check_strict_monoidal(*s.strict), "strict: ");
  s.report.append(check_lax_monoidal(s.constraints, &s.strong), "lax: ");
  s.equivalence = equivalence_check(s.comparison, equivalence_budget);
  return s;
}

}  // namespace catkit
