#include "catkit/fincat.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace catkit {

FinCat::FinCat(int objects, std::vector<Arrow> arrows, std::vector<int> identities,
               std::vector<std::string> object_names, std::vector<std::string> arrow_names)
    : objects_(objects),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      object_names_(std::move(object_names)),
      arrow_names_(std::move(arrow_names)) {
  if (objects_ < 0) throw StructuralError("negative object count");
  const int m = morphism_count();
  for (int f = 0; f < m; ++f) {
    const auto& a = arrows_[f];
    if (a.dom < 0 || a.dom >= objects_ || a.cod < 0 || a.cod >= objects_)
      throw StructuralError("morphism " + std::to_string(f) + " has an endpoint out of range");
  }
  if (static_cast<int>(identities_.size()) != objects_)
    throw StructuralError("identity table size differs from object count");
  for (int x = 0; x < objects_; ++x) {
    const int i = identities_[x];
    if (i < 0 || i >= m) throw StructuralError("identity of object " + std::to_string(x) + " out of range");
    if (arrows_[i].dom != x || arrows_[i].cod != x)
      throw StructuralError("identity of object " + std::to_string(x) + " is not an endomorphism of it");
  }
  if (object_names_.empty())
    for (int x = 0; x < objects_; ++x) object_names_.push_back("o" + std::to_string(x));
  if (arrow_names_.empty())
    for (int f = 0; f < m; ++f) {
      const bool id = identities_[arrows_[f].dom] == f;
      arrow_names_.push_back(id ? "id_" + object_names_[arrows_[f].dom] : "m" + std::to_string(f));
    }
  if (static_cast<int>(object_names_.size()) != objects_ || static_cast<int>(arrow_names_.size()) != m)
    throw StructuralError("name table size mismatch");

  homs_.assign(static_cast<std::size_t>(objects_) * objects_, {});
  out_.assign(objects_, {});
  hom_pos_.assign(m, 0);
  out_pos_.assign(m, 0);
  for (int f = 0; f < m; ++f) {
    auto& h = homs_[arrows_[f].dom * objects_ + arrows_[f].cod];
    hom_pos_[f] = static_cast<int>(h.size());
    h.push_back(f);
    out_pos_[f] = static_cast<int>(out_[arrows_[f].dom].size());
    out_[arrows_[f].dom].push_back(f);
  }
  row_.assign(m, 0);
  std::size_t total = 0;
  for (int f = 0; f < m; ++f) {
    row_[f] = total;
    total += out_[arrows_[f].cod].size();
  }
  table_.assign(total, -1);
}

void FinCat::validate_table() const {
  for (int v : table_)
    if (v < -1 || v >= morphism_count()) throw StructuralError("composition table entry out of range");
}

int FinCat::compose_checked(int g, int f) const {
  if (f < 0 || f >= morphism_count() || g < 0 || g >= morphism_count())
    throw StructuralError("morphism index out of range");
  if (!composable(g, f))
    throw StructuralError("cannot compose " + arrow_names_[g] + " after " + arrow_names_[f]);
  return compose(g, f);
}

std::optional<int> FinCat::inverse(int f) const {
  const int x = dom(f), y = cod(f);
  for (int g : hom(y, x))
    if (compose(g, f) == identity(x) && compose(f, g) == identity(y)) return g;
  return std::nullopt;
}

std::optional<int> FinCat::find_object(const std::string& name) const {
  auto it = std::find(object_names_.begin(), object_names_.end(), name);
  if (it == object_names_.end()) return std::nullopt;
  return static_cast<int>(it - object_names_.begin());
}

std::optional<int> FinCat::find_morphism(const std::string& name) const {
  auto it = std::find(arrow_names_.begin(), arrow_names_.end(), name);
  if (it == arrow_names_.end()) return std::nullopt;
  return static_cast<int>(it - arrow_names_.begin());
}

FinCat FinCat::with_composite(int g, int f, int h) const {
  if (!composable(g, f)) throw StructuralError("with_composite: pair not composable");
  FinCat copy = *this;
  copy.table_[row_[f] + out_pos_[g]] = h;
  copy.validate_table();
  return copy;
}

FinCat FinCat::renamed(std::vector<std::string> object_names, std::vector<std::string> arrow_names) const {
  if (static_cast<int>(object_names.size()) != objects_ ||
      static_cast<int>(arrow_names.size()) != morphism_count())
    throw StructuralError("renamed: name table size mismatch");
  FinCat copy = *this;
  copy.object_names_ = std::move(object_names);
  copy.arrow_names_ = std::move(arrow_names);
  return copy;
}

bool FinCat::same_structure(const FinCat& other) const {
  return objects_ == other.objects_ && arrows_ == other.arrows_ && identities_ == other.identities_ &&
         table_ == other.table_;
}

bool same_category(const CatRef& a, const CatRef& b) {
  return a == b || (a && b && a->same_structure(*b));
}

// ---------------------------------------------------------------------------

int CategoryBuilder::add_object(std::string name) {
  const int x = object_count();
  if (name.empty()) name = "o" + std::to_string(x);
  object_names_.push_back(name);
  identities_.push_back(morphism_count());
  arrows_.push_back({x, x});
  arrow_names_.push_back("id_" + name);
  composites_.emplace_back();
  return x;
}

int CategoryBuilder::add_morphism(int dom, int cod, std::string name) {
  if (dom < 0 || dom >= object_count() || cod < 0 || cod >= object_count())
    throw StructuralError("add_morphism: endpoint out of range");
  const int f = morphism_count();
  if (name.empty()) name = "m" + std::to_string(f);
  arrows_.push_back({dom, cod});
  arrow_names_.push_back(std::move(name));
  composites_.emplace_back();
  return f;
}

void CategoryBuilder::set_composite(int g, int f, int h) {
  const int m = morphism_count();
  if (g < 0 || g >= m || f < 0 || f >= m || h < -1 || h >= m)
    throw StructuralError("set_composite: index out of range");
  if (arrows_[f].cod != arrows_[g].dom) throw StructuralError("set_composite: pair not composable");
  composites_[f].push_back({g, h});
}

FinCat CategoryBuilder::build() const {
  auto identities = identities_;
  auto arrows = arrows_;
  auto composite = [&](int g, int f) {
    for (auto [gg, h] : composites_[f])
      if (gg == g) return h;
    if (identities[arrows[g].dom] == g) return f;
    if (identities[arrows[f].dom] == f) return g;
    return -1;
  };
  return FinCat(object_count(), arrows_, identities_, composite, object_names_, arrow_names_);
}

// ---------------------------------------------------------------------------

FinCat terminal_category() {
  return FinCat(1, {{0, 0}}, {0}, [](int, int) { return 0; }, {"*"}, {"id_*"});
}

FinCat discrete_category(int objects) {
  std::vector<Arrow> arrows;
  std::vector<int> ids;
  for (int x = 0; x < objects; ++x) {
    arrows.push_back({x, x});
    ids.push_back(x);
  }
  return FinCat(objects, arrows, ids, [](int g, int) { return g; });
}

FinCat walking_arrow() {
  CategoryBuilder b;
  const int a = b.add_object("a");
  const int c = b.add_object("b");
  b.add_morphism(a, c, "u");
  return b.build();
}

FinCat monoid_category(int n, const std::vector<int>& mult, int unit, std::string name) {
  if (static_cast<int>(mult.size()) != n * n) throw StructuralError("monoid table has wrong size");
  std::vector<Arrow> arrows(n, Arrow{0, 0});
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(i == unit ? "id_" + name : "e" + std::to_string(i));
  return FinCat(1, arrows, {unit}, [&](int g, int f) { return mult[g * n + f]; }, {name}, names);
}

FinCat cyclic_group(int n) {
  std::vector<int> mult(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mult[a * n + b] = (a + b) % n;
  return monoid_category(n, mult, 0);
}

FinCat preorder_category(int objects, const std::vector<std::vector<bool>>& leq) {
  std::vector<Arrow> arrows;
  std::vector<int> ids(objects, -1);
  std::vector<int> index(objects * objects, -1);
  for (int x = 0; x < objects; ++x)
    for (int y = 0; y < objects; ++y)
      if (leq[x][y] || x == y) {
        index[x * objects + y] = static_cast<int>(arrows.size());
        if (x == y) ids[x] = static_cast<int>(arrows.size());
        arrows.push_back({x, y});
      }
  return FinCat(objects, arrows, ids, [&](int g, int f) {
    return index[arrows[f].dom * objects + arrows[g].cod];
  });
}

FinCat free_category_on_dag(int objects, const std::vector<Arrow>& edges) {
  // Enumerate paths as edge sequences by increasing length.
  std::vector<std::vector<int>> paths;
  std::vector<Arrow> arrows;
  std::vector<int> ids;
  for (int x = 0; x < objects; ++x) {
    ids.push_back(static_cast<int>(arrows.size()));
    arrows.push_back({x, x});
    paths.push_back({});
  }
  std::vector<std::vector<int>> frontier;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) frontier.push_back({e});
  std::size_t guard = 0;
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (auto& p : frontier) {
      arrows.push_back({edges[p.front()].dom, edges[p.back()].cod});
      paths.push_back(p);
      for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        if (edges[e].dom == edges[p.back()].cod) {
          auto q = p;
          q.push_back(e);
          next.push_back(std::move(q));
        }
    }
    frontier = std::move(next);
    if (++guard > static_cast<std::size_t>(objects) + 1) throw StructuralError("free_category_on_dag: graph has a cycle");
  }
  std::map<std::pair<int, std::vector<int>>, int> index;
  for (int f = 0; f < static_cast<int>(arrows.size()); ++f) index[{arrows[f].dom, paths[f]}] = f;
  return FinCat(objects, arrows, ids, [&](int g, int f) {
    auto p = paths[f];
    p.insert(p.end(), paths[g].begin(), paths[g].end());
    return index.at({arrows[f].dom, p});
  });
}

FinCat opposite(const FinCat& c) {
  std::vector<Arrow> arrows;
  for (int f = 0; f < c.morphism_count(); ++f) arrows.push_back({c.cod(f), c.dom(f)});
  std::vector<int> ids;
  for (int x = 0; x < c.object_count(); ++x) ids.push_back(c.identity(x));
  return FinCat(c.object_count(), arrows, ids, [&](int g, int f) { return c.compose(f, g); },
                c.object_names(), c.morphism_names());
}

FinCat product(const FinCat& a, const FinCat& b) {
  const int nb = b.object_count(), mb = b.morphism_count();
  std::vector<Arrow> arrows;
  std::vector<std::string> onames, mnames;
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < nb; ++y) onames.push_back("(" + a.object_name(x) + "," + b.object_name(y) + ")");
  for (int f = 0; f < a.morphism_count(); ++f)
    for (int g = 0; g < mb; ++g) {
      arrows.push_back({a.dom(f) * nb + b.dom(g), a.cod(f) * nb + b.cod(g)});
      mnames.push_back("(" + a.morphism_name(f) + "," + b.morphism_name(g) + ")");
    }
  std::vector<int> ids;
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < nb; ++y) ids.push_back(a.identity(x) * mb + b.identity(y));
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < nb; ++y) mnames[a.identity(x) * mb + b.identity(y)] = "id_" + onames[x * nb + y];
  return FinCat(a.object_count() * nb, arrows, ids, [&](int g, int f) {
    const int h1 = a.compose(g / mb, f / mb), h2 = b.compose(g % mb, f % mb);
    return (h1 < 0 || h2 < 0) ? -1 : h1 * mb + h2;
  }, onames, mnames);
}

FinCat coproduct(const FinCat& a, const FinCat& b) {
  const int na = a.object_count(), ma = a.morphism_count();
  std::vector<Arrow> arrows;
  for (int f = 0; f < ma; ++f) arrows.push_back(a.arrow(f));
  for (int f = 0; f < b.morphism_count(); ++f) arrows.push_back({b.dom(f) + na, b.cod(f) + na});
  std::vector<int> ids;
  for (int x = 0; x < na; ++x) ids.push_back(a.identity(x));
  for (int x = 0; x < b.object_count(); ++x) ids.push_back(b.identity(x) + ma);
  auto onames = a.object_names();
  onames.insert(onames.end(), b.object_names().begin(), b.object_names().end());
  auto mnames = a.morphism_names();
  mnames.insert(mnames.end(), b.morphism_names().begin(), b.morphism_names().end());
  // Keep names unique when both sides use the same labels.
  std::map<std::string, int> seen;
  for (auto& n : onames)
    if (seen[n]++) n += "'" + std::to_string(seen[n] - 1);
  seen.clear();
  for (auto& n : mnames)
    if (seen[n]++) n += "'" + std::to_string(seen[n] - 1);
  return FinCat(na + b.object_count(), arrows, ids, [&](int g, int f) {
    if (f < ma) return a.compose(g, f);
    const int h = b.compose(g - ma, f - ma);
    return h < 0 ? -1 : h + ma;
  }, onames, mnames);
}

FinCat arrow_category(const FinCat& c) {
  struct Square {
    int top, bottom, left, right;  // left : top-dom -> bottom-dom
  };
  std::vector<Square> squares;
  std::vector<Arrow> arrows;
  std::vector<int> ids(c.morphism_count(), -1);
  for (int u = 0; u < c.morphism_count(); ++u)
    for (int v = 0; v < c.morphism_count(); ++v)
      for (int a : c.hom(c.dom(u), c.dom(v)))
        for (int b : c.hom(c.cod(u), c.cod(v)))
          if (c.compose(b, u) == c.compose(v, a)) {
            if (u == v && c.is_identity(a) && c.is_identity(b)) ids[u] = static_cast<int>(arrows.size());
            squares.push_back({u, v, a, b});
            arrows.push_back({u, v});
          }
  std::map<std::array<int, 4>, int> index;
  for (int i = 0; i < static_cast<int>(squares.size()); ++i) {
    const auto& s = squares[i];
    index[{s.top, s.bottom, s.left, s.right}] = i;
  }
  return FinCat(c.morphism_count(), arrows, ids, [&](int g, int f) {
    const auto& sf = squares[f];
    const auto& sg = squares[g];
    auto it = index.find({sf.top, sg.bottom, c.compose(sg.left, sf.left), c.compose(sg.right, sf.right)});
    return it == index.end() ? -1 : it->second;
  });
}

// ---------------------------------------------------------------------------

void check_functor_shape(const Functor& f) {
  if (!f.source || !f.target) throw StructuralError("functor without source or target");
  if (static_cast<int>(f.object_map.size()) != f.source->object_count() ||
      static_cast<int>(f.morphism_map.size()) != f.source->morphism_count())
    throw StructuralError("functor map sizes do not match the source category");
  for (int y : f.object_map)
    if (y < 0 || y >= f.target->object_count()) throw StructuralError("functor object image out of range");
  for (int g : f.morphism_map)
    if (g < 0 || g >= f.target->morphism_count()) throw StructuralError("functor morphism image out of range");
}

Report check_functor(const Functor& f) {
  check_functor_shape(f);
  Report r;
  const FinCat& s = *f.source;
  const FinCat& t = *f.target;
  for (int m = 0; m < s.morphism_count(); ++m) {
    const int im = f.on_morphism(m);
    if (t.dom(im) != f.on_object(s.dom(m)) || t.cod(im) != f.on_object(s.cod(m)))
      r.add("functor-endpoints", s.morphism_name(m) + " -> " + t.morphism_name(im));
  }
  for (int x = 0; x < s.object_count(); ++x)
    if (f.on_morphism(s.identity(x)) != t.identity(f.on_object(x)))
      r.add("functor-identity", s.object_name(x));
  if (!r.ok()) return r;
  for (int a = 0; a < s.morphism_count(); ++a)
    for (int b : s.out(s.cod(a))) {
      const int ba = s.compose(b, a);
      if (ba < 0) continue;
      if (f.on_morphism(ba) != t.compose(f.on_morphism(b), f.on_morphism(a)))
        r.add("functor-composition", s.morphism_name(b) + " . " + s.morphism_name(a));
    }
  return r;
}

Functor identity_functor(const CatRef& c) {
  Functor f{c, c, {}, {}};
  f.object_map.resize(c->object_count());
  f.morphism_map.resize(c->morphism_count());
  std::iota(f.object_map.begin(), f.object_map.end(), 0);
  std::iota(f.morphism_map.begin(), f.morphism_map.end(), 0);
  return f;
}

Functor constant_functor(const CatRef& source, const CatRef& target, int object) {
  return Functor{source, target, std::vector<int>(source->object_count(), object),
                 std::vector<int>(source->morphism_count(), target->identity(object))};
}

Functor compose_functors(const Functor& second, const Functor& first) {
  if (!same_category(first.target, second.source)) throw StructuralError("compose_functors: endpoint mismatch");
  Functor r{first.source, second.target, {}, {}};
  for (int y : first.object_map) r.object_map.push_back(second.on_object(y));
  for (int g : first.morphism_map) r.morphism_map.push_back(second.on_morphism(g));
  return r;
}

bool same_functor(const Functor& a, const Functor& b) {
  return same_category(a.source, b.source) && same_category(a.target, b.target) &&
         a.object_map == b.object_map && a.morphism_map == b.morphism_map;
}

bool is_isomorphism(const Functor& f) {
  if (!check_functor(f).ok()) return false;
  if (f.source->object_count() != f.target->object_count() ||
      f.source->morphism_count() != f.target->morphism_count())
    return false;
  std::vector<bool> hit_o(f.target->object_count()), hit_m(f.target->morphism_count());
  for (int y : f.object_map) {
    if (hit_o[y]) return false;
    hit_o[y] = true;
  }
  for (int g : f.morphism_map) {
    if (hit_m[g]) return false;
    hit_m[g] = true;
  }
  return true;
}

Functor opposite_functor(const Functor& f, const CatRef& source_op, const CatRef& target_op) {
  return Functor{source_op, target_op, f.object_map, f.morphism_map};
}

std::vector<Functor> enumerate_functors(const CatRef& source, const CatRef& target, std::size_t limit) {
  const FinCat& s = *source;
  const FinCat& t = *target;
  std::vector<Functor> result;
  std::vector<int> omap(s.object_count(), -1), mmap(s.morphism_count(), -1);

  // Non-identity morphisms in index order; a composite is checked as soon as
  // its last factor is assigned.
  std::vector<int> order;
  for (int f = 0; f < s.morphism_count(); ++f)
    if (!s.is_identity(f)) order.push_back(f);

  auto consistent = [&](int f) {
    for (int g = 0; g < s.morphism_count(); ++g) {
      if (mmap[g] < 0) continue;
      if (s.composable(g, f)) {
        const int h = s.compose(g, f);
        if (h >= 0 && mmap[h] >= 0 && t.compose(mmap[g], mmap[f]) != mmap[h]) return false;
      }
      if (s.composable(f, g)) {
        const int h = s.compose(f, g);
        if (h >= 0 && mmap[h] >= 0 && t.compose(mmap[f], mmap[g]) != mmap[h]) return false;
      }
    }
    // f may itself be a composite of assigned morphisms.
    for (int a = 0; a < s.morphism_count(); ++a) {
      if (mmap[a] < 0) continue;
      for (int b : s.out(s.cod(a)))
        if (mmap[b] >= 0 && s.compose(b, a) == f && t.compose(mmap[b], mmap[a]) != mmap[f]) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> assign_morphisms = [&](std::size_t i) {
    if (result.size() >= limit) return;
    if (i == order.size()) {
      result.push_back(Functor{source, target, omap, mmap});
      return;
    }
    const int f = order[i];
    for (int g : t.hom(omap[s.dom(f)], omap[s.cod(f)])) {
      mmap[f] = g;
      if (consistent(f)) assign_morphisms(i + 1);
      mmap[f] = -1;
    }
  };
  std::function<void(int)> assign_objects = [&](int x) {
    if (result.size() >= limit) return;
    if (x == s.object_count()) {
      for (int y = 0; y < s.object_count(); ++y) mmap[s.identity(y)] = t.identity(omap[y]);
      assign_morphisms(0);
      for (int y = 0; y < s.object_count(); ++y) mmap[s.identity(y)] = -1;
      return;
    }
    for (int y = 0; y < t.object_count(); ++y) {
      omap[x] = y;
      assign_objects(x + 1);
    }
    omap[x] = -1;
  };
  if (t.object_count() > 0 || s.object_count() == 0) assign_objects(0);
  return result;
}

Report check_nat_trans(const NatTrans& t) {
  Report r = check_functor(t.source);
  r.append(check_functor(t.target));
  if (!same_category(t.source.source, t.target.source) || !same_category(t.source.target, t.target.target))
    throw StructuralError("natural transformation between functors with different endpoints");
  const FinCat& s = *t.source.source;
  const FinCat& c = *t.source.target;
  if (static_cast<int>(t.components.size()) != s.object_count())
    throw StructuralError("natural transformation component count mismatch");
  for (int x = 0; x < s.object_count(); ++x) {
    const int k = t.components[x];
    if (k < 0 || k >= c.morphism_count()) throw StructuralError("component index out of range");
    if (c.dom(k) != t.source.on_object(x) || c.cod(k) != t.target.on_object(x))
      r.add("component-endpoints", s.object_name(x));
  }
  if (!r.ok()) return r;
  for (int f = 0; f < s.morphism_count(); ++f) {
    const int lhs = c.compose(t.target.on_morphism(f), t.components[s.dom(f)]);
    const int rhs = c.compose(t.components[s.cod(f)], t.source.on_morphism(f));
    if (lhs != rhs) r.add("naturality", s.morphism_name(f));
  }
  return r;
}

// ---------------------------------------------------------------------------

CommaCategory comma_category(const Functor& f, const Functor& g) {
  if (!same_category(f.target, g.target)) throw StructuralError("comma_category: functors have different targets");
  const FinCat& x = *f.source;
  const FinCat& y = *g.source;
  const FinCat& z = *f.target;
  CommaCategory out;
  std::map<std::array<int, 3>, int> object_index;
  std::vector<std::string> onames;
  for (int a = 0; a < x.object_count(); ++a)
    for (int b = 0; b < y.object_count(); ++b)
      for (int u : z.hom(f.on_object(a), g.on_object(b))) {
        object_index[{a, u, b}] = static_cast<int>(out.objects.size());
        out.objects.push_back({a, u, b});
        onames.push_back("(" + x.object_name(a) + "," + z.morphism_name(u) + "," + y.object_name(b) + ")");
      }
  std::vector<Arrow> arrows;
  std::vector<int> ids(out.objects.size(), -1);
  std::map<std::array<int, 4>, int> morphism_index;  // (source object, target object, a, b)
  for (int s = 0; s < static_cast<int>(out.objects.size()); ++s)
    for (int t = 0; t < static_cast<int>(out.objects.size()); ++t) {
      const auto& os = out.objects[s];
      const auto& ot = out.objects[t];
      for (int a : x.hom(os.x, ot.x))
        for (int b : y.hom(os.y, ot.y))
          if (z.compose(ot.u, f.on_morphism(a)) == z.compose(g.on_morphism(b), os.u)) {
            if (s == t && x.is_identity(a) && y.is_identity(b)) ids[s] = static_cast<int>(arrows.size());
            morphism_index[{s, t, a, b}] = static_cast<int>(arrows.size());
            arrows.push_back({s, t});
            out.morphisms.push_back({a, b});
          }
    }
  auto composite = [&](int h2, int h1) {
    auto it = morphism_index.find({arrows[h1].dom, arrows[h2].cod, x.compose(out.morphisms[h2].a, out.morphisms[h1].a),
                                   y.compose(out.morphisms[h2].b, out.morphisms[h1].b)});
    return it == morphism_index.end() ? -1 : it->second;
  };
  std::vector<std::string> mnames;
  for (int h = 0; h < static_cast<int>(arrows.size()); ++h)
    mnames.push_back(ids[arrows[h].dom] == h ? "id_" + onames[arrows[h].dom]
                                              : "(" + x.morphism_name(out.morphisms[h].a) + "," +
                                                    y.morphism_name(out.morphisms[h].b) + ")@" +
                                                    std::to_string(h));
  out.category = share(FinCat(static_cast<int>(out.objects.size()), arrows, ids, composite, onames, mnames));

  out.to_source = Functor{out.category, f.source, {}, {}};
  out.to_target = Functor{out.category, g.source, {}, {}};
  for (const auto& o : out.objects) {
    out.to_source.object_map.push_back(o.x);
    out.to_target.object_map.push_back(o.y);
  }
  for (const auto& m : out.morphisms) {
    out.to_source.morphism_map.push_back(m.a);
    out.to_target.morphism_map.push_back(m.b);
  }
  std::vector<int> components;
  for (const auto& o : out.objects) components.push_back(o.u);
  out.cell = NatTrans{compose_functors(f, out.to_source), compose_functors(g, out.to_target), components};
  return out;
}

// ---------------------------------------------------------------------------

EquivalenceResult equivalence_check(const Functor& f, std::size_t search_budget) {
  EquivalenceResult res;
  if (!check_functor(f).ok()) {
    res.status = Verdict::Fails;
    res.reason = "not a functor";
    return res;
  }
  const FinCat& s = *f.source;
  const FinCat& t = *f.target;
  for (int a = 0; a < s.object_count(); ++a)
    for (int b = 0; b < s.object_count(); ++b) {
      auto src = s.hom(a, b);
      auto dst = t.hom(f.on_object(a), f.on_object(b));
      std::vector<int> hits(dst.size(), 0);
      for (int m : src) ++hits[t.hom_position(f.on_morphism(m))];
      for (std::size_t i = 0; i < dst.size(); ++i) {
        if (hits[i] > 1) {
          res.status = Verdict::Fails;
          res.reason = "not faithful on (" + s.object_name(a) + "," + s.object_name(b) + ")";
          return res;
        }
        if (hits[i] == 0) {
          res.status = Verdict::Fails;
          res.reason = "not full on (" + s.object_name(a) + "," + s.object_name(b) + ")";
          return res;
        }
      }
    }
  std::size_t spent = 0;
  for (int z = 0; z < t.object_count(); ++z) {
    bool found = false;
    for (int x = 0; x < s.object_count() && !found; ++x)
      for (int u : t.hom(f.on_object(x), z)) {
        if (spent++ >= search_budget) {
          res.status = Verdict::Indeterminate;
          res.reason = "search budget exhausted at object " + t.object_name(z);
          return res;
        }
        if (t.is_iso(u)) {
          res.essential_witnesses.push_back({x, u});
          found = true;
          break;
        }
      }
    if (!found) {
      res.status = Verdict::Fails;
      res.reason = "object " + t.object_name(z) + " is not isomorphic to an image object";
      return res;
    }
  }
  res.status = Verdict::Holds;
  return res;
}

DuplicatedObject duplicate_object(const FinCat& c, int x) {
  const int n = c.object_count();
  auto collapse = [&](int o) { return o == n ? x : o; };
  struct Entry {
    int a, b, f;
  };
  std::vector<Entry> entries;
  for (int f = 0; f < c.morphism_count(); ++f) entries.push_back({c.dom(f), c.cod(f), f});
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      if (a < n && b < n) continue;
      for (int f : c.hom(collapse(a), collapse(b))) entries.push_back({a, b, f});
    }
  std::map<std::array<int, 3>, int> index;
  std::vector<Arrow> arrows;
  for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
    index[{entries[i].a, entries[i].b, entries[i].f}] = i;
    arrows.push_back({entries[i].a, entries[i].b});
  }
  std::vector<int> ids;
  for (int o = 0; o <= n; ++o) ids.push_back(index.at({o, o, c.identity(collapse(o))}));
  auto onames = c.object_names();
  onames.push_back(c.object_name(x) + "'");
  std::vector<std::string> mnames = c.morphism_names();
  for (std::size_t i = c.morphism_count(); i < entries.size(); ++i)
    mnames.push_back(static_cast<int>(i) == ids[n] ? "id_" + onames[n]
                                                    : c.morphism_name(entries[i].f) + "'" + std::to_string(i));
  DuplicatedObject out;
  out.category = FinCat(n + 1, arrows, ids, [&](int g, int f) {
    const int h = c.compose(entries[g].f, entries[f].f);
    return h < 0 ? -1 : index.at({entries[f].a, entries[g].b, h});
  }, onames, mnames);
  for (int o = 0; o <= n; ++o) out.collapse_objects.push_back(collapse(o));
  for (const auto& e : entries) out.collapse_morphisms.push_back(e.f);
  return out;
}

}  // namespace catkit
