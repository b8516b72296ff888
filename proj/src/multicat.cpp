#include "catkit/multicat.hpp"

#include <algorithm>
#include <set>

namespace catkit {

// ---------------------------------------------------------------------------
// List monad

std::vector<List> lists_up_to(int n, int max_length) {
  std::vector<List> out{{}};
  std::vector<List> layer{{}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<List> next;
    for (const auto& l : layer)
      for (int x = 0; x < n; ++x) {
        List e = l;
        e.push_back(x);
        next.push_back(std::move(e));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

namespace {

using List2 = std::vector<List>;
using List3 = std::vector<List2>;

List concat(const List2& ll) {
  List out;
  for (const auto& l : ll) out.insert(out.end(), l.begin(), l.end());
  return out;
}

List2 concat2(const List3& lll) {
  List2 out;
  for (const auto& ll : lll) out.insert(out.end(), ll.begin(), ll.end());
  return out;
}

/// Lists of elements drawn from `items` with outer length and total weight bounded.
template <class T, class W>
std::vector<std::vector<T>> bounded_lists(const std::vector<T>& items, W weight, int max_outer, int max_weight) {
  std::vector<std::vector<T>> out;
  std::vector<T> cur;
  std::function<void(int)> go = [&](int used) {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_outer) return;
    for (const auto& it : items) {
      const int w = weight(it);
      if (used + w > max_weight) continue;
      cur.push_back(it);
      go(used + w);
      cur.pop_back();
    }
  };
  go(0);
  return out;
}

std::string show(const List& l) {
  std::string s = "[";
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
  return s + "]";
}

std::string show(const List2& ll) {
  std::string s = "[";
  for (std::size_t i = 0; i < ll.size(); ++i) s += (i ? "," : "") + show(ll[i]);
  return s + "]";
}

}  // namespace

Report check_list_monad(int n, int max_length) {
  Report r;
  const auto lists = lists_up_to(n, max_length);
  for (const auto& l : lists) {
    // mu . eta_T and mu . T eta
    if (concat(List2{l}) != l) r.add("left-unit", show(l));
    List2 singletons;
    for (int x : l) singletons.push_back({x});
    if (concat(singletons) != l) r.add("right-unit", show(l));
  }
  auto size1 = [](const List& l) { return static_cast<int>(l.size()); };
  const auto t2 = bounded_lists(lists, size1, max_length, max_length);
  auto size2 = [](const List2& ll) {
    int s = 0;
    for (const auto& l : ll) s += static_cast<int>(l.size());
    return s;
  };
  // Inner elements of T^3 are nonempty-or-empty T^2 values; bound both sizes.
  const auto t3 = bounded_lists(t2, size2, 2, max_length);
  for (const auto& lll : t3) {
    List2 inner;
    for (const auto& ll : lll) inner.push_back(concat(ll));
    if (concat(concat2(lll)) != concat(inner)) r.add("associativity", "outer size " + std::to_string(lll.size()));
  }
  return r;
}

Report check_list_cartesian(const std::vector<int>& f, int b_size, int max_length) {
  Report r;
  const int a_size = static_cast<int>(f.size());
  for (int v : f)
    if (v < 0 || v >= b_size) throw StructuralError("list_cartesian: function value out of range");
  auto tf = [&](const List& l) {
    List out;
    for (int x : l) out.push_back(f[x]);
    return out;
  };
  const auto ta = lists_up_to(a_size, max_length);

  // eta square: A -> TA x_{TB} B, a |-> ([a], f a)
  std::set<std::pair<List, int>> image;
  for (int a = 0; a < a_size; ++a)
    if (!image.insert({List{a}, f[a]}).second) r.add("eta-pullback", "not injective at " + std::to_string(a));
  for (const auto& l : ta)
    for (int b = 0; b < b_size; ++b)
      if (tf(l) == List{b} && !image.count({l, b})) r.add("eta-pullback", "missed " + show(l));

  // mu square: T^2 A -> TA x_{TB} T^2 B, AA |-> (mu AA, T^2 f AA)
  auto size1 = [](const List& l) { return static_cast<int>(l.size()); };
  const auto t2a = bounded_lists(ta, size1, max_length, max_length);
  const auto tb = lists_up_to(b_size, max_length);
  const auto t2b = bounded_lists(tb, size1, max_length, max_length);
  std::set<std::pair<List, List2>> mu_image;
  for (const auto& aa : t2a) {
    List2 mapped;
    for (const auto& l : aa) mapped.push_back(tf(l));
    if (!mu_image.insert({concat(aa), mapped}).second) r.add("mu-pullback", "not injective at " + show(aa));
  }
  for (const auto& l : ta)
    for (const auto& bb : t2b)
      if (tf(l) == concat(bb) && !mu_image.count({l, bb})) r.add("mu-pullback", "missed " + show(l) + " over " + show(bb));
  return r;
}

// ---------------------------------------------------------------------------
// Multicategory

Multicategory::Multicategory(int objects, std::vector<MultiArrow> arrows, std::vector<int> identities,
                             const CompositeFn& composite, int arity_cap, bool truncated,
                             std::vector<std::string> object_names, std::vector<std::string> arrow_names,
                             RangeFn range)
    : objects_(objects),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      cap_(arity_cap),
      truncated_(truncated),
      range_(std::move(range)),
      object_names_(std::move(object_names)),
      arrow_names_(std::move(arrow_names)) {
  if (objects_ < 0 || cap_ < 0) throw StructuralError("negative object count or arity cap");
  for (const auto& a : arrows_) {
    if (a.target < 0 || a.target >= objects_) throw StructuralError("multiarrow target out of range");
    for (int x : a.source)
      if (x < 0 || x >= objects_) throw StructuralError("multiarrow source object out of range");
    if (truncated_ && !in_range(a.source)) throw StructuralError("multiarrow source outside the truncation");
  }
  if (static_cast<int>(identities_.size()) != objects_) throw StructuralError("identity table size mismatch");
  for (int x = 0; x < objects_; ++x) {
    const int i = identities_[x];
    if (i < 0 || i >= arrow_count() || arrows_[i].source != List{x} || arrows_[i].target != x)
      throw StructuralError("identity of object " + std::to_string(x) + " is not a unary endo-arrow");
  }
  if (object_names_.empty())
    for (int x = 0; x < objects_; ++x) object_names_.push_back("o" + std::to_string(x));
  if (arrow_names_.empty())
    for (int a = 0; a < arrow_count(); ++a)
      arrow_names_.push_back(is_identity(a) ? "id_" + object_names_[arrows_[a].target] : "m" + std::to_string(a));
  if (static_cast<int>(object_names_.size()) != objects_ || static_cast<int>(arrow_names_.size()) != arrow_count())
    throw StructuralError("multicategory name table size mismatch");

  into_.assign(objects_, {});
  for (int a = 0; a < arrow_count(); ++a) {
    homs_[{arrows_[a].source, arrows_[a].target}].push_back(a);
    into_[arrows_[a].target].push_back(a);
  }
  for (int f = 0; f < arrow_count(); ++f)
    for_each_tuple(*this, arrows_[f].source, [&](const std::vector<int>& gs) {
      const int h = composite(f, gs);
      if (h < -1 || h >= arrow_count()) throw StructuralError("composite index out of range");
      if (h < 0) return;
      std::vector<int> key{f};
      key.insert(key.end(), gs.begin(), gs.end());
      comp_.emplace(std::move(key), h);
    });
}

bool Multicategory::in_range(const List& source) const {
  if (!truncated_) return true;
  if (static_cast<int>(source.size()) > cap_) return false;
  return !range_ || range_(source);
}

int Multicategory::compose(int f, const std::vector<int>& gs) const {
  std::vector<int> key{f};
  key.insert(key.end(), gs.begin(), gs.end());
  auto it = comp_.find(key);
  return it == comp_.end() ? -1 : it->second;
}

const std::vector<int>& Multicategory::hom(const List& source, int target) const {
  static const std::vector<int> empty;
  auto it = homs_.find({source, target});
  return it == homs_.end() ? empty : it->second;
}

std::optional<int> Multicategory::find_object(const std::string& name) const {
  auto it = std::find(object_names_.begin(), object_names_.end(), name);
  if (it == object_names_.end()) return std::nullopt;
  return static_cast<int>(it - object_names_.begin());
}

std::optional<int> Multicategory::find_arrow(const std::string& name) const {
  auto it = std::find(arrow_names_.begin(), arrow_names_.end(), name);
  if (it == arrow_names_.end()) return std::nullopt;
  return static_cast<int>(it - arrow_names_.begin());
}

std::string Multicategory::list_name(const List& objects) const {
  std::string s = "(";
  for (std::size_t i = 0; i < objects.size(); ++i) s += (i ? "," : "") + object_names_[objects[i]];
  return s + ")";
}

Multicategory Multicategory::with_composite(int f, const std::vector<int>& gs, int h) const {
  Multicategory copy = *this;
  std::vector<int> key{f};
  key.insert(key.end(), gs.begin(), gs.end());
  if (!copy.comp_.count(key)) throw StructuralError("with_composite: no such composition entry");
  copy.comp_[key] = h;
  return copy;
}

void for_each_tuple(const Multicategory& m, const List& targets,
                    const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur;
  List source;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == targets.size()) {
      if (m.in_range(source)) visit(cur);
      return;
    }
    for (int g : m.into(targets[i])) {
      const List& s = m.source(g);
      if (m.truncated() && static_cast<int>(source.size() + s.size()) > m.arity_cap()) continue;
      cur.push_back(g);
      source.insert(source.end(), s.begin(), s.end());
      go(i + 1);
      source.resize(source.size() - s.size());
      cur.pop_back();
    }
  };
  go(0);
}

int MulticatBuilder::add_object(std::string name) {
  const int x = static_cast<int>(object_names_.size());
  identities_.push_back(static_cast<int>(arrows_.size()));
  arrows_.push_back({{x}, x});
  arrow_names_.push_back("id_" + name);
  object_names_.push_back(std::move(name));
  return x;
}

int MulticatBuilder::add_arrow(List source, int target, std::string name) {
  arrows_.push_back({std::move(source), target});
  arrow_names_.push_back(std::move(name));
  return static_cast<int>(arrows_.size()) - 1;
}

void MulticatBuilder::set_composite(int f, std::vector<int> gs, int h) {
  gs.insert(gs.begin(), f);
  entries_[gs] = h;
}

Multicategory MulticatBuilder::build(int arity_cap, bool truncated) const {
  const auto arrows = arrows_;
  const auto ids = identities_;
  auto is_id = [&](int a) { return arrows[a].source.size() == 1 && ids[arrows[a].target] == a; };
  auto composite = [&](int f, const std::vector<int>& gs) {
    std::vector<int> key{f};
    key.insert(key.end(), gs.begin(), gs.end());
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
    if (is_id(f)) return gs[0];
    if (std::all_of(gs.begin(), gs.end(), is_id)) return f;
    return -1;
  };
  return Multicategory(static_cast<int>(object_names_.size()), arrows_, identities_, composite, arity_cap, truncated,
                       object_names_, arrow_names_);
}

Report check_multicategory(const Multicategory& m) {
  Report r;
  const int n = m.arrow_count();
  auto name = [&](int f, const std::vector<int>& gs) {
    std::string s = m.arrow_name(f) + "(";
    for (std::size_t i = 0; i < gs.size(); ++i) s += (i ? "," : "") + m.arrow_name(gs[i]);
    return s + ")";
  };
  for (int f = 0; f < n; ++f) {
    if (m.compose(m.identity(m.target(f)), {f}) != f) r.add("left-unit", m.arrow_name(f));
    std::vector<int> ids;
    for (int x : m.source(f)) ids.push_back(m.identity(x));
    if (m.compose(f, ids) != f) r.add("right-unit", m.arrow_name(f));
  }
  for (int f = 0; f < n; ++f)
    for_each_tuple(m, m.source(f), [&](const std::vector<int>& gs) {
      const int h = m.compose(f, gs);
      List source;
      for (int g : gs) source.insert(source.end(), m.source(g).begin(), m.source(g).end());
      if (h < 0) {
        r.add("composite-defined", name(f, gs));
        return;
      }
      if (m.source(h) != source || m.target(h) != m.target(f)) {
        r.add("composite-endpoints", name(f, gs));
        return;
      }
      // comp(comp(f; gs); ks) = comp(f; comp(g_1; ks_1), ..., comp(g_n; ks_n))
      for_each_tuple(m, source, [&](const std::vector<int>& ks) {
        const int lhs = m.compose(h, ks);
        std::vector<int> inner;
        std::size_t at = 0;
        for (int g : gs) {
          std::vector<int> part(ks.begin() + at, ks.begin() + at + m.source(g).size());
          at += m.source(g).size();
          const int c = m.compose(g, part);
          if (c < 0) return;
          inner.push_back(c);
        }
        const int rhs = m.compose(f, inner);
        if (lhs < 0 || rhs < 0) return;
        if (lhs != rhs) {
          std::string s = name(f, gs) + " with (";
          for (std::size_t i = 0; i < ks.size(); ++i) s += (i ? "," : "") + m.arrow_name(ks[i]);
          r.add("associativity", s + ")");
        }
      });
    });
  return r;
}

Report check_multicat_morphism(const MulticatMorphism& f) {
  const Multicategory& s = *f.source;
  const Multicategory& t = *f.target;
  if (static_cast<int>(f.object_map.size()) != s.object_count() ||
      static_cast<int>(f.arrow_map.size()) != s.arrow_count())
    throw StructuralError("multicategory morphism maps have the wrong size");
  for (int x : f.object_map)
    if (x < 0 || x >= t.object_count()) throw StructuralError("object image out of range");
  for (int a : f.arrow_map)
    if (a < 0 || a >= t.arrow_count()) throw StructuralError("arrow image out of range");
  Report r;
  for (int a = 0; a < s.arrow_count(); ++a) {
    List mapped;
    for (int x : s.source(a)) mapped.push_back(f.object_map[x]);
    const int b = f.arrow_map[a];
    if (t.source(b) != mapped || t.target(b) != f.object_map[s.target(a)]) r.add("morphism-endpoints", s.arrow_name(a));
  }
  for (int x = 0; x < s.object_count(); ++x)
    if (f.arrow_map[s.identity(x)] != t.identity(f.object_map[x])) r.add("morphism-identity", s.object_name(x));
  if (!r.ok()) return r;
  for (const auto& [key, h] : s.composites()) {
    std::vector<int> gs;
    for (std::size_t i = 1; i < key.size(); ++i) gs.push_back(f.arrow_map[key[i]]);
    const int image = t.compose(f.arrow_map[key[0]], gs);
    if (image >= 0 && image != f.arrow_map[h]) r.add("morphism-composition", s.arrow_name(key[0]));
    if (image < 0) {
      List source;
      for (int g : gs) source.insert(source.end(), t.source(g).begin(), t.source(g).end());
      if (t.in_range(source)) r.add("morphism-composition", s.arrow_name(key[0]) + " (missing in target)");
    }
  }
  return r;
}

bool same_morphism(const MulticatMorphism& a, const MulticatMorphism& b) {
  return a.source == b.source && a.target == b.target && a.object_map == b.object_map && a.arrow_map == b.arrow_map;
}

Multicategory terminal_multicategory(int arity_cap) {
  std::vector<MultiArrow> arrows;
  std::vector<std::string> names;
  // Arrow of arity n has index n; the identity is arity 1.
  for (int k = 0; k <= arity_cap; ++k) {
    arrows.push_back({List(k, 0), 0});
    names.push_back(k == 1 ? "id_*" : "t" + std::to_string(k));
  }
  if (arity_cap < 1) throw StructuralError("terminal multicategory needs arity cap at least 1");
  return Multicategory(
      1, arrows, {1},
      [](int, const std::vector<int>& gs) {
        int total = 0;
        for (int g : gs) total += g;
        return total;
      },
      arity_cap, true, {"*"}, names);
}

Multicategory underlying_multicat(const StrictMonCat& c, int max_length, int max_arrows) {
  const FinCat& base = c.category();
  const int n = base.object_count();
  std::vector<MultiArrow> arrows;
  std::vector<std::string> names;
  std::map<std::pair<List, int>, int> index;  // (source, morphism) -> arrow
  for (const auto& l : lists_up_to(n, max_length)) {
    const int t = c.tensor_all(l);
    if (t < 0) continue;
    std::string lname = "(";
    for (std::size_t i = 0; i < l.size(); ++i) lname += (i ? "," : "") + base.object_name(l[i]);
    lname += ")";
    for (int y = 0; y < n; ++y)
      for (int phi : base.hom(t, y)) {
        index[{l, phi}] = static_cast<int>(arrows.size());
        arrows.push_back({l, y});
        names.push_back(base.morphism_name(phi) + "@" + lname);
        if (static_cast<int>(arrows.size()) > max_arrows)
          throw BoundExceeded("underlying multicategory exceeds " + std::to_string(max_arrows) + " arrows");
      }
  }
  std::vector<int> morphism_of(arrows.size());
  for (const auto& [key, a] : index) morphism_of[a] = key.second;
  std::vector<int> ids;
  for (int x = 0; x < n; ++x) ids.push_back(index.at({List{x}, base.identity(x)}));
  auto composite = [&](int f, const std::vector<int>& gs) {
    std::vector<int> psi;
    List source;
    for (int g : gs) {
      psi.push_back(morphism_of[g]);
      source.insert(source.end(), arrows[g].source.begin(), arrows[g].source.end());
    }
    const int tensor = c.tensor_all_mor(psi);
    if (tensor < 0) return -1;
    auto it = index.find({source, base.compose(morphism_of[f], tensor)});
    return it == index.end() ? -1 : it->second;
  };
  auto range = [c](const List& l) { return c.tensor_all(l) >= 0; };
  return Multicategory(n, arrows, ids, composite, max_length, true, base.object_names(), names, range);
}

std::optional<int> underlying_arrow(const StrictMonCat& c, const Multicategory& rc, const List& source, int morphism) {
  // Arrows with a fixed source are listed by target, then by morphism index.
  const FinCat& base = c.category();
  const int t = c.tensor_all(source);
  if (t < 0 || base.dom(morphism) != t) return std::nullopt;
  const auto& arrows = rc.hom(source, base.cod(morphism));
  const int pos = base.hom_position(morphism);
  if (pos >= static_cast<int>(arrows.size())) return std::nullopt;
  return arrows[pos];
}

std::vector<int> linear_core_arrows(const Multicategory& m) {
  std::vector<int> out;
  for (int a = 0; a < m.arrow_count(); ++a)
    if (m.arity(a) == 1) out.push_back(a);
  return out;
}

FinCat linear_core(const Multicategory& m) {
  const auto unary = linear_core_arrows(m);
  std::vector<int> pos(m.arrow_count(), -1);
  std::vector<Arrow> arrows;
  std::vector<std::string> names;
  for (int i = 0; i < static_cast<int>(unary.size()); ++i) {
    pos[unary[i]] = i;
    arrows.push_back({m.source(unary[i])[0], m.target(unary[i])});
    names.push_back(m.arrow_name(unary[i]));
  }
  std::vector<int> ids;
  for (int x = 0; x < m.object_count(); ++x) ids.push_back(pos[m.identity(x)]);
  return FinCat(m.object_count(), arrows, ids, [&](int g, int f) {
    const int h = m.compose(unary[g], {unary[f]});
    return h < 0 ? -1 : pos[h];
  }, m.object_names(), names);
}

// ---------------------------------------------------------------------------
// List bimodule

namespace {

std::vector<int> positions_in_hom(const Multicategory& m) {
  std::vector<int> pos(m.arrow_count());
  for (int a = 0; a < m.arrow_count(); ++a) {
    const auto& h = m.hom(m.source(a), m.target(a));
    pos[a] = static_cast<int>(std::find(h.begin(), h.end(), a) - h.begin());
  }
  return pos;
}

List concat_sources(const Multicategory& m, const std::vector<int>& gs) {
  List out;
  for (int g : gs) out.insert(out.end(), m.source(g).begin(), m.source(g).end());
  return out;
}

}  // namespace

int ListBimodule::list_index(const List& objects) const {
  const int n = core->object_count();
  int offset = 0, power = 1;
  for (std::size_t k = 0; k < objects.size(); ++k) {
    offset += power;
    power *= n;
  }
  int value = 0;
  for (int x : objects) value = value * n + x;
  return offset + value;
}

ListBimodule to_prof_monad(const Multicategory& m) {
  ListBimodule h;
  h.cap = m.arity_cap();
  h.truncated = m.truncated();
  for (int a = 0; a < m.arrow_count(); ++a)
    if (m.arity(a) > h.cap) throw BoundExceeded("arrow " + m.arrow_name(a) + " exceeds the arity cap");
  h.core = share(linear_core(m));
  const FinCat& core = *h.core;
  const auto core_arrows = linear_core_arrows(m);
  const int n = m.object_count();
  h.list_objects = lists_up_to(n, h.cap);
  for (const auto& l : h.list_objects) h.in_range.push_back(m.in_range(l));

  // T(core): a morphism l' -> l is a tuple of core morphisms, slot by slot.
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> tuples;
  std::vector<std::string> names;
  std::map<std::vector<int>, int> tuple_index;
  const int lists = static_cast<int>(h.list_objects.size());
  for (int s = 0; s < lists; ++s)
    for (int t = 0; t < lists; ++t) {
      const List& ls = h.list_objects[s];
      const List& lt = h.list_objects[t];
      if (ls.size() != lt.size()) continue;
      std::vector<int> cur;
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == ls.size()) {
          std::string name = "(";
          for (std::size_t k = 0; k < cur.size(); ++k) name += (k ? "," : "") + core.morphism_name(cur[k]);
          tuple_index[cur] = static_cast<int>(arrows.size());
          arrows.push_back({s, t});
          tuples.push_back(cur);
          names.push_back(name + ")");
          return;
        }
        for (int u : core.hom(ls[i], lt[i])) {
          cur.push_back(u);
          go(i + 1);
          cur.pop_back();
        }
      };
      go(0);
    }
  std::vector<int> ids;
  std::vector<std::string> list_names;
  for (const auto& l : h.list_objects) {
    std::vector<int> t;
    for (int x : l) t.push_back(core.identity(x));
    ids.push_back(tuple_index.at(t));
    list_names.push_back(m.list_name(l));
  }
  h.lists = share(FinCat(
      lists, arrows, ids,
      [&](int g, int f) {
        std::vector<int> t(tuples[f].size());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = core.compose(tuples[g][i], tuples[f][i]);
        return tuple_index.at(t);
      },
      list_names, names));

  const auto pos = positions_in_hom(m);
  std::vector<int> sizes(static_cast<std::size_t>(lists) * n, 0);
  std::vector<std::vector<std::string>> elem_names(sizes.size());
  for (int li = 0; li < lists; ++li)
    for (int y = 0; y < n; ++y) {
      const auto& fiber = m.hom(h.list_objects[li], y);
      sizes[li * n + y] = static_cast<int>(fiber.size());
      for (int a : fiber) elem_names[li * n + y].push_back(m.arrow_name(a));
    }
  auto left = [&](int u, int y, int p) {
    const int f = m.hom(h.list_objects[h.lists->cod(u)], y)[p];
    std::vector<int> gs;
    for (int c : tuples[u]) gs.push_back(core_arrows[c]);
    const int r = m.compose(f, gs);
    return r < 0 ? -1 : pos[r];
  };
  auto right = [&](int x, int p, int v) {
    const int f = m.hom(h.list_objects[x], core.dom(v))[p];
    const int r = m.compose(core_arrows[v], {f});
    return r < 0 ? -1 : pos[r];
  };
  h.carrier = Profunctor(h.lists, h.core, sizes, left, right, elem_names);

  for (int u = 0; u < core.morphism_count(); ++u) h.unit.push_back(pos[core_arrows[u]]);
  for (const auto& [key, r] : m.composites()) {
    const int f = key[0];
    std::vector<int> k{h.list_index(m.source(f)) * n + m.target(f), pos[f]};
    for (std::size_t i = 1; i < key.size(); ++i) {
      k.push_back(h.list_index(m.source(key[i])) * n + m.target(key[i]));
      k.push_back(pos[key[i]]);
    }
    h.mult[k] = pos[r];
  }
  return h;
}

Multicategory read_back(const ListBimodule& h) {
  const FinCat& core = *h.core;
  const Profunctor& p = h.carrier;
  const int n = core.object_count();
  const int lists = static_cast<int>(h.list_objects.size());
  std::vector<MultiArrow> arrows;
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> where;  // arrow -> (fiber, position)
  std::vector<int> fiber_start(static_cast<std::size_t>(lists) * n);
  for (int li = 0; li < lists; ++li)
    for (int y = 0; y < n; ++y) {
      const int fiber = p.fiber_index(li, y);
      fiber_start[fiber] = static_cast<int>(arrows.size());
      for (int e = 0; e < p.fiber_size(li, y); ++e) {
        arrows.push_back({h.list_objects[li], y});
        names.push_back(p.element_name(li, y, e));
        where.push_back({fiber, e});
      }
    }
  std::vector<int> ids;
  for (int x = 0; x < n; ++x)
    ids.push_back(fiber_start[p.fiber_index(h.list_index({x}), x)] + h.unit[core.identity(x)]);
  auto composite = [&](int f, const std::vector<int>& gs) {
    std::vector<int> key{where[f].first, where[f].second};
    List source;
    for (int g : gs) {
      key.push_back(where[g].first);
      key.push_back(where[g].second);
      source.insert(source.end(), arrows[g].source.begin(), arrows[g].source.end());
    }
    if (static_cast<int>(source.size()) > h.cap) return -1;
    auto it = h.mult.find(key);
    if (it == h.mult.end()) return -1;
    return fiber_start[p.fiber_index(h.list_index(source), arrows[f].target)] + it->second;
  };
  Multicategory::RangeFn range;
  if (h.truncated) {
    const int objects = n;
    range = [flags = h.in_range, objects](const List& l) {
      int offset = 0, power = 1;
      for (std::size_t k = 0; k < l.size(); ++k) {
        offset += power;
        power *= objects;
      }
      int value = 0;
      for (int x : l) value = value * objects + x;
      return static_cast<bool>(flags[offset + value]);
    };
  }
  return Multicategory(n, arrows, ids, composite, h.cap, h.truncated, core.object_names(), names, range);
}

Report check_list_bimodule(const ListBimodule& h) {
  Report r;
  r.append(check_profunctor(h.carrier), "carrier: ");
  const FinCat& core = *h.core;
  const int n = core.object_count();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto hom = core.hom(x, y);
      const int size = h.carrier.fiber_size(h.list_index({x}), y);
      std::vector<bool> hit(size, false);
      bool ok = static_cast<int>(hom.size()) == size;
      for (int u : hom) {
        const int e = h.unit[u];
        if (e < 0 || e >= size || hit[e]) {
          ok = false;
          break;
        }
        hit[e] = true;
      }
      if (!ok) r.add("normality", core.object_name(x) + " -> " + core.object_name(y));
    }
  if (!r.ok()) return r;
  r.append(check_multicategory(read_back(h)), "monad: ");
  return r;
}

Roundtrip multicat_roundtrip(const Multicategory& m) {
  const ListBimodule h = to_prof_monad(m);
  Roundtrip out;
  out.recovered = read_back(h);
  const MultiRef src = share(m);
  const MultiRef dst = share(out.recovered);
  const auto pos = positions_in_hom(m);
  std::vector<int> objects(m.object_count());
  for (int x = 0; x < m.object_count(); ++x) objects[x] = x;
  std::vector<int> arrow_map(m.arrow_count());
  for (int a = 0; a < m.arrow_count(); ++a) arrow_map[a] = dst->hom(m.source(a), m.target(a))[pos[a]];
  out.bijection = {src, dst, objects, arrow_map};
  out.report = check_multicat_morphism(out.bijection);

  if (dst->arrow_count() != m.arrow_count() || dst->object_count() != m.object_count()) {
    out.report.add("bijection", "arrow or object counts differ");
    return out;
  }
  std::vector<int> inverse(m.arrow_count(), -1);
  for (int a = 0; a < m.arrow_count(); ++a) {
    if (inverse[arrow_map[a]] >= 0) out.report.add("bijection", "arrow map not injective at " + m.arrow_name(a));
    inverse[arrow_map[a]] = a;
  }
  for (const auto& [key, r] : dst->composites()) {
    std::vector<int> gs;
    for (std::size_t i = 1; i < key.size(); ++i) gs.push_back(inverse[key[i]]);
    if (m.compose(inverse[key[0]], gs) != inverse[r])
      out.report.add("inverse-composition", dst->arrow_name(key[0]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Universality

bool is_universal(const Multicategory& m, int pi, int bound) {
  if (m.truncated()) bound = std::min(bound, m.arity_cap());
  const int t = m.target(pi);
  const List& s = m.source(pi);
  for (const auto& ctx : lists_up_to(m.object_count(), bound)) {
    if (!m.in_range(ctx)) continue;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx[i] != t) continue;
      List expanded(ctx.begin(), ctx.begin() + i);
      expanded.insert(expanded.end(), s.begin(), s.end());
      expanded.insert(expanded.end(), ctx.begin() + i + 1, ctx.end());
      if (static_cast<int>(expanded.size()) > bound || !m.in_range(expanded)) continue;
      std::vector<int> plug;
      for (std::size_t k = 0; k < ctx.size(); ++k) plug.push_back(k == i ? pi : m.identity(ctx[k]));
      for (int y = 0; y < m.object_count(); ++y) {
        const auto& from = m.hom(ctx, y);
        const auto& to = m.hom(expanded, y);
        if (from.size() != to.size()) return false;
        std::set<int> image;
        for (int h : from) {
          const int c = m.compose(h, plug);
          if (c < 0 || !image.insert(c).second) return false;
        }
      }
    }
  }
  return true;
}

std::map<List, std::vector<int>> universal_arrows(const Multicategory& m, int bound) {
  std::map<List, std::vector<int>> out;
  for (int a = 0; a < m.arrow_count(); ++a)
    if (m.arity(a) <= bound && is_universal(m, a, bound)) out[m.source(a)].push_back(a);
  return out;
}

Representability is_representable(const Multicategory& m, int bound) {
  if (m.truncated()) bound = std::min(bound, m.arity_cap());
  Representability r;
  const auto universal = universal_arrows(m, bound);
  std::vector<bool> is_univ(m.arrow_count(), false);
  for (const auto& [source, arrows] : universal)
    for (int a : arrows) is_univ[a] = true;
  for (const auto& l : lists_up_to(m.object_count(), bound)) {
    if (!m.in_range(l)) continue;
    auto it = universal.find(l);
    if (it == universal.end())
      r.missing.push_back(l);
    else
      r.chosen[l] = it->second.front();
  }
  for (int f = 0; f < m.arrow_count(); ++f) {
    if (!is_univ[f]) continue;
    for_each_tuple(m, m.source(f), [&](const std::vector<int>& gs) {
      if (!std::all_of(gs.begin(), gs.end(), [&](int g) { return is_univ[g]; })) return;
      if (static_cast<int>(concat_sources(m, gs).size()) > bound) return;
      const int h = m.compose(f, gs);
      if (h >= 0 && !is_univ[h]) {
        std::vector<int> key{f};
        key.insert(key.end(), gs.begin(), gs.end());
        r.closure_failures.push_back(std::move(key));
      }
    });
  }
  r.representable = r.missing.empty() && r.closure_failures.empty();
  return r;
}

}  // namespace catkit
