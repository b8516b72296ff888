#include "catkit/strict_monoidal.hpp"

namespace catkit {

StrictMonCat::StrictMonCat(CatRef base, int unit, std::vector<int> tensor_obj,
                           const std::function<int(int, int)>& tensor_mor, bool truncated)
    : base_(std::move(base)), unit_(unit), truncated_(truncated), tensor_obj_(std::move(tensor_obj)) {
  const FinCat& c = *base_;
  const int n = c.object_count();
  if (unit_ < 0 || unit_ >= n) throw StructuralError("unit object out of range");
  if (static_cast<int>(tensor_obj_.size()) != n * n) throw StructuralError("object tensor table has wrong size");
  for (int v : tensor_obj_) {
    if (v < -1 || v >= n) throw StructuralError("object tensor entry out of range");
    if (v == -1 && !truncated_) throw StructuralError("missing object tensor in an untruncated category");
  }
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int y = 0; y < n; ++y) {
      if (tensor(c.dom(f), y) < 0) continue;
      for (int g : c.out(y)) {
        if (tensor(c.cod(f), c.cod(g)) < 0) continue;
        const int h = tensor_mor(f, g);
        if (h < -1 || h >= c.morphism_count()) throw StructuralError("morphism tensor entry out of range");
        if (h >= 0) tensor_mor_.emplace(key(f, g), h);
      }
    }
}

int StrictMonCat::tensor_all(const std::vector<int>& objects) const {
  int acc = unit_;
  for (int x : objects) {
    acc = tensor(acc, x);
    if (acc < 0) return -1;
  }
  return acc;
}

int StrictMonCat::tensor_all_mor(const std::vector<int>& morphisms) const {
  int acc = base_->identity(unit_);
  for (int f : morphisms) {
    acc = tensor_mor(acc, f);
    if (acc < 0) return -1;
  }
  return acc;
}

StrictMonCat StrictMonCat::with_tensor_mor(int f, int g, int h) const {
  StrictMonCat copy = *this;
  copy.tensor_mor_[key(f, g)] = h;
  return copy;
}

Report check_strict_monoidal(const StrictMonCat& sm, bool include_base) {
  const FinCat& c = sm.category();
  Report r;
  if (include_base) r.append(check_category(c), "base: ");
  const int n = c.object_count(), m = c.morphism_count();
  const int unit = sm.unit();
  auto on = [&](int x) { return c.object_name(x); };
  auto mn = [&](int f) { return c.morphism_name(f); };

  for (int x = 0; x < n; ++x) {
    if (sm.tensor(unit, x) != x) r.add("left-unit-object", on(x));
    if (sm.tensor(x, unit) != x) r.add("right-unit-object", on(x));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int xy = sm.tensor(x, y);
      if (xy >= 0 && sm.tensor_mor(c.identity(x), c.identity(y)) != c.identity(xy))
        r.add("tensor-identity", on(x) + ", " + on(y));
      for (int z = 0; z < n; ++z) {
        const int yz = sm.tensor(y, z);
        const int lhs = xy < 0 ? -1 : sm.tensor(xy, z);
        const int rhs = yz < 0 ? -1 : sm.tensor(x, yz);
        if (lhs != rhs) r.add("associativity-object", on(x) + ", " + on(y) + ", " + on(z));
      }
    }
  const int id_unit = c.identity(unit);
  for (int f = 0; f < m; ++f) {
    if (sm.tensor_mor(id_unit, f) != f) r.add("left-unit-morphism", mn(f));
    if (sm.tensor_mor(f, id_unit) != f) r.add("right-unit-morphism", mn(f));
  }

  // Per-f reports merged in index order keep the output deterministic.
  std::vector<Report> rows(m);
#pragma omp parallel for schedule(dynamic, 4)
  for (int f = 0; f < m; ++f) {
    Report& row = rows[f];
    for (int y = 0; y < n; ++y) {
      const int d = sm.tensor(c.dom(f), y);
      if (d < 0) continue;
      for (int g : c.out(y)) {
        const int e = sm.tensor(c.cod(f), c.cod(g));
        if (e < 0) continue;
        const int fg = sm.tensor_mor(f, g);
        if (fg < 0) {
          row.add("tensor-defined", mn(f) + ", " + mn(g));
          continue;
        }
        if (c.dom(fg) != d || c.cod(fg) != e) {
          row.add("tensor-endpoints", mn(f) + ", " + mn(g));
          continue;
        }
        for (int z = 0; z < n; ++z) {
          if (sm.tensor(d, z) < 0) continue;
          for (int h : c.out(z)) {
            const int lhs = sm.tensor_mor(fg, h);
            const int gh = sm.tensor_mor(g, h);
            const int rhs = gh < 0 ? -1 : sm.tensor_mor(f, gh);
            if (lhs != rhs) row.add("associativity-morphism", mn(f) + ", " + mn(g) + ", " + mn(h));
          }
        }
        // (f2 (x) g2) . (f (x) g) = (f2 . f) (x) (g2 . g)
        for (int f2 : c.out(c.cod(f)))
          for (int g2 : c.out(c.cod(g))) {
            const int top = sm.tensor_mor(f2, g2);
            if (top < 0) continue;
            if (c.compose(top, fg) != sm.tensor_mor(c.compose(f2, f), c.compose(g2, g)))
              row.add("interchange", mn(f2) + " . " + mn(f) + ", " + mn(g2) + " . " + mn(g));
          }
      }
    }
  }
  for (const auto& row : rows) r.append(row);
  return r;
}

StrictMonCat terminal_strict() {
  return StrictMonCat(share(terminal_category()), 0, {0}, [](int, int) { return 0; });
}

StrictMonCat discrete_group(int n) {
  std::vector<std::string> names;
  for (int g = 0; g < n; ++g) names.push_back(std::to_string(g));
  std::vector<std::string> mnames;
  for (int g = 0; g < n; ++g) mnames.push_back("id_" + names[g]);
  FinCat d = discrete_category(n).renamed(names, mnames);
  std::vector<int> table(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  return StrictMonCat(share(std::move(d)), 0, table, [n](int f, int g) { return (f + g) % n; });
}

StrictMonCat commutative_monoid_strict(const FinCat& monoid) {
  if (monoid.object_count() != 1) throw StructuralError("expected a one-object category");
  const CatRef c = share(monoid);
  return StrictMonCat(c, 0, {0}, [c](int f, int g) { return c->compose(f, g); });
}

Report check_strict_functor(const StrictMonCat& source, const StrictMonCat& target, const Functor& f) {
  if (!same_category(f.source, source.base()) || !same_category(f.target, target.base()))
    throw StructuralError("strict functor endpoints differ from the monoidal categories");
  Report r = check_functor(f);
  const FinCat& s = source.category();
  if (f.on_object(source.unit()) != target.unit()) r.add("preserves-unit", s.object_name(source.unit()));
  for (int x = 0; x < s.object_count(); ++x)
    for (int y = 0; y < s.object_count(); ++y) {
      const int xy = source.tensor(x, y);
      if (xy < 0) continue;
      if (target.tensor(f.on_object(x), f.on_object(y)) != f.on_object(xy))
        r.add("preserves-tensor-object", s.object_name(x) + ", " + s.object_name(y));
    }
  for (int a = 0; a < s.morphism_count(); ++a)
    for (int y = 0; y < s.object_count(); ++y) {
      if (source.tensor(s.dom(a), y) < 0) continue;
      for (int b : s.out(y)) {
        const int ab = source.tensor_mor(a, b);
        if (ab < 0) continue;
        if (target.tensor_mor(f.on_morphism(a), f.on_morphism(b)) != f.on_morphism(ab))
          r.add("preserves-tensor-morphism", s.morphism_name(a) + ", " + s.morphism_name(b));
      }
    }
  return r;
}

}  // namespace catkit
