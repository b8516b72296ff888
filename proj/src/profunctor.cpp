#include "catkit/profunctor.hpp"

#include <numeric>

namespace catkit {

Profunctor::Profunctor(CatRef source, CatRef target, std::vector<int> sizes, const LeftFn& left,
                       const RightFn& right, std::vector<std::vector<std::string>> names)
    : source_(std::move(source)), target_(std::move(target)), sizes_(std::move(sizes)), names_(std::move(names)) {
  const FinCat& x = *source_;
  const FinCat& y = *target_;
  const int nx = x.object_count(), ny = y.object_count();
  if (static_cast<int>(sizes_.size()) != nx * ny) throw StructuralError("profunctor fiber table has wrong size");
  for (int s : sizes_)
    if (s < 0) throw StructuralError("negative fiber size");
  left_.assign(x.morphism_count(), {});
  for (int u = 0; u < x.morphism_count(); ++u) {
    left_[u].assign(ny, {});
    for (int b = 0; b < ny; ++b) {
      const int n = fiber_size(x.cod(u), b), limit = fiber_size(x.dom(u), b);
      for (int p = 0; p < n; ++p) {
        const int r = left(u, b, p);
        if (r < 0 || r >= limit)
          throw StructuralError("left action of " + x.morphism_name(u) + " leaves its fiber");
        left_[u][b].push_back(r);
      }
    }
  }
  right_.assign(y.morphism_count(), {});
  for (int v = 0; v < y.morphism_count(); ++v) {
    right_[v].assign(nx, {});
    for (int a = 0; a < nx; ++a) {
      const int n = fiber_size(a, y.dom(v)), limit = fiber_size(a, y.cod(v));
      for (int p = 0; p < n; ++p) {
        const int r = right(a, p, v);
        if (r < 0 || r >= limit)
          throw StructuralError("right action of " + y.morphism_name(v) + " leaves its fiber");
        right_[v][a].push_back(r);
      }
    }
  }
  if (names_.empty()) {
    names_.resize(sizes_.size());
    for (int a = 0; a < nx; ++a)
      for (int b = 0; b < ny; ++b)
        for (int p = 0; p < fiber_size(a, b); ++p)
          names_[fiber_index(a, b)].push_back(x.object_name(a) + ":" + y.object_name(b) + ":" + std::to_string(p));
  }
  if (names_.size() != sizes_.size()) throw StructuralError("profunctor name table has wrong size");
  for (std::size_t i = 0; i < sizes_.size(); ++i)
    if (static_cast<int>(names_[i].size()) != sizes_[i]) throw StructuralError("profunctor fiber names mismatch");
}

int Profunctor::total_elements() const { return std::accumulate(sizes_.begin(), sizes_.end(), 0); }

Profunctor Profunctor::renamed(std::vector<std::vector<std::string>> names) const {
  if (names.size() != sizes_.size()) throw StructuralError("renamed: wrong fiber count");
  for (std::size_t i = 0; i < names.size(); ++i)
    if (static_cast<int>(names[i].size()) != sizes_[i]) throw StructuralError("renamed: wrong fiber size");
  Profunctor copy = *this;
  copy.names_ = std::move(names);
  return copy;
}

Profunctor Profunctor::with_left(int u, int y, int p, int result) const {
  Profunctor copy = *this;
  if (result < 0 || result >= fiber_size(source_->dom(u), y)) throw StructuralError("with_left: result out of range");
  copy.left_.at(u).at(y).at(p) = result;
  return copy;
}

bool Profunctor::same_structure(const Profunctor& other) const {
  return same_category(source_, other.source_) && same_category(target_, other.target_) && sizes_ == other.sizes_ &&
         left_ == other.left_ && right_ == other.right_;
}

Report check_profunctor(const Profunctor& pr) {
  Report r;
  const FinCat& x = *pr.source();
  const FinCat& y = *pr.target();
  auto elem = [&](int a, int b, int p) { return pr.element_name(a, b, p); };
  for (int a = 0; a < x.object_count(); ++a)
    for (int b = 0; b < y.object_count(); ++b)
      for (int p = 0; p < pr.fiber_size(a, b); ++p) {
        if (pr.left(x.identity(a), b, p) != p) r.add("left-unit", elem(a, b, p));
        if (pr.right(a, p, y.identity(b)) != p) r.add("right-unit", elem(a, b, p));
      }
  // left(u . u', p) = left(u', left(u, p))
  for (int u1 = 0; u1 < x.morphism_count(); ++u1)
    for (int u : x.out(x.cod(u1))) {
      const int uu = x.compose(u, u1);
      for (int b = 0; b < y.object_count(); ++b)
        for (int p = 0; p < pr.fiber_size(x.cod(u), b); ++p)
          if (pr.left(uu, b, p) != pr.left(u1, b, pr.left(u, b, p)))
            r.add("left-functoriality", x.morphism_name(u) + " . " + x.morphism_name(u1) + " on " +
                                            elem(x.cod(u), b, p));
    }
  for (int v = 0; v < y.morphism_count(); ++v)
    for (int v1 : y.out(y.cod(v))) {
      const int vv = y.compose(v1, v);
      for (int a = 0; a < x.object_count(); ++a)
        for (int p = 0; p < pr.fiber_size(a, y.dom(v)); ++p)
          if (pr.right(a, p, vv) != pr.right(a, pr.right(a, p, v), v1))
            r.add("right-functoriality", y.morphism_name(v1) + " . " + y.morphism_name(v) + " on " +
                                             elem(a, y.dom(v), p));
    }
  for (int u = 0; u < x.morphism_count(); ++u)
    for (int v = 0; v < y.morphism_count(); ++v)
      for (int p = 0; p < pr.fiber_size(x.cod(u), y.dom(v)); ++p) {
        const int lr = pr.left(u, y.cod(v), pr.right(x.cod(u), p, v));
        const int rl = pr.right(x.dom(u), pr.left(u, y.dom(v), p), v);
        if (lr != rl)
          r.add("action-commutation", x.morphism_name(u) + ", " + elem(x.cod(u), y.dom(v), p) + ", " +
                                          y.morphism_name(v));
      }
  return r;
}

Profunctor hom_profunctor(const CatRef& c) {
  const FinCat& x = *c;
  const int n = x.object_count();
  std::vector<int> sizes(n * n);
  std::vector<std::vector<std::string>> names(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      sizes[a * n + b] = static_cast<int>(x.hom(a, b).size());
      for (int f : x.hom(a, b)) names[a * n + b].push_back(x.morphism_name(f));
    }
  return Profunctor(
      c, c, sizes,
      [&](int u, int b, int p) { return x.hom_position(x.compose(x.hom(x.cod(u), b)[p], u)); },
      [&](int a, int p, int v) { return x.hom_position(x.compose(v, x.hom(a, x.dom(v))[p])); }, names);
}

// ---------------------------------------------------------------------------

Report check_fiber_map(const Profunctor& s, const Profunctor& t, const FiberMap& m) {
  if (!same_category(s.source(), t.source()) || !same_category(s.target(), t.target()))
    throw StructuralError("fiber map between profunctors with different endpoints");
  if (m.images.size() != s.sizes().size()) throw StructuralError("fiber map has wrong fiber count");
  const FinCat& x = *s.source();
  const FinCat& y = *s.target();
  for (int a = 0; a < x.object_count(); ++a)
    for (int b = 0; b < y.object_count(); ++b) {
      const auto& img = m.images[s.fiber_index(a, b)];
      if (static_cast<int>(img.size()) != s.fiber_size(a, b)) throw StructuralError("fiber map has wrong fiber size");
      for (int v : img)
        if (v < 0 || v >= t.fiber_size(a, b)) throw StructuralError("fiber map image out of range");
    }
  Report r;
  auto image = [&](int a, int b, int p) { return m.images[s.fiber_index(a, b)][p]; };
  for (int u = 0; u < x.morphism_count(); ++u)
    for (int b = 0; b < y.object_count(); ++b)
      for (int p = 0; p < s.fiber_size(x.cod(u), b); ++p)
        if (image(x.dom(u), b, s.left(u, b, p)) != t.left(u, b, image(x.cod(u), b, p)))
          r.add("left-equivariance", x.morphism_name(u) + " on " + s.element_name(x.cod(u), b, p));
  for (int v = 0; v < y.morphism_count(); ++v)
    for (int a = 0; a < x.object_count(); ++a)
      for (int p = 0; p < s.fiber_size(a, y.dom(v)); ++p)
        if (image(a, y.cod(v), s.right(a, p, v)) != t.right(a, image(a, y.dom(v), p), v))
          r.add("right-equivariance", s.element_name(a, y.dom(v), p) + " by " + y.morphism_name(v));
  return r;
}

bool is_fiberwise_bijective(const Profunctor& s, const Profunctor& t, const FiberMap& m) {
  if (s.sizes() != t.sizes() || m.images.size() != s.sizes().size()) return false;
  for (std::size_t i = 0; i < m.images.size(); ++i) {
    std::vector<bool> hit(t.sizes()[i], false);
    if (static_cast<int>(m.images[i].size()) != s.sizes()[i]) return false;
    for (int v : m.images[i]) {
      if (v < 0 || v >= t.sizes()[i] || hit[v]) return false;
      hit[v] = true;
    }
  }
  return true;
}

bool is_isomorphism(const Profunctor& s, const Profunctor& t, const FiberMap& m) {
  return is_fiberwise_bijective(s, t, m) && check_fiber_map(s, t, m).ok();
}

// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;  // least index stays the root
  }
  std::vector<int> parent;
};

/// Per-class value of a map given on raw elements, if constant on classes.
template <class Fn>
std::optional<std::vector<int>> descend(const std::vector<int>& class_of, int classes, Fn value) {
  std::vector<int> out(classes, -1);
  for (int i = 0; i < static_cast<int>(class_of.size()); ++i) {
    const int v = value(i);
    int& slot = out[class_of[i]];
    if (slot == -1)
      slot = v;
    else if (slot != v)
      return std::nullopt;
  }
  return out;
}

}  // namespace

int Composite::class_of_pair(int x, int z, int y, int p, int q) const {
  const int fiber = profunctor.fiber_index(x, z);
  return class_of[fiber][pair_index(fiber, y, p, q)];
}

Composite compose(const Profunctor& pp, const Profunctor& qq) {
  if (!same_category(pp.target(), qq.source())) throw StructuralError("compose: P.target differs from Q.source");
  const FinCat& x = *pp.source();
  const FinCat& y = *pp.target();
  const FinCat& z = *qq.target();
  const int nx = x.object_count(), ny = y.object_count(), nz = z.object_count();
  Composite c;
  c.pairs.resize(nx * nz);
  c.offsets.resize(nx * nz);
  c.class_of.resize(nx * nz);
  c.representative.resize(nx * nz);
  c.q_counts.resize(nx * nz);
  std::vector<int> sizes(nx * nz, 0);
  std::vector<std::vector<std::string>> names(nx * nz);

  for (int a = 0; a < nx; ++a)
    for (int w = 0; w < nz; ++w) {
      const int fiber = a * nz + w;
      auto& pairs = c.pairs[fiber];
      auto& off = c.offsets[fiber];
      for (int b = 0; b < ny; ++b) {
        off.push_back(static_cast<int>(pairs.size()));
        c.q_counts[fiber].push_back(qq.fiber_size(b, w));
        for (int p = 0; p < pp.fiber_size(a, b); ++p)
          for (int q = 0; q < qq.fiber_size(b, w); ++q) pairs.push_back({b, p, q});
      }
      off.push_back(static_cast<int>(pairs.size()));
      auto index = [&](int b, int p, int q) { return off[b] + p * qq.fiber_size(b, w) + q; };

      UnionFind uf(static_cast<int>(pairs.size()));
      // (p . v, q) ~ (p, v . q) for every v : b -> b'
      for (int v = 0; v < y.morphism_count(); ++v) {
        const int b = y.dom(v), b1 = y.cod(v);
        for (int p = 0; p < pp.fiber_size(a, b); ++p)
          for (int q = 0; q < qq.fiber_size(b1, w); ++q)
            uf.unite(index(b1, pp.right(a, p, v), q), index(b, p, qq.left(v, w, q)));
      }
      auto& cls = c.class_of[fiber];
      cls.assign(pairs.size(), -1);
      std::vector<int> class_of_root(pairs.size(), -1);
      for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
        const int root = uf.find(i);
        if (class_of_root[root] < 0) {
          class_of_root[root] = static_cast<int>(c.representative[fiber].size());
          c.representative[fiber].push_back(i);
        }
        cls[i] = class_of_root[root];
      }
      sizes[fiber] = static_cast<int>(c.representative[fiber].size());
      for (int rep : c.representative[fiber]) {
        const auto& pr = pairs[rep];
        names[fiber].push_back("[" + pp.element_name(a, pr.y, pr.p) + "," + qq.element_name(pr.y, w, pr.q) + "]");
      }
    }

  auto raw_index = [&](int a, int w, int b, int p, int q) {
    return c.offsets[a * nz + w][b] + p * qq.fiber_size(b, w) + q;
  };

  // Induced actions, verified constant on classes.
  std::vector<std::vector<std::vector<int>>> left_table(x.morphism_count(), std::vector<std::vector<int>>(nz));
  for (int u = 0; u < x.morphism_count(); ++u)
    for (int w = 0; w < nz; ++w) {
      const int from = x.cod(u) * nz + w, to = x.dom(u) * nz + w;
      auto value = [&](int i) {
        const auto& pr = c.pairs[from][i];
        return c.class_of[to][raw_index(x.dom(u), w, pr.y, pp.left(u, pr.y, pr.p), pr.q)];
      };
      auto d = descend(c.class_of[from], sizes[from], value);
      if (!d) {
        c.well_defined.add("induced-left-action", x.morphism_name(u));
        d = std::vector<int>(sizes[from]);
        for (int k = 0; k < sizes[from]; ++k) (*d)[k] = value(c.representative[from][k]);
      }
      left_table[u][w] = std::move(*d);
    }
  std::vector<std::vector<std::vector<int>>> right_table(z.morphism_count(), std::vector<std::vector<int>>(nx));
  for (int v = 0; v < z.morphism_count(); ++v)
    for (int a = 0; a < nx; ++a) {
      const int from = a * nz + z.dom(v), to = a * nz + z.cod(v);
      auto value = [&](int i) {
        const auto& pr = c.pairs[from][i];
        return c.class_of[to][raw_index(a, z.cod(v), pr.y, pr.p, qq.right(pr.y, pr.q, v))];
      };
      auto d = descend(c.class_of[from], sizes[from], value);
      if (!d) {
        c.well_defined.add("induced-right-action", z.morphism_name(v));
        d = std::vector<int>(sizes[from]);
        for (int k = 0; k < sizes[from]; ++k) (*d)[k] = value(c.representative[from][k]);
      }
      right_table[v][a] = std::move(*d);
    }

  c.profunctor = Profunctor(
      pp.source(), qq.target(), sizes, [&](int u, int w, int p) { return left_table[u][w][p]; },
      [&](int a, int p, int v) { return right_table[v][a][p]; }, names);
  return c;
}

std::optional<FiberMap> left_unitor(const Composite& hp, const Profunctor& p) {
  const FinCat& x = *p.source();
  const int ny = p.target()->object_count();
  FiberMap m;
  m.images.resize(p.sizes().size());
  for (int a = 0; a < x.object_count(); ++a)
    for (int b = 0; b < ny; ++b) {
      const int fiber = a * ny + b;
      auto d = descend(hp.class_of[fiber], hp.profunctor.fiber_size(a, b), [&](int i) {
        const auto& pr = hp.pairs[fiber][i];
        return p.left(x.hom(a, pr.y)[pr.p], b, pr.q);
      });
      if (!d) return std::nullopt;
      m.images[fiber] = std::move(*d);
    }
  return m;
}

std::optional<FiberMap> right_unitor(const Composite& ph, const Profunctor& p) {
  const FinCat& y = *p.target();
  const int nx = p.source()->object_count(), ny = y.object_count();
  FiberMap m;
  m.images.resize(p.sizes().size());
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b) {
      const int fiber = a * ny + b;
      auto d = descend(ph.class_of[fiber], ph.profunctor.fiber_size(a, b), [&](int i) {
        const auto& pr = ph.pairs[fiber][i];
        return p.right(a, pr.p, y.hom(pr.y, b)[pr.q]);
      });
      if (!d) return std::nullopt;
      m.images[fiber] = std::move(*d);
    }
  return m;
}

std::optional<FiberMap> associator(const Profunctor& p, const Profunctor& q, const Profunctor& r,
                                   const Composite& pq, const Composite& pq_r, const Composite& qr,
                                   const Composite& p_qr) {
  const int nx = p.source()->object_count(), ny = p.target()->object_count();
  const int nz = q.target()->object_count(), nw = r.target()->object_count();
  FiberMap m;
  m.images.resize(nx * nw);
  for (int a = 0; a < nx; ++a)
    for (int d = 0; d < nw; ++d) {
      auto& img = m.images[a * nw + d];
      img.assign(pq_r.profunctor.fiber_size(a, d), -1);
      for (int c = 0; c < nz; ++c)
        for (int b = 0; b < ny; ++b)
          for (int ep = 0; ep < p.fiber_size(a, b); ++ep)
            for (int eq = 0; eq < q.fiber_size(b, c); ++eq)
              for (int er = 0; er < r.fiber_size(c, d); ++er) {
                const int inner_left = pq.class_of_pair(a, c, b, ep, eq);
                const int outer = pq_r.class_of_pair(a, d, c, inner_left, er);
                const int inner_right = qr.class_of_pair(b, d, c, eq, er);
                const int target = p_qr.class_of_pair(a, d, b, ep, inner_right);
                if (img[outer] == -1)
                  img[outer] = target;
                else if (img[outer] != target)
                  return std::nullopt;
              }
      for (int v : img)
        if (v < 0) return std::nullopt;
    }
  return m;
}

// ---------------------------------------------------------------------------

Representables representable(const Functor& f) {
  check_functor_shape(f);
  const FinCat& x = *f.source;
  const FinCat& y = *f.target;
  const int nx = x.object_count(), ny = y.object_count();
  std::vector<int> lower_sizes(nx * ny), upper_sizes(ny * nx);
  std::vector<std::vector<std::string>> lower_names(nx * ny), upper_names(ny * nx);
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b) {
      lower_sizes[a * ny + b] = static_cast<int>(y.hom(f.on_object(a), b).size());
      for (int g : y.hom(f.on_object(a), b)) lower_names[a * ny + b].push_back(y.morphism_name(g));
      upper_sizes[b * nx + a] = static_cast<int>(y.hom(b, f.on_object(a)).size());
      for (int g : y.hom(b, f.on_object(a))) upper_names[b * nx + a].push_back(y.morphism_name(g));
    }
  Profunctor lower(
      f.source, f.target, lower_sizes,
      [&](int u, int b, int p) {
        const int g = y.hom(f.on_object(x.cod(u)), b)[p];
        return y.hom_position(y.compose(g, f.on_morphism(u)));
      },
      [&](int a, int p, int v) {
        const int g = y.hom(f.on_object(a), y.dom(v))[p];
        return y.hom_position(y.compose(v, g));
      },
      lower_names);
  Profunctor upper(
      f.target, f.source, upper_sizes,
      [&](int v, int a, int p) {
        const int g = y.hom(y.cod(v), f.on_object(a))[p];
        return y.hom_position(y.compose(g, v));
      },
      [&](int b, int p, int u) {
        const int g = y.hom(b, f.on_object(x.dom(u)))[p];
        return y.hom_position(y.compose(f.on_morphism(u), g));
      },
      upper_names);
  return {std::move(lower), std::move(upper)};
}

Profunctor dual(const Profunctor& p, const CatRef& target_op, const CatRef& source_op) {
  const int nx = p.source()->object_count(), ny = p.target()->object_count();
  std::vector<int> sizes(ny * nx);
  std::vector<std::vector<std::string>> names(ny * nx);
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b) {
      sizes[b * nx + a] = p.fiber_size(a, b);
      names[b * nx + a] = p.names()[p.fiber_index(a, b)];
    }
  return Profunctor(
      target_op, source_op, sizes, [&](int v, int a, int e) { return p.right(a, e, v); },
      [&](int b, int e, int u) { return p.left(u, b, e); }, names);
}

Profunctor dual(const Profunctor& p) {
  return dual(p, share(opposite(*p.target())), share(opposite(*p.source())));
}

Profunctor change_of_base(const Functor& f, const Functor& g, const Profunctor& r) {
  check_functor_shape(f);
  check_functor_shape(g);
  if (!same_category(f.target, r.source()) || !same_category(g.target, r.target()))
    throw StructuralError("change_of_base: functors do not land in the profunctor's endpoints");
  const int nx = f.source->object_count(), ny = g.source->object_count();
  std::vector<int> sizes(nx * ny);
  std::vector<std::vector<std::string>> names(nx * ny);
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b) {
      sizes[a * ny + b] = r.fiber_size(f.on_object(a), g.on_object(b));
      names[a * ny + b] = r.names()[r.fiber_index(f.on_object(a), g.on_object(b))];
    }
  return Profunctor(
      f.source, g.source, sizes,
      [&](int u, int b, int e) { return r.left(f.on_morphism(u), g.on_object(b), e); },
      [&](int a, int e, int v) { return r.right(f.on_object(a), e, g.on_morphism(v)); }, names);
}

Profunctor comma_profunctor(const Functor& f, const Functor& g) {
  const CommaCategory comma = comma_category(f, g);
  const FinCat& z = *f.target;
  const int nx = f.source->object_count(), ny = g.source->object_count();
  // Elements of fiber (x, y) are the comma objects over (x, y), in comma order.
  std::vector<int> sizes(nx * ny, 0);
  std::vector<std::vector<std::string>> names(nx * ny);
  std::vector<int> position(comma.objects.size());
  std::vector<std::vector<int>> element_object(nx * ny);
  for (int i = 0; i < static_cast<int>(comma.objects.size()); ++i) {
    const auto& o = comma.objects[i];
    position[i] = sizes[o.x * ny + o.y]++;
    element_object[o.x * ny + o.y].push_back(i);
    names[o.x * ny + o.y].push_back(comma.category->object_name(i));
  }
  // The actions are read off the comma category: (a, id) and (id, b) squares.
  auto find_object = [&](int a, int u, int b) {
    for (int i : element_object[a * ny + b])
      if (comma.objects[i].u == u) return position[i];
    throw StructuralError("comma_profunctor: missing comma object");
  };
  return Profunctor(
      f.source, g.source, sizes,
      [&](int u, int b, int e) {
        const auto& o = comma.objects[element_object[f.source->cod(u) * ny + b][e]];
        return find_object(f.source->dom(u), z.compose(o.u, f.on_morphism(u)), b);
      },
      [&](int a, int e, int v) {
        const auto& o = comma.objects[element_object[a * ny + g.source->dom(v)][e]];
        return find_object(a, z.compose(g.on_morphism(v), o.u), g.source->cod(v));
      },
      names);
}

std::optional<FiberMap> comma_comparison(const Functor& f, const Functor& g, const Composite& composite,
                                         const Profunctor& comma) {
  const FinCat& z = *f.target;
  const int nx = f.source->object_count(), ny = g.source->object_count();
  FiberMap m;
  m.images.resize(nx * ny);
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b) {
      const int fiber = a * ny + b;
      auto d = descend(composite.class_of[fiber], composite.profunctor.fiber_size(a, b), [&](int i) {
        const auto& pr = composite.pairs[fiber][i];
        const int p = z.hom(f.on_object(a), pr.y)[pr.p];
        const int q = z.hom(pr.y, g.on_object(b))[pr.q];
        return z.hom_position(z.compose(q, p));
      });
      if (!d) return std::nullopt;
      if (comma.fiber_size(a, b) != static_cast<int>(z.hom(f.on_object(a), g.on_object(b)).size()))
        return std::nullopt;
      m.images[fiber] = std::move(*d);
    }
  return m;
}

}  // namespace catkit
