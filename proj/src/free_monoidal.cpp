#include "catkit/free_monoidal.hpp"

namespace catkit {

const std::vector<std::vector<int>>& FreeMonoidal::hom(const List& dom, const List& cod) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find({dom, cod});
    if (it != memo_.end()) return it->second;
  }
  const Multicategory& m = *m_;
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t j, std::size_t pos) {
    if (j == cod.size()) {
      if (pos == dom.size()) out.push_back(cur);
      return;
    }
    for (int a : m.into(cod[j])) {
      const List& s = m.source(a);
      if (pos + s.size() > dom.size() || !std::equal(s.begin(), s.end(), dom.begin() + pos)) continue;
      cur.push_back(a);
      go(j + 1, pos + s.size());
      cur.pop_back();
    }
  };
  go(0, 0);
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.emplace(std::make_pair(dom, cod), std::move(out)).first->second;
}

FreeMor FreeMonoidal::identity(const List& objects) const {
  FreeMor f{objects, objects, {}};
  for (int x : objects) f.blocks.push_back(m_->identity(x));
  return f;
}

std::optional<FreeMor> FreeMonoidal::compose(const FreeMor& g, const FreeMor& f) const {
  if (f.cod != g.dom) throw StructuralError("free monoidal compose: endpoints do not match");
  FreeMor out{f.dom, g.cod, {}};
  std::size_t at = 0;
  std::vector<int> slice;
  for (int b : g.blocks) {
    const std::size_t k = m_->source(b).size();
    slice.assign(f.blocks.begin() + at, f.blocks.begin() + at + k);
    at += k;
    const int c = m_->compose(b, slice);
    if (c < 0) return std::nullopt;
    out.blocks.push_back(c);
  }
  return out;
}

FreeMor FreeMonoidal::tensor(const FreeMor& a, const FreeMor& b) const {
  FreeMor out = a;
  out.dom.insert(out.dom.end(), b.dom.begin(), b.dom.end());
  out.cod.insert(out.cod.end(), b.cod.begin(), b.cod.end());
  out.blocks.insert(out.blocks.end(), b.blocks.begin(), b.blocks.end());
  return out;
}

FreeMor FreeMonoidal::zeta(int arrow) const { return {m_->source(arrow), {m_->target(arrow)}, {arrow}}; }

std::string FreeMonoidal::name(const FreeMor& f) const {
  std::string s = "[";
  for (std::size_t i = 0; i < f.blocks.size(); ++i) s += (i ? "," : "") + m_->arrow_name(f.blocks[i]);
  return s + "]";
}

Report check_zeta_fully_faithful(const FreeMonoidal& f, int bound) {
  const Multicategory& m = f.multicategory();
  Report r;
  for (const auto& l : lists_up_to(m.object_count(), bound))
    for (int y = 0; y < m.object_count(); ++y) {
      const auto& homs = f.hom(l, {y});
      const auto& arrows = m.hom(l, y);
      bool ok = homs.size() == arrows.size();
      for (std::size_t i = 0; ok && i < arrows.size(); ++i) {
        // hom(l, <y>) lists one-block tuples in arrow order, so zeta is the identity on positions.
        const FreeMor z = f.zeta(arrows[i]);
        ok = z.dom == l && homs[i] == z.blocks;
      }
      if (!ok) r.add("zeta-not-bijective", m.list_name(l) + " -> " + m.object_name(y));
    }
  return r;
}

int MaterializedFree::object_index(const List& l) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), l, [](const List& a, const List& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return it != objects.end() && *it == l ? static_cast<int>(it - objects.begin()) : -1;
}

int MaterializedFree::morphism_index(const FreeMor& f) const {
  const int d = object_index(f.dom), c = object_index(f.cod);
  if (d < 0 || c < 0) return -1;
  std::vector<int> key{d, c};
  key.insert(key.end(), f.blocks.begin(), f.blocks.end());
  auto it = index.find(key);
  return it == index.end() ? -1 : it->second;
}

MaterializedFree materialize(const FreeMonoidal& f, int max_length, std::size_t max_morphisms) {
  const Multicategory& m = f.multicategory();
  if (m.truncated() && max_length > m.arity_cap())
    throw StructuralError("materialization bound exceeds the multicategory's arity cap");
  MaterializedFree out;
  out.objects = lists_up_to(m.object_count(), max_length);
  const int n = static_cast<int>(out.objects.size());
  std::vector<Arrow> arrows;
  std::vector<std::string> names;
  for (int d = 0; d < n; ++d)
    for (int c = 0; c < n; ++c)
      for (const auto& blocks : f.hom(out.objects[d], out.objects[c])) {
        std::vector<int> key{d, c};
        key.insert(key.end(), blocks.begin(), blocks.end());
        out.index.emplace(std::move(key), static_cast<int>(arrows.size()));
        FreeMor mor{out.objects[d], out.objects[c], blocks};
        names.push_back(f.name(mor));
        out.morphisms.push_back(std::move(mor));
        arrows.push_back({d, c});
        if (arrows.size() > max_morphisms)
          throw BoundExceeded("materialized free monoidal category exceeds " + std::to_string(max_morphisms) +
                              " morphisms");
      }
  std::vector<int> ids;
  std::vector<std::string> object_names;
  for (const auto& l : out.objects) {
    ids.push_back(out.morphism_index(f.identity(l)));
    object_names.push_back(m.list_name(l));
  }
  const auto& mors = out.morphisms;
  CatRef base = share(FinCat(
      n, arrows, ids,
      [&](int g, int h) {
        const auto c = f.compose(mors[g], mors[h]);
        return c ? out.morphism_index(*c) : -1;
      },
      object_names, names));
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      List l = out.objects[a];
      l.insert(l.end(), out.objects[b].begin(), out.objects[b].end());
      table[a * n + b] = out.object_index(l);
    }
  out.cat = StrictMonCat(
      base, out.object_index({}), table,
      [&](int a, int b) { return out.morphism_index(f.tensor(mors[a], mors[b])); }, true);
  return out;
}

}  // namespace catkit
