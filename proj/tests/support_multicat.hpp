// Seeded multicategory generators and independent oracles.
#pragma once

#include "catkit/multicat.hpp"
#include "support.hpp"

namespace catkit::testing {

/// The sub-multicategory generated by the arrows flagged in `keep` (plus identities).
inline Multicategory generated_sub(const Multicategory& m, std::vector<bool> keep) {
  for (int x = 0; x < m.object_count(); ++x) keep[m.identity(x)] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [key, h] : m.composites()) {
      if (keep[h]) continue;
      if (std::all_of(key.begin(), key.end(), [&](int a) { return keep[a]; })) keep[h] = changed = true;
    }
  }
  std::vector<int> index(m.arrow_count(), -1), back;
  std::vector<MultiArrow> arrows;
  std::vector<std::string> names;
  for (int a = 0; a < m.arrow_count(); ++a)
    if (keep[a]) {
      index[a] = static_cast<int>(back.size());
      back.push_back(a);
      arrows.push_back(m.arrow(a));
      names.push_back(m.arrow_name(a));
    }
  std::vector<int> ids;
  for (int x = 0; x < m.object_count(); ++x) ids.push_back(index[m.identity(x)]);
  auto owner = std::make_shared<Multicategory>(m);
  return Multicategory(
      m.object_count(), arrows, ids,
      [&](int f, const std::vector<int>& gs) {
        std::vector<int> orig;
        for (int g : gs) orig.push_back(back[g]);
        const int h = m.compose(back[f], orig);
        return h < 0 ? -1 : index[h];
      },
      m.arity_cap(), m.truncated(), m.object_names(), names,
      [owner](const List& l) { return owner->in_range(l); });
}

inline Multicategory random_sub(Rng& rng, const Multicategory& m, int one_in) {
  std::vector<bool> keep(m.arrow_count());
  for (int a = 0; a < m.arrow_count(); ++a) keep[a] = uniform(rng, 0, one_in - 1) == 0;
  return generated_sub(m, keep);
}

/// Independent universality oracle: every context is generated recursively and
/// precomposition is compared as sorted images.
inline bool naive_universal(const Multicategory& m, int pi, int bound) {
  std::vector<List> contexts;
  List cur;
  std::function<void()> gen = [&] {
    contexts.push_back(cur);
    if (static_cast<int>(cur.size()) == bound) return;
    for (int x = 0; x < m.object_count(); ++x) {
      cur.push_back(x);
      gen();
      cur.pop_back();
    }
  };
  gen();
  for (const auto& ctx : contexts) {
    if (!m.in_range(ctx)) continue;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx[i] != m.target(pi)) continue;
      List big;
      std::vector<int> plug;
      for (std::size_t k = 0; k < ctx.size(); ++k) {
        if (k == i) {
          big.insert(big.end(), m.source(pi).begin(), m.source(pi).end());
          plug.push_back(pi);
        } else {
          big.push_back(ctx[k]);
          plug.push_back(m.identity(ctx[k]));
        }
      }
      if (static_cast<int>(big.size()) > bound || !m.in_range(big)) continue;
      for (int y = 0; y < m.object_count(); ++y) {
        std::vector<int> image;
        for (int h : m.hom(ctx, y)) image.push_back(m.compose(h, plug));
        std::sort(image.begin(), image.end());
        std::vector<int> expected(m.hom(big, y).begin(), m.hom(big, y).end());
        if (image != expected) return false;
      }
    }
  }
  return true;
}

}  // namespace catkit::testing
