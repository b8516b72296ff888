#include "catkit/globular_monoid.hpp"

#include "catkit/delta.hpp"

namespace catkit {

Report check_globular_ambient(const GlobularAmbient& a) {
  const int n = a.dim();
  if (n < 0 || static_cast<int>(a.tensors.size()) != n + 1 || static_cast<int>(a.src.size()) != n + 1 ||
      static_cast<int>(a.tgt.size()) != n + 1)
    throw StructuralError("globular ambient: table sizes");
  for (int k = 0; k <= n; ++k) {
    if (static_cast<int>(a.tensors[k].size()) != k) throw StructuralError("globular ambient: tensors per level");
    for (const auto& t : a.tensors[k])
      if (t.base() != a.levels[k]) throw StructuralError("globular ambient: tensor over another category");
    if (k > 0)
      for (const Functor* f : {&a.src[k], &a.tgt[k]}) {
        if (f->source != a.levels[k] || f->target != a.levels[k - 1])
          throw StructuralError("globular ambient: boundary functor endpoints");
        check_functor_shape(*f);
      }
  }
  Report r;
  for (int k = 0; k <= n; ++k) {
    const FinCat& c = *a.levels[k];
    const std::string lk = std::to_string(k);
    for (int i = 0; i < k; ++i)
      r.append(check_strict_monoidal(a.tensors[k][i]), "tensor " + lk + "/" + std::to_string(i) + ": ");
    if (k > 0) {
      r.append(check_functor(a.src[k]), "source " + lk + ": ");
      r.append(check_functor(a.tgt[k]), "target " + lk + ": ");
    }
    if (k > 1)
      for (int f = 0; f < c.morphism_count(); ++f) {
        const int s = a.src[k].on_morphism(f), t = a.tgt[k].on_morphism(f);
        if (a.src[k - 1].on_morphism(s) != a.src[k - 1].on_morphism(t) ||
            a.tgt[k - 1].on_morphism(s) != a.tgt[k - 1].on_morphism(t))
          r.add("globularity", lk + " " + c.morphism_name(f));
      }
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        const StrictMonCat &ti = a.tensors[k][i], &tj = a.tensors[k][j];
        const std::string where = lk + " " + std::to_string(i) + "<" + std::to_string(j) + " ";
        auto interchange = [&](auto tensor_i, auto tensor_j, int w, int x, int y, int z) {
          const int top = tensor_i(tensor_j(w, x), tensor_j(y, z));
          const int bottom = tensor_j(tensor_i(w, y), tensor_i(x, z));
          return top >= 0 && top == bottom;
        };
        auto obj_i = [&](int x, int y) { return x < 0 || y < 0 ? -1 : ti.tensor(x, y); };
        auto obj_j = [&](int x, int y) { return x < 0 || y < 0 ? -1 : tj.tensor(x, y); };
        auto mor_i = [&](int f, int g) { return f < 0 || g < 0 ? -1 : ti.tensor_mor(f, g); };
        auto mor_j = [&](int f, int g) { return f < 0 || g < 0 ? -1 : tj.tensor_mor(f, g); };
        const int no = c.object_count(), nm = c.morphism_count();
        for (int w = 0; w < no; ++w)
          for (int x = 0; x < no; ++x)
            for (int y = 0; y < no; ++y)
              for (int z = 0; z < no; ++z)
                if (!interchange(obj_i, obj_j, w, x, y, z))
                  r.add("ambient-interchange", where + c.object_name(w) + " " + c.object_name(x) + " " +
                                                   c.object_name(y) + " " + c.object_name(z));
        for (int w = 0; w < nm; ++w)
          for (int x = 0; x < nm; ++x)
            for (int y = 0; y < nm; ++y)
              for (int z = 0; z < nm; ++z)
                if (!interchange(mor_i, mor_j, w, x, y, z))
                  r.add("ambient-interchange", where + c.morphism_name(w) + " " + c.morphism_name(x) + " " +
                                                   c.morphism_name(y) + " " + c.morphism_name(z));
        if (ti.tensor(tj.unit(), tj.unit()) != tj.unit()) r.add("ambient-unit-interchange", where);
      }
  }
  return r;
}

GlobularAmbient constant_ambient(const StrictMonCat& c, int n) {
  GlobularAmbient a;
  for (int k = 0; k <= n; ++k) {
    a.levels.push_back(c.base());
    a.tensors.emplace_back(k, c);
    a.src.push_back(k ? identity_functor(c.base()) : Functor{});
    a.tgt.push_back(k ? identity_functor(c.base()) : Functor{});
  }
  return a;
}

Report check_globular_monoid(const GlobularAmbient& a, const GlobularMonoid& m) {
  const int n = a.dim();
  if (static_cast<int>(m.carrier.size()) != n + 1 || static_cast<int>(m.unit.size()) != n + 1 ||
      static_cast<int>(m.mult.size()) != n + 1)
    throw StructuralError("globular monoid: table sizes");
  for (int k = 0; k <= n; ++k) {
    if (static_cast<int>(m.unit[k].size()) != k || static_cast<int>(m.mult[k].size()) != k)
      throw StructuralError("globular monoid: one unit and one multiplication per tensor");
    const FinCat& c = *a.levels[k];
    if (m.carrier[k] < 0 || m.carrier[k] >= c.object_count()) throw StructuralError("globular monoid: carrier");
    for (int i = 0; i < k; ++i)
      if (m.unit[k][i] < 0 || m.unit[k][i] >= c.morphism_count() || m.mult[k][i] < 0 ||
          m.mult[k][i] >= c.morphism_count())
        throw StructuralError("globular monoid: morphism index");
    if (k > 0 && (a.src[k].on_object(m.carrier[k]) != m.carrier[k - 1] ||
                  a.tgt[k].on_object(m.carrier[k]) != m.carrier[k - 1]))
      throw StructuralError("globular monoid: carrier boundaries at level " + std::to_string(k));
  }
  Report r;
  for (int k = 1; k <= n; ++k) {
    const FinCat& c = *a.levels[k];
    for (int i = 0; i < k; ++i)
      r.append(check_monoid(a.tensors[k][i], {m.carrier[k], m.unit[k][i], m.mult[k][i]}),
               std::to_string(k) + "/" + std::to_string(i) + " ");
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        const StrictMonCat &ti = a.tensors[k][i], &tj = a.tensors[k][j];
        const int mi = m.mult[k][i], mj = m.mult[k][j], ej = m.unit[k][j];
        const std::string where = std::to_string(k) + " " + std::to_string(i) + "<" + std::to_string(j);
        auto after = [&](int g, int f) {
          return f < 0 || !c.composable(g, f) ? -1 : c.compose(g, f);
        };
        const int top = after(mj, tj.tensor_mor(mi, mi));
        const int bottom = after(mi, ti.tensor_mor(mj, mj));
        if (top < 0 || top != bottom) r.add("interchange-mult", where);
        if (after(mi, ti.tensor_mor(ej, ej)) != ej) r.add("interchange-unit", where);
      }
  }
  return r;
}

}  // namespace catkit
