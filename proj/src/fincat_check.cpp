// Exhaustive category-law kernels: a serial reference and an OpenMP version.
#include <omp.h>

#include "catkit/fincat.hpp"

namespace catkit {
namespace {

// Laws whose instances are indexed by a single morphism f (as the first
// factor). Both kernels call this and differ only in how f is scheduled.
void check_from(const FinCat& c, int f, Report& r) {
  const auto& name = [&](int m) -> const std::string& { return c.morphism_name(m); };
  const int m = c.morphism_count();
  for (int g : c.out(c.cod(f))) {
    const int gf = c.compose(g, f);
    if (gf < 0) {
      r.add("composite-defined", name(g) + " . " + name(f));
      continue;
    }
    if (gf >= m || c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g))
      r.add("composite-endpoints", name(g) + " . " + name(f));
  }
  if (c.compose(c.identity(c.cod(f)), f) != f) r.add("left-unit", name(f));
  if (c.compose(f, c.identity(c.dom(f))) != f) r.add("right-unit", name(f));
  for (int g : c.out(c.cod(f))) {
    const int gf = c.compose(g, f);
    if (gf < 0 || c.cod(gf) != c.cod(g)) continue;
    for (int h : c.out(c.cod(g))) {
      const int hg = c.compose(h, g);
      if (hg < 0 || c.dom(hg) != c.dom(g)) continue;
      const int lhs = c.compose(h, gf);
      const int rhs = c.compose(hg, f);
      if (lhs != rhs) r.add("associativity", name(h) + " . " + name(g) + " . " + name(f));
    }
  }
}

}  // namespace

namespace serial {
Report check_category(const FinCat& c) {
  Report r;
  for (int f = 0; f < c.morphism_count(); ++f) check_from(c, f, r);
  return r;
}
}  // namespace serial

namespace parallel {
Report check_category(const FinCat& c) {
  const int m = c.morphism_count();
  std::vector<Report> partial(m);
#pragma omp parallel for schedule(dynamic, 8)
  for (int f = 0; f < m; ++f) check_from(c, f, partial[f]);
  Report r;
  for (const auto& p : partial) r.append(p);
  return r;
}
}  // namespace parallel

Report check_category(const FinCat& c) {
  // Thread start-up dominates below this size.
  if (c.morphism_count() < 64) return serial::check_category(c);
  return parallel::check_category(c);
}

}  // namespace catkit
