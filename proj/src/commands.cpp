#include "catkit/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "catkit/lifts.hpp"
#include "catkit/strictify.hpp"
#include "catkit/text_format.hpp"
#include "catkit/tree_calculus.hpp"

namespace catkit {
namespace {

// Parse failures keep the file name for the error line.
struct FileParseError {
  ParseError error;
  std::string path;
};

Document load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_document(text.str());
  } catch (const ParseError& e) {
    throw FileParseError{e, path};
  }
}

// Prints a report under a heading line; true when it is empty.
bool report(std::ostream& out, const std::string& what, const Report& r) {
  if (r.ok()) {
    out << what << ": ok\n";
    return true;
  }
  out << what << ": " << r.size() << (r.size() == 1 ? " violation\n" : " violations\n") << r;
  return false;
}

std::vector<std::string> object_names(const FinCat& c) { return printable_names(c.object_names(), "o"); }
std::vector<std::string> morphism_names(const FinCat& c) { return printable_names(c.morphism_names(), "m"); }

void require(std::ostream& out, const std::string& what, const Report& r) {
  if (!r.ok()) {
    report(out, what, r);
    throw LawViolation(what + " fails", {});
  }
}

struct Args {
  std::string file;
  std::vector<std::string> names;
  std::optional<int> bound;
  std::optional<int> max;
  std::optional<int> sample;
  std::uint32_t seed = kDefaultSeed;
  int level = 0;
  std::string tree_a, tree_b;
};

std::string name_arg(const Args& a, std::size_t i) { return i < a.names.size() ? a.names[i] : std::string(); }

// ---------------------------------------------------------------------------

int cmd_validate(const Args& a, std::ostream& out) {
  const Document doc = load(a.file);
  bool ok = true;
  for (const auto& s : doc.sections) {
    Report r;
    switch (s.kind) {
      case SectionKind::Category: r = check_category(*std::get<CatRef>(s.value)); break;
      case SectionKind::Functor: r = check_functor(std::get<Functor>(s.value)); break;
      case SectionKind::Profunctor: {
        const auto& ps = std::get<ProfunctorSection>(s.value);
        r = check_profunctor(ps.profunctor);
        if (ps.monad) r.append(check_prof_monad(*ps.monad), "monad: ");
        break;
      }
      case SectionKind::Multicategory: r = check_multicategory(*std::get<MultiRef>(s.value)); break;
      case SectionKind::Monoidal: r = check_monoidal(std::get<MonoidalCategory>(s.value)); break;
      case SectionKind::StrictMonoidal:
        r = check_strict_monoidal(*std::get<std::shared_ptr<const StrictMonCat>>(s.value));
        break;
      case SectionKind::LaxBundle: r = check_lax_functor(std::get<LaxSection>(s.value).lax); break;
      case SectionKind::Tree: break;
      case SectionKind::LabelledTree: {
        const auto& l = std::get<LabelledTree>(s.value);
        r = check_labelling(l);
        if (r.ok()) r = check_graft_orders(l);
        break;
      }
    }
    ok = report(out, std::string(to_string(s.kind)) + " " + s.name, r) && ok;
  }
  out << "result: " << (ok ? "ok" : "law violation") << '\n';
  return ok ? 0 : 1;
}

int cmd_compose_prof(const Args& a, std::ostream& out) {
  const Document doc = load(a.file);
  if (a.names.size() != 2) throw StructuralError("compose-prof needs two profunctor names");
  const auto& p = std::get<ProfunctorSection>(doc.get(SectionKind::Profunctor, a.names[0]).value).profunctor;
  const auto& q = std::get<ProfunctorSection>(doc.get(SectionKind::Profunctor, a.names[1]).value).profunctor;
  require(out, "profunctor " + a.names[0], check_profunctor(p));
  require(out, "profunctor " + a.names[1], check_profunctor(q));
  const Composite c = compose(p, q);
  require(out, "induced actions", c.well_defined);
  const std::string name = a.names[0] + "." + a.names[1];
  out << "composite " << name << ": " << c.profunctor.total_elements() << " elements\n";
  Document result;
  result.add(name, ProfunctorSection{c.profunctor, std::nullopt});
  out << print_document(result, &doc);
  return 0;
}

int cmd_kleisli(const Args& a, std::ostream& out) {
  const Document doc = load(a.file);
  const Section& s = doc.get(SectionKind::Profunctor, name_arg(a, 0));
  const auto& ps = std::get<ProfunctorSection>(s.value);
  if (!ps.monad) throw StructuralError("profunctor " + s.name + " has no unit and mult records");
  require(out, "monad " + s.name, check_prof_monad(*ps.monad));
  const Kleisli k = kleisli(*ps.monad);
  const Representables j = representable(k.inclusion);
  const Composite jj = compose(j.lower, j.upper);
  const auto back = kleisli_reconstruction(*ps.monad, k, jj);
  const bool iso = back && is_isomorphism(jj.profunctor, ps.profunctor, *back);
  out << "kleisli category of " << s.name << ": " << k.category->object_count() << " objects, "
      << k.category->morphism_count() << " morphisms\n";
  report(out, "category laws", check_category(*k.category));
  out << "reconstruction J_# . J^* -> " << s.name << ": " << (iso ? "isomorphism" : "not an isomorphism") << '\n';
  Document result;
  result.add("Kl." + s.name, k.category);
  result.add("J." + s.name, k.inclusion);
  out << print_document(result, &doc);
  return iso ? 0 : 1;
}

int cmd_free_monoidal(const Args& a, std::ostream& out) {
  const Document doc = load(a.file);
  const Section& s = doc.get(SectionKind::Multicategory, name_arg(a, 0));
  const MultiRef m = std::get<MultiRef>(s.value);
  require(out, "multicategory " + s.name, check_multicategory(*m));
  const int bound = a.bound.value_or(m->arity_cap());
  const FreeMonoidal f(m);
  const MaterializedFree mat = materialize(f, bound);
  const FinCat& c = mat.cat.category();
  out << "free strict monoidal category on " << s.name << ", lists up to length " << bound << '\n';
  out << "objects " << c.object_count() << '\n' << "morphisms " << c.morphism_count() << '\n';
  for (int x = 0; x < c.object_count(); ++x)
    for (int y = 0; y < c.object_count(); ++y)
      if (!c.hom(x, y).empty())
        out << "hom " << m->list_name(mat.objects[x]) << ' ' << m->list_name(mat.objects[y]) << ' '
            << c.hom(x, y).size() << '\n';
  bool ok = report(out, "strict monoidal laws", check_strict_monoidal(mat.cat));
  ok = report(out, "zeta fully faithful", check_zeta_fully_faithful(f, bound)) && ok;
  return ok ? 0 : 1;
}

int cmd_classify_lax(const Args& a, std::ostream& out) {
  const Document doc = load(a.file);
  const Section& ms = doc.get(SectionKind::Multicategory, name_arg(a, 0));
  const Section& ds = doc.get(SectionKind::StrictMonoidal, name_arg(a, 1));
  const MultiRef m = std::get<MultiRef>(ms.value);
  const auto& d = *std::get<std::shared_ptr<const StrictMonCat>>(ds.value);
  require(out, "multicategory " + ms.name, check_multicategory(*m));
  require(out, "strictmonoidal " + ds.name, check_strict_monoidal(d));
  if (d.truncated()) throw StructuralError("classify-lax needs an untruncated target");
  const int bound = a.bound.value_or(3);
  const LaxClassification lc = classify_lax_morphisms(*m, d, bound);
  if (lc.partial) throw BoundExceeded("candidate enumeration cap reached");
  const auto dn = object_names(d.category());
  out << "lax morphisms " << ms.name << " -> R(" << ds.name << "): " << lc.morphisms.size() << '\n';
  out << "strict monoidal functors F(" << ms.name << ") -> " << ds.name << ": " << lc.functors.size() << '\n';
  for (std::size_t i = 0; i < lc.morphisms.size(); ++i) {
    out << "morphism " << i << " <-> functor " << lc.to_functor[i] << " objects";
    for (int x = 0; x < m->object_count(); ++x)
      out << ' ' << m->object_name(x) << "->" << dn[lc.morphisms[i].object_map[x]];
    out << '\n';
  }
  return report(out, "bijection", lc.report) ? 0 : 1;
}

int cmd_delta(const Args& a, std::ostream& out) {
  const int n = a.max.value_or(4);
  if (n < 0) throw StructuralError("--max must be non-negative");
  const Delta d = delta(n);
  const FreeMonoidal f(share(terminal_multicategory(n)));
  const MaterializedFree fr = materialize(f, n);
  const FinCat& c = d.cat.category();
  const FinCat& fc = fr.cat.category();
  out << "hom sizes of Delta, n -> m for n, m <= " << n << '\n' << "n\\m";
  for (int m = 0; m <= n; ++m) out << ' ' << m;
  out << '\n';
  bool agree = true;
  for (int x = 0; x <= n; ++x) {
    out << x;
    for (int y = 0; y <= n; ++y) {
      const std::size_t size = c.hom(x, y).size();
      out << ' ' << size;
      const std::size_t free_size = fc.hom(fr.object_index(List(x, 0)), fr.object_index(List(y, 0))).size();
      agree = agree && size == free_size && size == compositions(x, y).size();
    }
    out << '\n';
  }
  out << "F(R(1)) hom sizes agree: " << (agree ? "yes" : "no") << '\n';
  const Functor iso = delta_to_free(d, fr);
  const bool is_iso = is_isomorphism(iso);
  out << "Delta -> F(R(1)): " << (is_iso ? "isomorphism" : "not an isomorphism") << '\n';
  return agree && is_iso ? 0 : 1;
}

int cmd_monoids(const Args& a, std::ostream& out) {
  const Document doc = load(a.file);
  const Section& s = doc.get(SectionKind::StrictMonoidal, name_arg(a, 0));
  const auto& d = *std::get<std::shared_ptr<const StrictMonCat>>(s.value);
  require(out, "strictmonoidal " + s.name, check_strict_monoidal(d));
  const int bound = a.bound.value_or(3);
  const MonoidClassification mc = classify_monoids(d, bound);
  const auto on = object_names(d.category());
  const auto mn = morphism_names(d.category());
  out << "monoids in " << s.name << ": " << mc.direct.size() << '\n';
  for (const auto& m : mc.direct)
    out << "monoid carrier " << on[m.carrier] << " unit " << mn[m.unit] << " mult " << mn[m.mult] << '\n';
  out << "strict monoidal functors Delta_" << bound << " -> " << s.name << ": " << mc.functors.size() << '\n';
  return report(out, "classification", mc.report) ? 0 : 1;
}

int cmd_strictify(const Args& a, std::ostream& out) {
  const Document doc = load(a.file);
  const Section& s = doc.get(SectionKind::Monoidal, name_arg(a, 0));
  const auto& c = std::get<MonoidalCategory>(s.value);
  require(out, "monoidal " + s.name, check_monoidal(c));
  const int bound = a.bound.value_or(4);
  const Strictification st = strictify(c, bound);
  const FinCat& sc = st.strict->category();
  out << "strictification of " << s.name << ", lists up to length " << bound << '\n';
  out << "objects " << sc.object_count() << '\n' << "morphisms " << sc.morphism_count() << '\n';
  bool ok = report(out, "strict model", st.report);
  out << "comparison strong monoidal: " << (st.strong ? "yes" : "no") << '\n';
  out << "equivalence: " << to_string(st.equivalence.status);
  if (!st.equivalence.reason.empty()) out << " (" << st.equivalence.reason << ')';
  out << '\n';
  const auto son = object_names(sc);
  const auto smn = morphism_names(sc);
  const auto con = object_names(*c.base);
  for (std::size_t z = 0; z < st.equivalence.essential_witnesses.size(); ++z) {
    const auto [x, iso] = st.equivalence.essential_witnesses[z];
    out << "witness " << son[z] << " <- " << con[x] << " via " << smn[iso] << '\n';
  }
  Document result;
  result.add(s.name + ".strict", st.strict->base());
  result.add(s.name + ".strict.mon", st.strict);
  result.add(s.name + ".comparison", st.comparison);
  out << print_document(result, &doc);
  if (st.equivalence.status == Verdict::Indeterminate) return 2;
  return ok && st.strong && st.equivalence.status == Verdict::Holds ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_tree_realize(const Args& a, std::ostream& out) {
  const Tree t = parse_tree(a.tree_a);
  const GlobularSet g = realize(t);
  out << "tree " << to_string(t) << '\n' << "height " << height(t) << '\n' << "levels";
  for (int n : level_counts(t)) out << ' ' << n;
  out << '\n' << "cells";
  for (int k = 0; k <= g.dim(); ++k) out << ' ' << g.count(k);
  out << '\n';
  for (int k = 0; k <= g.dim(); ++k)
    for (int c = 0; c < g.count(k); ++c) {
      out << "cell " << k << ' ' << g.names[k][c];
      if (k > 0) out << ' ' << g.names[k - 1][g.src[k][c]] << " -> " << g.names[k - 1][g.tgt[k][c]];
      out << '\n';
    }
  return report(out, "globular", check_globular(g)) ? 0 : 1;
}

int cmd_tree_compose(const Args& a, std::ostream& out) {
  const Tree s = parse_tree(a.tree_a);
  const Tree t = parse_tree(a.tree_b);
  out << to_string(compose(s, t, a.level)) << '\n';
  return 0;
}

int cmd_tree_graft(const Args& a, std::ostream& out) {
  const Document doc = load(a.file);
  const Section& s = doc.get(SectionKind::LabelledTree, name_arg(a, 0));
  const auto& l = std::get<LabelledTree>(s.value);
  require(out, "labelledtree " + s.name, check_labelling(l));
  out << "shape " << to_string(l.shape) << '\n' << "graft " << to_string(graft(l)) << '\n';
  return report(out, "evaluation orders", check_graft_orders(l)) ? 0 : 1;
}

int cmd_tree_calculus(const Args& a, std::ostream& out) {
  const int nodes = a.max.value_or(8);
  const int dim = a.bound.value_or(3);
  std::vector<Tree> trees = enumerate_trees(nodes, dim);
  const std::size_t total = trees.size();
  if (a.sample && static_cast<std::size_t>(*a.sample) < trees.size()) {
    std::vector<std::size_t> idx(trees.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937 rng(a.seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(*a.sample);
    std::sort(idx.begin(), idx.end());
    std::vector<Tree> picked;
    for (std::size_t i : idx) picked.push_back(trees[i]);
    trees = std::move(picked);
  }
  const TreeCalculusResult r = check_tree_calculus(trees, dim);
  out << "trees with at most " << nodes << " nodes and height at most " << dim << ": " << total << '\n';
  if (trees.size() != total) out << "sample " << trees.size() << " with seed " << a.seed << '\n';
  out << "instances " << r.instances << '\n' << "failures " << r.failures << '\n';
  return report(out, "tree calculus", r.report) ? 0 : 1;
}

// ---------------------------------------------------------------------------

const LaxSection& lax_section(const Document& doc, const Args& a, std::ostream& out, std::string* name) {
  const Section& s = doc.get(SectionKind::LaxBundle, name_arg(a, 0));
  const auto& ls = std::get<LaxSection>(s.value);
  require(out, "laxbundle " + s.name, check_lax_functor(ls.lax));
  *name = s.name;
  return ls;
}

int cmd_groth_build(const Args& a, std::ostream& out) {
  const Document doc = load(a.file);
  std::string name;
  const LaxSection& ls = lax_section(doc, a, out, &name);
  const Grothendieck g = grothendieck(ls.lax);
  out << "total category of " << name << ": " << g.total->object_count() << " objects, "
      << g.total->morphism_count() << " morphisms\n";
  const bool ok = report(out, "category laws", check_category(*g.total));
  Document result;
  result.add(name + ".total", g.total);
  result.add(name + ".projection", g.projection);
  out << print_document(result, &doc);
  return ok ? 0 : 1;
}

int cmd_groth_representable(const Args& a, std::ostream& out) {
  const Document doc = load(a.file);
  std::string name;
  const LaxSection& ls = lax_section(doc, a, out, &name);
  const FinCat& base = *ls.lax.base;
  const auto bn = morphism_names(base);
  const RepresentabilityResult r = is_representable_lax(ls.lax);
  out << "representable: " << (r.pseudo ? "yes" : "no") << '\n';
  if (!r.pseudo) {
    out << "failure: " << r.failure << '\n';
    return 0;
  }
  const PseudoFunctor& p = *r.pseudo;
  const bool ok = report(out, "pseudo-functor laws", check_pseudo_functor(p));
  Document result;
  for (int f = 0; f < base.morphism_count(); ++f) {
    if (base.is_identity(f)) continue;
    const Profunctor& m = ls.lax.arrow(f);
    const auto fiber = object_names(*m.source());
    for (std::size_t b = 0; b < r.universal[f].size(); ++b) {
      const int target = p.maps[f].on_object(static_cast<int>(b));
      out << "universal " << bn[f] << ' ' << fiber[b] << ' '
          << printable_names(m.names()[m.fiber_index(static_cast<int>(b), target)], "e")[r.universal[f][b]] << '\n';
    }
    result.add(name + ".G." + bn[f], p.maps[f]);
  }
  for (const auto& [fg, comps] : p.comparison) {
    const auto [f, g] = fg;
    const FinCat& dom = *p.fibers[base.dom(g)];
    const FinCat& cod = *p.fibers[base.cod(f)];
    const auto dn = object_names(dom);
    const auto cn = morphism_names(cod);
    for (std::size_t b = 0; b < comps.size(); ++b)
      out << "comparison " << bn[f] << ' ' << bn[g] << ' ' << dn[b] << ' ' << cn[comps[b]] << '\n';
  }
  out << print_document(result, &doc);
  return ok ? 0 : 1;
}

int cmd_groth_lifts(const Args& a, std::ostream& out) {
  const Document doc = load(a.file);
  const std::string wanted = name_arg(a, 0);
  const Section* s = wanted.empty() ? nullptr : doc.find(wanted);
  if (!wanted.empty() && !s) throw StructuralError("no section named " + wanted);
  if (!s)
    for (const auto& sec : doc.sections)
      if (sec.kind == SectionKind::LaxBundle || sec.kind == SectionKind::Functor) {
        s = &sec;
        break;
      }
  if (!s || (s->kind != SectionKind::LaxBundle && s->kind != SectionKind::Functor))
    throw StructuralError("groth lifts needs a laxbundle or functor section");
  Functor p;
  if (s->kind == SectionKind::Functor) {
    p = std::get<Functor>(s->value);
    require(out, "functor " + s->name, check_functor(p));
  } else {
    const auto& ls = std::get<LaxSection>(s->value);
    require(out, "laxbundle " + s->name, check_lax_functor(ls.lax));
    p = grothendieck(ls.lax).projection;
    require(out, "total category", check_category(*p.source));
  }
  const LiftReport lr = cocartesian_lifts(p);
  const auto en = morphism_names(*p.source);
  const auto eo = object_names(*p.source);
  const auto cn = morphism_names(*p.target);
  out << lr.convention << '\n';
  for (std::size_t i = 0; i < lr.entries.size(); ++i) {
    const LiftEntry& e = lr.entries[i];
    out << "lift " << cn[e.f] << ' ' << eo[e.object] << ": " << e.candidates.size() << " candidates, cocartesian";
    if (e.cocartesian.empty()) out << " none";
    for (int m : e.cocartesian) out << ' ' << en[m];
    if (lr.chosen[i] >= 0) out << ", chosen " << en[lr.chosen[i]];
    out << '\n';
  }
  out << "verdict: " << to_string(lr.verdict) << '\n';
  if (!lr.witness.empty()) out << "witness: " << lr.witness << '\n';
  if (!lr.split_decided) out << "split search: undecided\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out) {
  CLI::App app("catkit: finite category theory toolkit", "catkit");
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  app.add_option("--seed", a.seed, "seed of randomized commands")->capture_default_str();
  std::function<int(const Args&, std::ostream&)> action;

  auto file_cmd = [&](const char* name, const char* help, auto fn, const char* names_help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", a.file, "catkit document")->required();
    sub->add_option("names", a.names, names_help);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  file_cmd("validate", "check the laws of every section", cmd_validate, "unused");
  file_cmd("compose-prof", "compose two profunctors", cmd_compose_prof, "P Q");
  file_cmd("kleisli", "Kleisli category of a profunctor monad", cmd_kleisli, "monad section");
  file_cmd("free-monoidal", "free strict monoidal category on a multicategory", cmd_free_monoidal, "multicategory")
      ->add_option("--bound", a.bound, "list length bound");
  file_cmd("classify-lax", "lax morphisms against strict monoidal functors", cmd_classify_lax, "M D")
      ->add_option("--bound", a.bound, "list length bound");
  file_cmd("monoids", "monoids in a strict monoidal category", cmd_monoids, "strictmonoidal section")
      ->add_option("--bound", a.bound, "size bound of Delta");
  file_cmd("strictify", "strictify a monoidal category", cmd_strictify, "monoidal section")
      ->add_option("--bound", a.bound, "object length bound");
  {
    CLI::App* sub = app.add_subcommand("delta", "the simplex category against F(R(1))");
    sub->add_option("--max", a.max, "largest ordinal");
    sub->callback([&] { action = cmd_delta; });
  }
  {
    CLI::App* tree = app.add_subcommand("tree", "pasting diagrams");
    tree->require_subcommand(1);
    CLI::App* realize = tree->add_subcommand("realize", "cells of a tree");
    realize->add_option("tree", a.tree_a)->required();
    realize->callback([&] { action = cmd_tree_realize; });
    CLI::App* comp = tree->add_subcommand("compose", "k-composite of two trees");
    comp->add_option("k", a.level)->required()->check(CLI::NonNegativeNumber);
    comp->add_option("first", a.tree_a)->required();
    comp->add_option("second", a.tree_b)->required();
    comp->callback([&] { action = cmd_tree_compose; });
    CLI::App* g = tree->add_subcommand("graft", "graft a labelled tree");
    g->add_option("file", a.file)->required();
    g->add_option("names", a.names);
    g->callback([&] { action = cmd_tree_graft; });
    CLI::App* calc = tree->add_subcommand("calculus", "laws of the k-compositions");
    calc->add_option("--max", a.max, "node bound");
    calc->add_option("--bound", a.bound, "height bound, the cell dimension");
    calc->add_option("--sample", a.sample, "check a seeded random sample of this many trees");
    calc->callback([&] { action = cmd_tree_calculus; });
  }
  {
    CLI::App* groth = app.add_subcommand("groth", "lax functors into profunctors");
    groth->require_subcommand(1);
    auto add = [&](const char* name, const char* help, int (*fn)(const Args&, std::ostream&)) {
      CLI::App* sub = groth->add_subcommand(name, help);
      sub->add_option("file", a.file)->required();
      sub->add_option("names", a.names);
      sub->callback([&action, fn] { action = fn; });
    };
    add("build", "total category and projection", cmd_groth_build);
    add("representable", "representing pseudo-functor", cmd_groth_representable);
    add("lifts", "cocartesian lifts and the cofibration verdict", cmd_groth_lifts);
  }

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream err;
    const int code = app.exit(e, out, err);
    out << err.str();
    return code == 0 ? 0 : 2;
  }
  try {
    return action(a, out);
  } catch (const FileParseError& e) {
    out << format_error(e.error, e.path) << '\n';
  } catch (const LawViolation& e) {
    out << "law violation: " << e.what() << '\n' << e.report();
    return 1;
  } catch (const BoundExceeded& e) {
    out << "error: bound exceeded: " << e.what() << '\n';
  } catch (const StructuralError& e) {
    out << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace catkit
