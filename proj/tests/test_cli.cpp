#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "catkit/commands.hpp"
#include "catkit/strictify.hpp"
#include "catkit/text_format.hpp"
#include "support.hpp"
#include "support_tree.hpp"

using namespace catkit;
using namespace catkit::testing;

namespace {

const std::string kData = CATKIT_TEST_DATA;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Drops comment lines; the canonical form has none.
std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') out += line + '\n';
  return out;
}

struct Run {
  int status;
  std::string output;
};

Run catkit_run(const std::vector<std::string>& args) {
  std::ostringstream out;
  const int status = run(args, out);
  return {status, out.str()};
}

std::string data(const std::string& file) { return kData + "/" + file; }

// A scratch file that is removed at scope exit.
struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& text)
      : path(std::filesystem::temp_directory_path() / ("catkit_test_" + name)) {
    std::ofstream(path, std::ios::binary) << text;
  }
  ~TempFile() { std::filesystem::remove(path); }
  std::string str() const { return path.string(); }
};

ParseCode code_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e.code();
  }
  FAIL("expected a parse error");
  return ParseCode::Syntax;
}

std::string reprint(const std::string& text) { return print_document(parse_document(text)); }

}  // namespace

TEST_CASE("the canonical walking arrow parses and prints back byte for byte") {
  const std::string text = read_file(data("arrow.cat"));
  const Document doc = parse_document(text);
  REQUIRE(doc.sections.size() == 1);
  const CatRef c = std::get<CatRef>(doc.get(SectionKind::Category, "arrow").value);
  CHECK(c->same_structure(walking_arrow()));
  CHECK(c->object_name(0) == "a");
  CHECK(print_document(doc) == text);
}

TEST_CASE("printed fixtures are canonical") {
  for (const char* file : {"cocycle.mon", "trivial.mon", "strict_action.lax", "twisted.lax", "collage.lax",
                           "generic.tree", "arrow.cat"}) {
    CAPTURE(file);
    const std::string text = strip_comments(read_file(data(file)));
    CHECK(reprint(text) == text);
  }
  // Hand-written files reach a fixed point after one print.
  for (const char* file : {"profunctors.cat", "monad.prof", "monoid.multi", "stack.tree", "broken_assoc.cat"}) {
    CAPTURE(file);
    const std::string once = reprint(read_file(data(file)));
    CHECK(reprint(once) == once);
  }
}

TEST_CASE("the cocycle file holds the tables of the built-in example") {
  const Document doc = parse_document(read_file(data("cocycle.mon")));
  const auto& parsed = std::get<MonoidalCategory>(doc.get(SectionKind::Monoidal).value);
  const MonoidalCategory built = cocycle_example(standard_cocycle());
  const FinCat& p = *parsed.base;
  const FinCat& b = *built.base;
  // Parsing numbers identities first, so compare through names.
  REQUIRE(p.object_count() == b.object_count());
  REQUIRE(p.morphism_count() == b.morphism_count());
  std::vector<int> ob(b.object_count()), mor(b.morphism_count());
  for (int x = 0; x < b.object_count(); ++x) {
    const auto y = p.find_object(b.object_name(x));
    REQUIRE(y.has_value());
    ob[x] = *y;
  }
  for (int f = 0; f < b.morphism_count(); ++f) {
    const auto g = p.find_morphism(b.morphism_name(f));
    REQUIRE(g.has_value());
    mor[f] = *g;
    CHECK(p.dom(*g) == ob[b.dom(f)]);
    CHECK(p.cod(*g) == ob[b.cod(f)]);
  }
  for (int f = 0; f < b.morphism_count(); ++f)
    for (int g : b.out(b.cod(f))) CHECK(p.compose(mor[g], mor[f]) == mor[b.compose(g, f)]);
  CHECK(parsed.unit == ob[built.unit]);
  const int n = b.object_count();
  for (int x = 0; x < n; ++x) {
    CHECK(parsed.lambda[ob[x]] == mor[built.lambda[x]]);
    CHECK(parsed.rho[ob[x]] == mor[built.rho[x]]);
    for (int y = 0; y < n; ++y) {
      CHECK(parsed.tensor(ob[x], ob[y]) == ob[built.tensor(x, y)]);
      for (int z = 0; z < n; ++z) CHECK(parsed.assoc(ob[x], ob[y], ob[z]) == mor[built.assoc(x, y, z)]);
    }
  }
  for (int f = 0; f < b.morphism_count(); ++f)
    for (int g = 0; g < b.morphism_count(); ++g) CHECK(parsed.tensor_m(mor[f], mor[g]) == mor[built.tensor_m(f, g)]);
}

TEST_CASE("a tree literal parses with its level counts") {
  const Document doc = parse_document("begin tree t\nshape [[[],[]]]\nend\n");
  const auto& t = std::get<TreeCell>(doc.get(SectionKind::Tree, "t").value);
  CHECK(level_counts(t.shape) == std::vector<int>{1, 1, 2});
  CHECK(t.dim == 2);
  CHECK(reprint("begin tree t\nshape [[[],[]]]\ndim 4\nend\n") == "begin tree t\nshape [[[],[]]]\ndim 4\nend\n");
}

TEST_CASE("parse errors carry a distinct code and their location") {
  SUBCASE("dangling reference") {
    try {
      parse_document(read_file(data("dangling.cat")));
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.code() == ParseCode::DanglingReference);
      CHECK(e.line() == 4);
      CHECK(e.column() == 14);
      CHECK(e.section() == "category arrow");
      CHECK(format_error(e, "dangling.cat") ==
            "dangling.cat:4:14: error[dangling-reference] in category arrow: undefined object c");
    }
  }
  SUBCASE("unknown kind") {
    try {
      parse_document(read_file(data("unknown_kind.cat")));
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.code() == ParseCode::UnknownKind);
      CHECK(e.line() == 5);
      CHECK(e.column() == 7);
    }
  }
  SUBCASE("arity mismatch of a multiarrow") {
    try {
      parse_document(read_file(data("arity.multi")));
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.code() == ParseCode::ArityMismatch);
      CHECK(e.line() == 4);
    }
  }
  const std::string arrow = "begin category C\nobject a\nobject b\nmorphism u a b\nend\n";
  CHECK(code_of("begin category C\nmorphism u a\nend\n") == ParseCode::ArityMismatch);
  CHECK(code_of("begin category C\nobjekt a\nend\n") == ParseCode::UnknownKey);
  CHECK(code_of("begin category C\nobject a\nobject a\nend\n") == ParseCode::DuplicateName);
  CHECK(code_of(arrow + "begin category C\nend\n") == ParseCode::DuplicateName);
  CHECK(code_of("begin category C\nobject a\n") == ParseCode::Syntax);
  CHECK(code_of("object a\n") == ParseCode::Syntax);
  CHECK(code_of("begin tree t\nshape [[]\nend\n") == ParseCode::Syntax);
  CHECK(code_of("begin tree t\nshape [[]]\ndim x\nend\n") == ParseCode::Syntax);
  CHECK(code_of("begin tree t\nshape [[]]\ndim 0\nend\n") == ParseCode::Invalid);
  CHECK(code_of(arrow + "begin functor F\nsource C\ntarget D\nend\n") == ParseCode::DanglingReference);
  CHECK(code_of(arrow + "begin functor F\nsource C\ntarget C\nobject a a\nend\n") == ParseCode::Incomplete);
  CHECK(code_of(arrow + "begin functor F\nsource C\nend\n") == ParseCode::Incomplete);
  CHECK(code_of(arrow + "begin category D\nobject x\ncompose id_x id_x id_x\ncompose id_x id_x id_x\nend\n") ==
        ParseCode::DuplicateName);
  CHECK(code_of(arrow + "begin profunctor P\nsource C\ntarget C\nelement a b p\nelement b b q\nend\n") ==
        ParseCode::Incomplete);
  CHECK(code_of(arrow + "begin category D\nobject x\ncompose u id_x u\nend\n") == ParseCode::DanglingReference);
  CHECK(code_of(arrow + "begin category D\nobject x\nobject y\nmorphism f x y\ncompose f f f\nend\n") ==
        ParseCode::Invalid);
}

TEST_CASE("categories, functors and profunctors survive print and parse") {
  Rng rng(2024);
  for (int rep = 0; rep < 60; ++rep) {
    Document doc;
    const CatRef x = share(random_category(rng, 4, 12));
    const CatRef y = share(random_category(rng, 4, 12));
    doc.add("X", x);
    doc.add("Y", y);
    doc.add("F", random_functor(rng, x, y));
    doc.add("P", ProfunctorSection{random_profunctor(rng, x, y), std::nullopt});
    const std::string text = print_document(doc);
    const Document back = parse_document(text);
    CHECK(print_document(back) == text);
    const CatRef x2 = std::get<CatRef>(back.get(SectionKind::Category, "X").value);
    const CatRef y2 = std::get<CatRef>(back.get(SectionKind::Category, "Y").value);
    // Parsing renumbers identities first; compare through names.
    auto morphism_map = [](const FinCat& from, const FinCat& to) {
      std::vector<int> m;
      for (int f = 0; f < from.morphism_count(); ++f) m.push_back(*to.find_morphism(from.morphism_name(f)));
      return m;
    };
    Functor rename{x, x2, {}, morphism_map(*x, *x2)};
    for (int o = 0; o < x->object_count(); ++o) rename.object_map.push_back(o);
    CHECK(is_isomorphism(rename));
    const auto& f = std::get<Functor>(doc.get(SectionKind::Functor, "F").value);
    const auto& f2 = std::get<Functor>(back.get(SectionKind::Functor, "F").value);
    CHECK(f2.object_map == f.object_map);
    const auto ym = morphism_map(*y, *y2);
    for (int m = 0; m < x->morphism_count(); ++m) CHECK(f2.on_morphism(rename.on_morphism(m)) == ym[f.on_morphism(m)]);
    const auto& p = std::get<ProfunctorSection>(doc.get(SectionKind::Profunctor, "P").value).profunctor;
    const auto& p2 = std::get<ProfunctorSection>(back.get(SectionKind::Profunctor, "P").value).profunctor;
    CHECK(p2.sizes() == p.sizes());
    for (int u = 0; u < x->morphism_count(); ++u)
      for (int b = 0; b < y->object_count(); ++b)
        for (int e = 0; e < p.fiber_size(x->cod(u), b); ++e)
          CHECK(p2.left(rename.on_morphism(u), b, e) == p.left(u, b, e));
    CHECK(check_profunctor(p2) == check_profunctor(p));
  }
}

TEST_CASE("seeded defects survive printing and surface as exit 1") {
  Rng rng(99);
  int defects = 0;
  for (int rep = 0; rep < 40; ++rep) {
    FinCat c = random_category(rng, 3, 10);
    std::vector<std::pair<int, int>> pairs;
    for (int f = 0; f < c.morphism_count(); ++f)
      for (int g : c.out(c.cod(f)))
        if (!c.is_identity(f) && !c.is_identity(g)) pairs.emplace_back(g, f);
    if (!pairs.empty()) {
      const auto [g, f] = pairs[uniform(rng, 0, static_cast<int>(pairs.size()) - 1)];
      const auto hom = c.hom(c.dom(f), c.cod(g));
      c = c.with_composite(g, f, hom[uniform(rng, 0, static_cast<int>(hom.size()) - 1)]);
    }
    Document doc;
    doc.add("C", share(c));
    const TempFile file("defect.cat", print_document(doc));
    const Report expected = check_category(c);
    const Run r = catkit_run({"validate", file.str()});
    CHECK(r.status == (expected.ok() ? 0 : 1));
    if (!expected.ok()) {
      ++defects;
      CHECK(r.output.find("violation " + expected.items()[0].law + ": ") != std::string::npos);
    }
  }
  CHECK(defects >= 5);
}

TEST_CASE("profunctor monads survive print and parse") {
  // Hom as a monad, and a monad on the point given by an idempotent monoid.
  const CatRef x = share(product(walking_arrow(), cyclic_group(2)));
  const Profunctor hom = hom_profunctor(x);
  const ProfMonad m = make_prof_monad(hom, [&](int u) { return x->hom_position(u); },
                                      [&](int a, int b, int c, int p, int q) {
                                        return x->hom_position(x->compose(x->hom(b, c)[q], x->hom(a, b)[p]));
                                      });
  REQUIRE(check_prof_monad(m).ok());
  Document doc;
  doc.add("X", x);
  doc.add("M", ProfunctorSection{hom, m});
  const std::string text = print_document(doc);
  const Document back = parse_document(text);
  CHECK(print_document(back) == text);
  const auto& m2 = *std::get<ProfunctorSection>(back.get(SectionKind::Profunctor, "M").value).monad;
  CHECK(check_prof_monad(m2).ok());
  CHECK(kleisli(m2).category->morphism_count() == x->morphism_count());

  const Document file = parse_document(read_file(data("monad.prof")));
  const auto& idem = *std::get<ProfunctorSection>(file.get(SectionKind::Profunctor, "M").value).monad;
  CHECK(check_prof_monad(idem).ok());
  // A class without any given value is incomplete.
  const std::string partial = "begin category point\nobject *\nend\nbegin profunctor M\nsource point\n"
                              "target point\nelement * * e\nelement * * a\nunit id_* e\nmult * * * e e e\nend\n";
  CHECK(code_of(partial) == ParseCode::Incomplete);
}

TEST_CASE("multicategories survive print and parse") {
  for (int n : {1, 2, 3}) {
    const Multicategory rd = underlying_multicat(discrete_group(n), 3);
    Document doc;
    doc.add("R", share(rd));
    const std::string text = print_document(doc);
    const Document back = parse_document(text);
    CHECK(print_document(back) == text);
    const auto& m2 = *std::get<MultiRef>(back.get(SectionKind::Multicategory).value);
    CHECK(m2.arrow_count() == rd.arrow_count());
    CHECK(m2.composites().size() == rd.composites().size());
    CHECK(check_multicategory(m2).ok());
  }
  const Document doc = parse_document(read_file(data("monoid.multi")));
  const auto& m = *std::get<MultiRef>(doc.get(SectionKind::Multicategory, "monoid").value);
  CHECK(m.truncated());
  CHECK(m.arity_cap() == 2);
  CHECK(check_multicategory(m).ok());
  // The same theory with a composite missing fails its laws.
  std::string text = read_file(data("monoid.multi"));
  text.erase(text.find("compose m m u m\n"), 16);
  const Document broken_doc = parse_document(text);
  const auto& broken = *std::get<MultiRef>(broken_doc.get(SectionKind::Multicategory).value);
  CHECK_FALSE(check_multicategory(broken).ok());
}

TEST_CASE("lax bundles survive print and parse") {
  Rng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const CatRef base = share(free_category_on_dag(3, {{0, 1}, {1, 2}}));
    std::vector<CatRef> fibers;
    for (int i = 0; i < 3; ++i) fibers.push_back(share(random_category(rng, 3, 8)));
    std::vector<Functor> maps(base->morphism_count());
    for (int x = 0; x < 3; ++x) maps[base->identity(x)] = identity_functor(fibers[x]);
    const int u = base->hom(0, 1)[0], v = base->hom(1, 2)[0], w = base->hom(0, 2)[0];
    maps[u] = random_functor(rng, fibers[0], fibers[1]);
    maps[v] = random_functor(rng, fibers[1], fibers[2]);
    maps[w] = compose_functors(maps[v], maps[u]);
    const LaxProfFunctor l = lax_from_pseudo(strict_pseudo(base, fibers, maps));
    Document doc;
    doc.add("B", base);
    for (int i = 0; i < 3; ++i) doc.add("F" + std::to_string(i), fibers[i]);
    LaxSection ls{l, std::vector<std::string>(base->morphism_count())};
    for (int f : {u, v, w}) {
      ls.arrow_sections[f] = "M" + std::to_string(f);
      doc.add(ls.arrow_sections[f], ProfunctorSection{l.arrow(f), std::nullopt});
    }
    doc.add("L", ls);
    const std::string text = print_document(doc);
    const Document back = parse_document(text);
    CHECK(print_document(back) == text);
    const LaxProfFunctor& l2 = std::get<LaxSection>(back.get(SectionKind::LaxBundle).value).lax;
    CHECK(check_lax_functor(l2).ok());
    REQUIRE(l2.mults.size() == l.mults.size());
    for (std::size_t i = 0; i < l.mults.size(); ++i) CHECK(l2.mults[i].values == l.mults[i].values);
  }
}

TEST_CASE("labelled trees survive print and parse") {
  Rng rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    const Tree shape = random_tree(rng, 7, 3);
    Document doc;
    doc.add("L", random_labelling<Tree>(rng, shape));
    doc.add("T", TreeCell{shape, height(shape) + rep % 2});
    const std::string text = print_document(doc);
    const Document back = parse_document(text);
    CHECK(print_document(back) == text);
    CHECK(std::get<LabelledTree>(back.get(SectionKind::LabelledTree).value) ==
          std::get<LabelledTree>(doc.get(SectionKind::LabelledTree).value));
  }
}

TEST_CASE("names that cannot be printed are replaced deterministically") {
  CHECK(printable_names({"a", "b"}, "o") == std::vector<std::string>{"a", "b"});
  CHECK(printable_names({"a", "a", ""}, "o") == std::vector<std::string>{"a", "a@1", "o2"});
  CHECK(printable_names({"x y", "#", "->"}, "m") == std::vector<std::string>{"m0", "m1", "m2"});
  CHECK(printable_names({"a", "a", "a@1"}, "o") == std::vector<std::string>{"a", "a@1'", "a@1"});
  // A category with clashing names still round-trips.
  CategoryBuilder b;
  const int x = b.add_object("p");
  const int y = b.add_object("p");
  b.add_morphism(x, y, "f");
  b.add_morphism(x, y, "f");
  Document doc;
  doc.add("C", share(b.build()));
  const std::string text = print_document(doc);
  CHECK(reprint(text) == text);
}

// ---------------------------------------------------------------------------
// Commands

TEST_CASE("validate reports per section and sets the exit status") {
  Run r = catkit_run({"validate", data("arrow.cat")});
  CHECK(r.status == 0);
  CHECK(r.output == "category arrow: ok\nresult: ok\n");
  r = catkit_run({"validate", data("broken_assoc.cat")});
  CHECK(r.status == 1);
  CHECK(r.output.find("violation associativity: ") != std::string::npos);
  r = catkit_run({"validate", data("dangling.cat")});
  CHECK(r.status == 2);
  CHECK(r.output.find("dangling.cat:4:14: error[dangling-reference]") != std::string::npos);
  CHECK(catkit_run({"validate", data("unknown_kind.cat")}).status == 2);
  CHECK(catkit_run({"validate", data("arity.multi")}).status == 2);
  CHECK(catkit_run({"validate", data("no_such_file.cat")}).status == 2);
  for (const char* file : {"profunctors.cat", "monad.prof", "monoid.multi", "stack.tree", "generic.tree",
                           "cocycle.mon", "trivial.mon", "strict_action.lax", "twisted.lax", "collage.lax"}) {
    CAPTURE(file);
    CHECK(catkit_run({"validate", data(file)}).status == 0);
  }
}

TEST_CASE("usage errors exit 2") {
  CHECK(catkit_run({}).status == 2);
  CHECK(catkit_run({"frobnicate"}).status == 2);
  CHECK(catkit_run({"delta", "--max", "x"}).status == 2);
  CHECK(catkit_run({"tree"}).status == 2);
  CHECK(catkit_run({"compose-prof", data("profunctors.cat"), "P"}).status == 2);
  CHECK(catkit_run({"kleisli", data("profunctors.cat"), "P"}).status == 2);
  CHECK(catkit_run({"tree", "compose", "0", "[[]]", "[[]"}).status == 2);
  CHECK(catkit_run({"--help"}).status == 0);
}

TEST_CASE("delta prints the hom-size table") {
  const Run r = catkit_run({"delta", "--max", "4"});
  CHECK(r.status == 0);
  // Row n = 2: monotone maps 2 -> m number C(m + 1, 2).
  CHECK(r.output.find("\n2 0 1 3 6 10\n") != std::string::npos);
  CHECK(r.output.find("F(R(1)) hom sizes agree: yes") != std::string::npos);
  CHECK(r.output.find("Delta -> F(R(1)): isomorphism") != std::string::npos);
}

TEST_CASE("strictify emits the strict model and its certificate") {
  for (const char* file : {"cocycle.mon", "trivial.mon"}) {
    CAPTURE(file);
    const Run r = catkit_run({"strictify", data(file), "--bound", "4"});
    REQUIRE(r.status == 0);
    CHECK(r.output.find("objects 31\n") != std::string::npos);
    CHECK(r.output.find("strict model: ok") != std::string::npos);
    CHECK(r.output.find("equivalence: holds") != std::string::npos);
    CHECK(r.output.find("begin strictmonoidal") != std::string::npos);
    // The emitted sections parse against the input and pass validation.
    const std::string sections = r.output.substr(r.output.find("begin "));
    const TempFile both("strict.doc", read_file(data(file)) + "\n" + sections);
    const Run v = catkit_run({"validate", both.str()});
    CHECK(v.status == 0);
  }
  // Coherence failure in the input is a law violation.
  std::string text = read_file(data("cocycle.mon"));
  const auto at = text.find("alpha 0 1 1 +1@0");
  REQUIRE(at != std::string::npos);
  text.replace(at, 16, "alpha 0 1 1 -1@0");
  const TempFile bad("bad.mon", text);
  const Run r = catkit_run({"strictify", bad.str()});
  CHECK(r.status == 1);
  CHECK(r.output.find("violation pentagon: ") != std::string::npos);
}

TEST_CASE("profunctor, monad and multicategory commands") {
  Run r = catkit_run({"compose-prof", data("profunctors.cat"), "P", "Q"});
  CHECK(r.status == 0);
  CHECK(r.output.find("composite P.Q: 2 elements") != std::string::npos);
  r = catkit_run({"kleisli", data("monad.prof")});
  CHECK(r.status == 0);
  CHECK(r.output.find("reconstruction J_# . J^* -> M: isomorphism") != std::string::npos);
  r = catkit_run({"free-monoidal", data("monoid.multi")});
  CHECK(r.status == 0);
  // Lists of length 2 map to (x) by m only, and to (x,x) by id x id, u m, m u.
  CHECK(r.output.find("hom (x,x) (x) 1\n") != std::string::npos);
  CHECK(r.output.find("hom (x,x) (x,x) 3\n") != std::string::npos);
  CHECK(catkit_run({"free-monoidal", data("monoid.multi"), "--bound", "3"}).status == 2);
  r = catkit_run({"classify-lax", data("monoid.multi"), "monoid", "Z2", "--bound", "2"});
  CHECK(r.status == 0);
  CHECK(r.output.find("lax morphisms monoid -> R(Z2): 1") != std::string::npos);
  r = catkit_run({"monoids", data("monoid.multi")});
  CHECK(r.status == 0);
  CHECK(r.output.find("monoids in Z2: 1") != std::string::npos);
  r = catkit_run({"validate", data("monoid.multi")});
  CHECK(r.status == 0);
}

TEST_CASE("tree commands") {
  Run r = catkit_run({"tree", "realize", "[[[],[]]]"});
  CHECK(r.status == 0);
  CHECK(r.output.find("levels 1 1 2\ncells 2 3 2\n") != std::string::npos);
  r = catkit_run({"tree", "compose", "1", "[[[]],[]]", "[[],[[]]]"});
  CHECK(r.status == 0);
  CHECK(r.output == "[[[]],[[]]]\n");
  r = catkit_run({"tree", "compose", "1", "[[]]", "[[],[]]"});
  CHECK(r.status == 2);
  r = catkit_run({"tree", "graft", data("stack.tree")});
  CHECK(r.status == 0);
  CHECK(r.output.find("graft [[[],[]],[[],[]]]") != std::string::npos);
  CHECK(r.output.find("evaluation orders: ok") != std::string::npos);
  r = catkit_run({"tree", "calculus", "--max", "6", "--bound", "3"});
  CHECK(r.status == 0);
  CHECK(r.output.find("failures 0") != std::string::npos);
  // An incompatible labelling: the gap labels of node 0 differ.
  std::string text = read_file(data("stack.tree"));
  text.replace(text.find("label 0|2 [[],[]]"), 17, "label 0|2 [[]]");
  const TempFile bad("bad.tree", text);
  r = catkit_run({"tree", "graft", bad.str()});
  CHECK(r.status == 1);
  CHECK(r.output.find("violation label-") != std::string::npos);
}

TEST_CASE("groth commands certify the three verdicts") {
  const std::pair<const char*, const char*> cases[] = {
      {"strict_action.lax", "verdict: split cofibration"},
      {"twisted.lax", "verdict: cofibration"},
      {"collage.lax", "verdict: neither"},
  };
  for (const auto& [file, verdict] : cases) {
    CAPTURE(file);
    const Run r = catkit_run({"groth", "lifts", data(file)});
    CHECK(r.status == 0);
    CHECK(r.output.find(std::string(verdict) + "\n") != std::string::npos);
    CHECK(r.output.rfind("cocartesian lifts:", 0) == 0);
    CHECK(catkit_run({"groth", "build", data(file)}).status == 0);
  }
  Run r = catkit_run({"groth", "representable", data("twisted.lax")});
  CHECK(r.status == 0);
  CHECK(r.output.find("representable: yes") != std::string::npos);
  CHECK(r.output.find("comparison e1 e1 * e1\n") != std::string::npos);
  r = catkit_run({"groth", "representable", data("collage.lax")});
  CHECK(r.output.find("representable: no") != std::string::npos);
  // The projection printed by build classifies the same way as a functor section.
  r = catkit_run({"groth", "build", data("twisted.lax")});
  const TempFile total("total.doc", read_file(data("twisted.lax")) + "\n" + r.output.substr(r.output.find("begin ")));
  r = catkit_run({"groth", "lifts", total.str(), "bundle.projection"});
  CHECK(r.output.find("verdict: cofibration\n") != std::string::npos);
}

TEST_CASE("every command is deterministic") {
  const std::vector<std::vector<std::string>> commands = {
      {"validate", data("broken_assoc.cat")},
      {"compose-prof", data("profunctors.cat"), "P", "Q"},
      {"kleisli", data("monad.prof")},
      {"free-monoidal", data("monoid.multi")},
      {"classify-lax", data("monoid.multi"), "monoid", "Z2", "--bound", "2"},
      {"delta", "--max", "5"},
      {"monoids", data("monoid.multi")},
      {"strictify", data("cocycle.mon"), "--bound", "4"},
      {"tree", "realize", "[[[],[]],[]]"},
      {"tree", "compose", "0", "[[]]", "[[],[]]"},
      {"tree", "graft", data("generic.tree")},
      {"tree", "calculus", "--max", "7", "--sample", "20"},
      {"tree", "calculus", "--max", "7", "--sample", "20", "--seed", "3"},
      {"groth", "build", data("strict_action.lax")},
      {"groth", "representable", data("twisted.lax")},
      {"groth", "lifts", data("collage.lax")},
  };
  for (const auto& args : commands) {
    CAPTURE(args[0]);
    const Run a = catkit_run(args);
    const Run b = catkit_run(args);
    CHECK(a.status == b.status);
    CHECK(a.output == b.output);
  }
  // The default seed is fixed, and other seeds pick other samples.
  const Run d = catkit_run({"tree", "calculus", "--max", "7", "--sample", "20"});
  const Run s = catkit_run({"tree", "calculus", "--max", "7", "--sample", "20", "--seed",
                            std::to_string(kDefaultSeed)});
  CHECK(d.output == s.output);
  const Run other = catkit_run({"tree", "calculus", "--max", "7", "--sample", "20", "--seed", "3"});
  auto instances = [](const std::string& out) { return out.substr(out.find("instances ")); };
  CHECK(instances(other.output) != instances(d.output));
}
