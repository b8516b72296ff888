#include "catkit/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace catkit {

const char* to_string(ParseCode c) {
  switch (c) {
    case ParseCode::Syntax: return "syntax";
    case ParseCode::UnknownKind: return "unknown-kind";
    case ParseCode::UnknownKey: return "unknown-key";
    case ParseCode::DanglingReference: return "dangling-reference";
    case ParseCode::ArityMismatch: return "arity-mismatch";
    case ParseCode::DuplicateName: return "duplicate-name";
    case ParseCode::Incomplete: return "incomplete";
    case ParseCode::Invalid: return "invalid";
  }
  return "?";
}

ParseError::ParseError(ParseCode code, int line, int column, std::string section, const std::string& message)
    : StructuralError(std::string(to_string(code)) + ": " + message),
      code_(code),
      line_(line),
      column_(column),
      section_(std::move(section)),
      message_(message) {}

std::string format_error(const ParseError& e, std::string_view origin) {
  std::ostringstream os;
  os << origin << ':' << e.line() << ':' << e.column() << ": error[" << to_string(e.code()) << ']';
  if (!e.section().empty()) os << " in " << e.section();
  os << ": " << e.message();
  return os.str();
}

namespace {

constexpr std::pair<SectionKind, const char*> kKindNames[] = {
    {SectionKind::Category, "category"},
    {SectionKind::Functor, "functor"},
    {SectionKind::Profunctor, "profunctor"},
    {SectionKind::Multicategory, "multicategory"},
    {SectionKind::Monoidal, "monoidal"},
    {SectionKind::StrictMonoidal, "strictmonoidal"},
    {SectionKind::LaxBundle, "laxbundle"},
    {SectionKind::Tree, "tree"},
    {SectionKind::LabelledTree, "labelledtree"},
};

}  // namespace

const char* to_string(SectionKind k) {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "?";
}

std::optional<SectionKind> parse_kind(std::string_view word) {
  for (const auto& [kind, name] : kKindNames)
    if (word == name) return kind;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Document

namespace {

SectionKind kind_of(const SectionValue& v) {
  return std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CatRef>) return SectionKind::Category;
        else if constexpr (std::is_same_v<T, Functor>) return SectionKind::Functor;
        else if constexpr (std::is_same_v<T, ProfunctorSection>) return SectionKind::Profunctor;
        else if constexpr (std::is_same_v<T, MultiRef>) return SectionKind::Multicategory;
        else if constexpr (std::is_same_v<T, MonoidalCategory>) return SectionKind::Monoidal;
        else if constexpr (std::is_same_v<T, std::shared_ptr<const StrictMonCat>>) return SectionKind::StrictMonoidal;
        else if constexpr (std::is_same_v<T, LaxSection>) return SectionKind::LaxBundle;
        else if constexpr (std::is_same_v<T, TreeCell>) return SectionKind::Tree;
        else return SectionKind::LabelledTree;
      },
      v);
}

}  // namespace

void Document::add(std::string name, SectionValue value) {
  const SectionKind k = kind_of(value);
  sections.push_back({k, std::move(name), 0, std::move(value)});
}

const Section* Document::find(std::string_view name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

const Section& Document::get(SectionKind kind, std::string_view name) const {
  if (name.empty()) {
    for (const auto& s : sections)
      if (s.kind == kind) return s;
    throw StructuralError(std::string("no ") + to_string(kind) + " section");
  }
  const Section* s = find(name);
  if (!s) throw StructuralError("no section named " + std::string(name));
  if (s->kind != kind)
    throw StructuralError("section " + std::string(name) + " is a " + to_string(s->kind) + ", not a " +
                          to_string(kind));
  return *s;
}

std::optional<std::string> Document::category_name(const CatRef& c, const Document* context) const {
  for (const auto& s : sections)
    if (s.kind == SectionKind::Category && std::get<CatRef>(s.value) == c) return s.name;
  if (context) return context->category_name(c);
  return std::nullopt;
}

std::vector<std::string> printable_names(const std::vector<std::string>& names, const std::string& fallback) {
  auto valid = [](const std::string& s) {
    return !s.empty() && s != "->" && s.front() != '#' &&
           std::none_of(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch) || ch == '#'; });
  };
  std::vector<std::string> out;
  std::set<std::string> used(names.begin(), names.end());
  std::set<std::string> taken;
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::string n = names[i];
    if (!valid(n) || taken.count(n)) {
      std::string base = valid(n) ? n + "@" : fallback;
      n = base + std::to_string(i);
      while (taken.count(n) || (used.count(n) && n != names[i])) n += "'";
    }
    taken.insert(n);
    out.push_back(std::move(n));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical orders shared by parser and printer

namespace {

// Morphisms in print order: identities by object, then the rest by index.
// The parser assigns indices in exactly this order.
std::vector<int> morphism_order(const FinCat& c) {
  std::vector<int> order;
  for (int x = 0; x < c.object_count(); ++x) order.push_back(c.identity(x));
  for (int f = 0; f < c.morphism_count(); ++f)
    if (!c.is_identity(f)) order.push_back(f);
  return order;
}

std::vector<int> rank_of(const std::vector<int>& order) {
  std::vector<int> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
  return rank;
}

std::vector<int> arrow_order(const Multicategory& m) {
  std::vector<int> order;
  for (int x = 0; x < m.object_count(); ++x) order.push_back(m.identity(x));
  for (int a = 0; a < m.arrow_count(); ++a)
    if (!m.is_identity(a)) order.push_back(a);
  return order;
}

struct CatNames {
  std::vector<std::string> objects;
  std::vector<std::string> morphisms;
};

CatNames names_of(const FinCat& c) {
  return {printable_names(c.object_names(), "o"), printable_names(c.morphism_names(), "m")};
}

std::vector<std::vector<std::string>> element_names(const Profunctor& p) {
  std::vector<std::vector<std::string>> out;
  for (const auto& fiber : p.names()) out.push_back(printable_names(fiber, "e"));
  return out;
}

// ---------------------------------------------------------------------------
// Lexing

struct Token {
  std::string text;
  int column = 0;
};

struct Record {
  int line = 0;
  Token key;
  std::vector<Token> args;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return out;
}

struct KeySpec {
  const char* key;
  int min_args;
  int max_args;  // -1: unbounded
};

std::vector<KeySpec> keys_of(SectionKind k) {
  switch (k) {
    case SectionKind::Category:
      return {{"object", 1, 1}, {"identity", 2, 2}, {"morphism", 3, 3}, {"compose", 3, 3}};
    case SectionKind::Functor:
      return {{"source", 1, 1}, {"target", 1, 1}, {"object", 2, 2}, {"morphism", 2, 2}};
    case SectionKind::Profunctor:
      return {{"source", 1, 1}, {"target", 1, 1}, {"element", 3, 3}, {"left", 4, 4},
              {"right", 4, 4},  {"unit", 2, 2},   {"mult", 6, 6}};
    case SectionKind::Multicategory:
      return {{"cap", 1, 1},      {"truncated", 0, 0}, {"object", 1, 1},
              {"identity", 2, 2}, {"arrow", 3, -1},    {"compose", 2, -1}};
    case SectionKind::StrictMonoidal:
      return {{"category", 1, 1}, {"unit", 1, 1}, {"truncated", 0, 0}, {"tensor", 3, 3}, {"tensormor", 3, 3}};
    case SectionKind::Monoidal:
      return {{"category", 1, 1}, {"unit", 1, 1},   {"tensor", 3, 3}, {"tensormor", 3, 3},
              {"alpha", 4, 4},    {"lambda", 2, 2}, {"rho", 2, 2}};
    case SectionKind::LaxBundle:
      return {{"base", 1, 1}, {"fiber", 2, 2}, {"arrow", 2, 2}, {"mult", 8, 8}};
    case SectionKind::Tree:
      return {{"shape", 1, -1}, {"dim", 1, 1}};
    case SectionKind::LabelledTree:
      return {{"shape", 1, -1}, {"label", 2, -1}};
  }
  return {};
}

std::string join_from(const std::vector<Token>& args, std::size_t from) {
  std::string s;
  for (std::size_t i = from; i < args.size(); ++i) s += args[i].text;
  return s;
}

// ---------------------------------------------------------------------------
// Section parsing

using NameMap = std::unordered_map<std::string, int>;

NameMap index_names(const std::vector<std::string>& names) {
  NameMap m;
  for (std::size_t i = 0; i < names.size(); ++i) m.emplace(names[i], static_cast<int>(i));
  return m;
}

class SectionParser {
public:
  SectionParser(const Document& doc, std::string kind, std::string name, int line, std::vector<Record> records)
      : doc_(doc), label_(std::move(kind) + " " + name), line_(line), records_(std::move(records)) {}

  SectionValue parse(SectionKind kind) {
    switch (kind) {
      case SectionKind::Category: return parse_category();
      case SectionKind::Functor: return parse_functor();
      case SectionKind::Profunctor: return parse_profunctor();
      case SectionKind::Multicategory: return parse_multicategory();
      case SectionKind::StrictMonoidal: return parse_strict();
      case SectionKind::Monoidal: return parse_monoidal();
      case SectionKind::LaxBundle: return parse_lax();
      case SectionKind::Tree: return parse_tree_section();
      case SectionKind::LabelledTree: return parse_labelled();
    }
    throw StructuralError("unreachable");
  }

private:
  [[noreturn]] void fail(ParseCode code, const Record& r, const Token& t, const std::string& msg) const {
    throw ParseError(code, r.line, t.column, label_, msg);
  }
  [[noreturn]] void fail_section(ParseCode code, const std::string& msg) const {
    throw ParseError(code, line_, 1, label_, msg);
  }

  std::vector<const Record*> all(const char* key) const {
    std::vector<const Record*> out;
    for (const auto& r : records_)
      if (r.key.text == key) out.push_back(&r);
    return out;
  }

  const Record* single(const char* key, bool required) const {
    const auto rs = all(key);
    if (rs.size() > 1) fail(ParseCode::DuplicateName, *rs[1], rs[1]->key, std::string("second ") + key + " record");
    if (rs.empty()) {
      if (required) fail_section(ParseCode::Incomplete, std::string("missing ") + key + " record");
      return nullptr;
    }
    return rs[0];
  }

  int number(const Record& r, const Token& t) const {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size() || v < 0)
      fail(ParseCode::Syntax, r, t, "expected a non-negative integer, got '" + t.text + "'");
    return v;
  }

  const Section& section_ref(const Record& r, const Token& t, SectionKind kind) const {
    const Section* s = doc_.find(t.text);
    if (!s || s->kind != kind)
      fail(ParseCode::DanglingReference, r, t, std::string("no ") + to_string(kind) + " section named " + t.text);
    return *s;
  }

  CatRef category_ref(const Record& r, const Token& t) const {
    return std::get<CatRef>(section_ref(r, t, SectionKind::Category).value);
  }

  const NameMap& objects_of(const CatRef& c) {
    auto it = object_maps_.find(c.get());
    if (it == object_maps_.end()) it = object_maps_.emplace(c.get(), index_names(c->object_names())).first;
    return it->second;
  }
  const NameMap& morphisms_of(const CatRef& c) {
    auto it = morphism_maps_.find(c.get());
    if (it == morphism_maps_.end()) it = morphism_maps_.emplace(c.get(), index_names(c->morphism_names())).first;
    return it->second;
  }

  int lookup(const NameMap& m, const Record& r, const Token& t, const char* what) const {
    auto it = m.find(t.text);
    if (it == m.end()) fail(ParseCode::DanglingReference, r, t, std::string("undefined ") + what + " " + t.text);
    return it->second;
  }
  int object(const CatRef& c, const Record& r, const Token& t) { return lookup(objects_of(c), r, t, "object"); }
  int morphism(const CatRef& c, const Record& r, const Token& t) { return lookup(morphisms_of(c), r, t, "morphism"); }

  int element(const Profunctor& p, int x, int y, const Record& r, const Token& t) const {
    const auto& names = p.names()[p.fiber_index(x, y)];
    auto it = std::find(names.begin(), names.end(), t.text);
    if (it == names.end())
      fail(ParseCode::DanglingReference, r, t,
           "undefined element " + t.text + " of fiber (" + p.source()->object_name(x) + ", " +
               p.target()->object_name(y) + ")");
    return static_cast<int>(it - names.begin());
  }

  template <class Fn>
  auto guarded(Fn&& fn) const {
    try {
      return fn();
    } catch (const ParseError&) {
      throw;
    } catch (const StructuralError& e) {
      fail_section(ParseCode::Invalid, e.what());
    }
  }

  void define(NameMap& names, const std::string& name, int index, const Record& r, const Token& t) const {
    if (!names.emplace(name, index).second) fail(ParseCode::DuplicateName, r, t, "name " + name + " defined twice");
  }

  // -------------------------------------------------------------------------

  SectionValue parse_category() {
    std::vector<std::string> objects;
    NameMap object_index;
    for (const Record* r : all("object")) {
      define(object_index, r->args[0].text, static_cast<int>(objects.size()), *r, r->args[0]);
      objects.push_back(r->args[0].text);
    }
    const int n = static_cast<int>(objects.size());
    std::vector<Arrow> arrows;
    std::vector<std::string> names;
    std::vector<int> identities;
    for (int x = 0; x < n; ++x) {
      identities.push_back(x);
      arrows.push_back({x, x});
      names.push_back("id_" + objects[x]);
    }
    std::vector<bool> renamed(n, false);
    for (const Record* r : all("identity")) {
      const int x = lookup(object_index, *r, r->args[1], "object");
      if (renamed[x]) fail(ParseCode::DuplicateName, *r, r->key, "identity of " + objects[x] + " named twice");
      renamed[x] = true;
      names[x] = r->args[0].text;
    }
    for (const Record* r : all("morphism")) {
      arrows.push_back({lookup(object_index, *r, r->args[1], "object"), lookup(object_index, *r, r->args[2], "object")});
      names.push_back(r->args[0].text);
    }
    NameMap morphism_index;
    const auto listed = all("morphism");
    for (std::size_t f = 0; f < names.size(); ++f) {
      if (morphism_index.emplace(names[f], static_cast<int>(f)).second) continue;
      if (f < static_cast<std::size_t>(n)) fail_section(ParseCode::DuplicateName, "name " + names[f] + " defined twice");
      fail(ParseCode::DuplicateName, *listed[f - n], listed[f - n]->args[0], "name " + names[f] + " defined twice");
    }
    std::map<std::pair<int, int>, int> table;
    for (const Record* r : all("compose")) {
      const int g = lookup(morphism_index, *r, r->args[0], "morphism");
      const int f = lookup(morphism_index, *r, r->args[1], "morphism");
      const int h = lookup(morphism_index, *r, r->args[2], "morphism");
      if (arrows[f].cod != arrows[g].dom)
        fail(ParseCode::Invalid, *r, r->args[0], names[g] + " cannot follow " + names[f]);
      if (!table.emplace(std::pair{g, f}, h).second)
        fail(ParseCode::DuplicateName, *r, r->key, "composite of " + names[g] + " after " + names[f] + " given twice");
    }
    auto composite = [&](int g, int f) {
      auto it = table.find({g, f});
      if (it != table.end()) return it->second;
      if (f < n) return g;
      if (g < n) return f;
      return -1;
    };
    return guarded([&] { return share(FinCat(n, arrows, identities, composite, objects, names)); });
  }

  SectionValue parse_functor() {
    const Record* s = single("source", true);
    const Record* t = single("target", true);
    Functor fn;
    fn.source = category_ref(*s, s->args[0]);
    fn.target = category_ref(*t, t->args[0]);
    const FinCat& a = *fn.source;
    const FinCat& b = *fn.target;
    fn.object_map.assign(a.object_count(), -1);
    fn.morphism_map.assign(a.morphism_count(), -1);
    for (const Record* r : all("object")) {
      const int x = object(fn.source, *r, r->args[0]);
      if (fn.object_map[x] >= 0) fail(ParseCode::DuplicateName, *r, r->args[0], "object " + r->args[0].text + " mapped twice");
      fn.object_map[x] = object(fn.target, *r, r->args[1]);
    }
    for (const Record* r : all("morphism")) {
      const int f = morphism(fn.source, *r, r->args[0]);
      if (fn.morphism_map[f] >= 0)
        fail(ParseCode::DuplicateName, *r, r->args[0], "morphism " + r->args[0].text + " mapped twice");
      fn.morphism_map[f] = morphism(fn.target, *r, r->args[1]);
    }
    for (int x = 0; x < a.object_count(); ++x)
      if (fn.object_map[x] < 0) fail_section(ParseCode::Incomplete, "no image for object " + a.object_name(x));
    for (int f = 0; f < a.morphism_count(); ++f) {
      if (fn.morphism_map[f] >= 0) continue;
      if (!a.is_identity(f)) fail_section(ParseCode::Incomplete, "no image for morphism " + a.morphism_name(f));
      fn.morphism_map[f] = b.identity(fn.object_map[a.dom(f)]);
    }
    return fn;
  }

  SectionValue parse_profunctor() {
    const Record* s = single("source", true);
    const Record* t = single("target", true);
    const CatRef x = category_ref(*s, s->args[0]);
    const CatRef y = category_ref(*t, t->args[0]);
    const int ny = y->object_count();
    const int fibers = x->object_count() * ny;
    std::vector<std::vector<std::string>> names(fibers);
    std::vector<NameMap> index(fibers);
    for (const Record* r : all("element")) {
      const int fiber = object(x, *r, r->args[0]) * ny + object(y, *r, r->args[1]);
      define(index[fiber], r->args[2].text, static_cast<int>(names[fiber].size()), *r, r->args[2]);
      names[fiber].push_back(r->args[2].text);
    }
    auto elem = [&](int a, int b, const Record& r, const Token& tok) {
      return lookup(index[a * ny + b], r, tok, "element");
    };
    std::vector<int> sizes(fibers);
    for (int i = 0; i < fibers; ++i) sizes[i] = static_cast<int>(names[i].size());

    std::map<std::tuple<int, int, int>, int> left, right;
    for (const Record* r : all("left")) {
      const int u = morphism(x, *r, r->args[0]);
      const int b = object(y, *r, r->args[1]);
      const int p = elem(x->cod(u), b, *r, r->args[2]);
      const int q = elem(x->dom(u), b, *r, r->args[3]);
      if (!left.emplace(std::tuple{u, b, p}, q).second) fail(ParseCode::DuplicateName, *r, r->key, "left action given twice");
    }
    for (const Record* r : all("right")) {
      const int a = object(x, *r, r->args[0]);
      const int v = morphism(y, *r, r->args[2]);
      const int p = elem(a, y->dom(v), *r, r->args[1]);
      const int q = elem(a, y->cod(v), *r, r->args[3]);
      if (!right.emplace(std::tuple{a, p, v}, q).second)
        fail(ParseCode::DuplicateName, *r, r->key, "right action given twice");
    }
    auto left_fn = [&](int u, int b, int p) {
      auto it = left.find({u, b, p});
      if (it != left.end()) return it->second;
      if (x->is_identity(u)) return p;
      fail_section(ParseCode::Incomplete, "no left action of " + x->morphism_name(u) + " on " +
                                              names[x->cod(u) * ny + b][p]);
    };
    auto right_fn = [&](int a, int p, int v) {
      auto it = right.find({a, p, v});
      if (it != right.end()) return it->second;
      if (y->is_identity(v)) return p;
      fail_section(ParseCode::Incomplete, "no right action of " + y->morphism_name(v) + " on " +
                                              names[a * ny + y->dom(v)][p]);
    };
    ProfunctorSection out;
    out.profunctor = guarded([&] { return Profunctor(x, y, sizes, left_fn, right_fn, names); });

    const auto units = all("unit");
    const auto mults = all("mult");
    if (units.empty() && mults.empty()) return out;
    if (x != y) fail(units.empty() ? *mults[0] : *units[0], "a monad needs equal source and target");
    const Profunctor& m = out.profunctor;
    std::vector<int> unit(x->morphism_count(), -1);
    for (const Record* r : units) {
      const int u = morphism(x, *r, r->args[0]);
      if (unit[u] >= 0) fail(ParseCode::DuplicateName, *r, r->key, "unit of " + r->args[0].text + " given twice");
      unit[u] = elem(x->dom(u), x->cod(u), *r, r->args[1]);
    }
    for (int u = 0; u < x->morphism_count(); ++u)
      if (unit[u] < 0) fail_section(ParseCode::Incomplete, "no unit for morphism " + x->morphism_name(u));
    std::map<std::tuple<int, int, int, int, int>, int> given;
    for (const Record* r : mults) {
      const int a = object(x, *r, r->args[0]);
      const int b = object(x, *r, r->args[1]);
      const int c = object(x, *r, r->args[2]);
      const int p = elem(a, b, *r, r->args[3]);
      const int q = elem(b, c, *r, r->args[4]);
      const int v = elem(a, c, *r, r->args[5]);
      if (!given.emplace(std::tuple{a, b, c, p, q}, v).second)
        fail(ParseCode::DuplicateName, *r, r->key, "multiplication given twice");
    }
    const Composite mm = guarded([&] { return compose(m, m); });
    const int n = x->object_count();
    // Class values from any given raw pair of the class.
    std::vector<std::vector<int>> class_value(mm.pairs.size());
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        const int fiber = a * n + c;
        class_value[fiber].assign(mm.representative[fiber].size(), -1);
        for (std::size_t i = 0; i < mm.pairs[fiber].size(); ++i) {
          const auto& pr = mm.pairs[fiber][i];
          auto it = given.find({a, pr.y, c, pr.p, pr.q});
          int& slot = class_value[fiber][mm.class_of[fiber][i]];
          if (it != given.end() && slot < 0) slot = it->second;
        }
      }
    out.monad = guarded([&] {
      return make_prof_monad(m, [&](int u) { return unit[u]; }, [&](int a, int b, int c, int p, int q) {
        auto it = given.find({a, b, c, p, q});
        if (it != given.end()) return it->second;
        const int v = class_value[a * n + c][mm.class_of_pair(a, c, b, p, q)];
        if (v < 0)
          fail_section(ParseCode::Incomplete, "no multiplication for " + m.element_name(a, b, p) + " then " +
                                                  m.element_name(b, c, q));
        return v;
      });
    });
    return out;
  }

  [[noreturn]] void fail(const Record& r, const std::string& msg) const { fail(ParseCode::Invalid, r, r.key, msg); }

  SectionValue parse_multicategory() {
    std::vector<std::string> objects;
    NameMap object_index;
    for (const Record* r : all("object")) {
      define(object_index, r->args[0].text, static_cast<int>(objects.size()), *r, r->args[0]);
      objects.push_back(r->args[0].text);
    }
    const int n = static_cast<int>(objects.size());
    std::vector<MultiArrow> arrows;
    std::vector<std::string> names;
    std::vector<int> identities;
    for (int x = 0; x < n; ++x) {
      identities.push_back(x);
      arrows.push_back({{x}, x});
      names.push_back("id_" + objects[x]);
    }
    std::vector<bool> renamed(n, false);
    for (const Record* r : all("identity")) {
      const int x = lookup(object_index, *r, r->args[1], "object");
      if (renamed[x]) fail(ParseCode::DuplicateName, *r, r->key, "identity of " + objects[x] + " named twice");
      renamed[x] = true;
      names[x] = r->args[0].text;
    }
    int max_arity = 1;
    for (const Record* r : all("arrow")) {
      const auto& a = r->args;
      const std::size_t arrow_pos = a.size() - 2;
      if (a[arrow_pos].text != "->") {
        auto it = std::find_if(a.begin() + 1, a.end(), [](const Token& t) { return t.text == "->"; });
        if (it == a.end()) fail(ParseCode::Syntax, *r, r->key, "arrow record needs '->' before its target");
        fail(ParseCode::ArityMismatch, *r, *it, "an arrow has exactly one target");
      }
      MultiArrow arrow;
      for (std::size_t i = 1; i < arrow_pos; ++i) arrow.source.push_back(lookup(object_index, *r, a[i], "object"));
      arrow.target = lookup(object_index, *r, a.back(), "object");
      max_arity = std::max(max_arity, static_cast<int>(arrow.source.size()));
      arrows.push_back(std::move(arrow));
      names.push_back(a[0].text);
    }
    NameMap arrow_index;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (!arrow_index.emplace(names[i], static_cast<int>(i)).second)
        fail_section(ParseCode::DuplicateName, "name " + names[i] + " defined twice");
    std::map<std::vector<int>, int> table;
    for (const Record* r : all("compose")) {
      const int h = lookup(arrow_index, *r, r->args[0], "arrow");
      const int f = lookup(arrow_index, *r, r->args[1], "arrow");
      const std::size_t k = r->args.size() - 2;
      if (k != arrows[f].source.size())
        fail(ParseCode::ArityMismatch, *r, r->args[1],
             names[f] + " has arity " + std::to_string(arrows[f].source.size()) + " but " + std::to_string(k) +
                 " arrows are plugged in");
      std::vector<int> key{f};
      for (std::size_t i = 0; i < k; ++i) {
        const int g = lookup(arrow_index, *r, r->args[2 + i], "arrow");
        if (arrows[g].target != arrows[f].source[i])
          fail(ParseCode::Invalid, *r, r->args[2 + i], "target of " + names[g] + " does not match input " +
                                                           std::to_string(i) + " of " + names[f]);
        key.push_back(g);
      }
      if (!table.emplace(key, h).second) fail(ParseCode::DuplicateName, *r, r->key, "composite given twice");
    }
    int cap = max_arity;
    if (const Record* r = single("cap", false)) cap = number(*r, r->args[0]);
    const bool truncated = single("truncated", false) != nullptr;
    auto composite = [&](int f, const std::vector<int>& gs) {
      std::vector<int> key{f};
      key.insert(key.end(), gs.begin(), gs.end());
      auto it = table.find(key);
      if (it != table.end()) return it->second;
      if (f < n) return gs[0];
      if (std::all_of(gs.begin(), gs.end(), [&](int g) { return g < n; })) return f;
      return -1;
    };
    return guarded([&] {
      return share(Multicategory(n, arrows, identities, composite, cap, truncated, objects, names));
    });
  }

  // Tensor tables shared by strict and weak monoidal sections.
  struct Tensors {
    std::vector<int> objects;
    std::map<std::pair<int, int>, int> morphisms;
  };

  Tensors parse_tensors(const CatRef& c) {
    const int n = c->object_count();
    Tensors t;
    t.objects.assign(n * n, -1);
    for (const Record* r : all("tensor")) {
      const int a = object(c, *r, r->args[0]);
      const int b = object(c, *r, r->args[1]);
      if (t.objects[a * n + b] >= 0) fail(ParseCode::DuplicateName, *r, r->key, "tensor given twice");
      t.objects[a * n + b] = object(c, *r, r->args[2]);
    }
    for (const Record* r : all("tensormor")) {
      const int f = morphism(c, *r, r->args[0]);
      const int g = morphism(c, *r, r->args[1]);
      if (!t.morphisms.emplace(std::pair{f, g}, morphism(c, *r, r->args[2])).second)
        fail(ParseCode::DuplicateName, *r, r->key, "tensormor given twice");
    }
    return t;
  }

  static int tensor_mor_value(const FinCat& c, const Tensors& t, int f, int g) {
    auto it = t.morphisms.find({f, g});
    if (it != t.morphisms.end()) return it->second;
    if (c.is_identity(f) && c.is_identity(g)) {
      const int xy = t.objects[c.dom(f) * c.object_count() + c.dom(g)];
      return xy < 0 ? -1 : c.identity(xy);
    }
    return -1;
  }

  SectionValue parse_strict() {
    const Record* cr = single("category", true);
    const CatRef c = category_ref(*cr, cr->args[0]);
    const Record* ur = single("unit", true);
    const int unit = object(c, *ur, ur->args[0]);
    const bool truncated = single("truncated", false) != nullptr;
    const Tensors t = parse_tensors(c);
    return guarded([&] {
      return std::make_shared<const StrictMonCat>(
          c, unit, t.objects, [&](int f, int g) { return tensor_mor_value(*c, t, f, g); }, truncated);
    });
  }

  SectionValue parse_monoidal() {
    const Record* cr = single("category", true);
    const CatRef c = category_ref(*cr, cr->args[0]);
    const Record* ur = single("unit", true);
    const int n = c->object_count();
    const int m = c->morphism_count();
    MonoidalCategory out;
    out.base = c;
    out.unit = object(c, *ur, ur->args[0]);
    const Tensors t = parse_tensors(c);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (t.objects[a * n + b] < 0)
          fail_section(ParseCode::Incomplete, "no tensor of " + c->object_name(a) + " and " + c->object_name(b));
    out.tensor_obj = t.objects;
    for (int f = 0; f < m; ++f)
      for (int g = 0; g < m; ++g) {
        const int v = tensor_mor_value(*c, t, f, g);
        if (v < 0)
          fail_section(ParseCode::Incomplete, "no tensormor of " + c->morphism_name(f) + " and " + c->morphism_name(g));
        out.tensor_mor.push_back(v);
      }
    out.alpha.assign(n * n * n, -1);
    for (const Record* r : all("alpha")) {
      const int i = (object(c, *r, r->args[0]) * n + object(c, *r, r->args[1])) * n + object(c, *r, r->args[2]);
      if (out.alpha[i] >= 0) fail(ParseCode::DuplicateName, *r, r->key, "alpha given twice");
      out.alpha[i] = morphism(c, *r, r->args[3]);
    }
    auto unitors = [&](const char* key, std::vector<int>& table) {
      table.assign(n, -1);
      for (const Record* r : all(key)) {
        const int x = object(c, *r, r->args[0]);
        if (table[x] >= 0) fail(ParseCode::DuplicateName, *r, r->key, std::string(key) + " given twice");
        table[x] = morphism(c, *r, r->args[1]);
      }
      for (int x = 0; x < n; ++x)
        if (table[x] < 0) fail_section(ParseCode::Incomplete, std::string("no ") + key + " at " + c->object_name(x));
    };
    for (int i = 0; i < n * n * n; ++i)
      if (out.alpha[i] < 0)
        fail_section(ParseCode::Incomplete, "no alpha at " + c->object_name(i / (n * n)) + " " +
                                                c->object_name(i / n % n) + " " + c->object_name(i % n));
    unitors("lambda", out.lambda);
    unitors("rho", out.rho);
    guarded([&] {
      check_monoidal_shape(out);
      return 0;
    });
    return out;
  }

  SectionValue parse_lax() {
    const Record* br = single("base", true);
    const CatRef base = category_ref(*br, br->args[0]);
    const int nb = base->object_count();
    std::vector<CatRef> fibers(nb);
    for (const Record* r : all("fiber")) {
      const int x = object(base, *r, r->args[0]);
      if (fibers[x]) fail(ParseCode::DuplicateName, *r, r->key, "fiber over " + r->args[0].text + " given twice");
      fibers[x] = category_ref(*r, r->args[1]);
    }
    for (int x = 0; x < nb; ++x)
      if (!fibers[x]) fail_section(ParseCode::Incomplete, "no fiber over " + base->object_name(x));
    LaxSection out;
    std::vector<Profunctor> arrows(base->morphism_count());
    out.arrow_sections.assign(base->morphism_count(), "");
    for (const Record* r : all("arrow")) {
      const int f = morphism(base, *r, r->args[0]);
      if (base->is_identity(f)) fail(*r, "identities carry Hom and take no arrow record");
      if (!out.arrow_sections[f].empty())
        fail(ParseCode::DuplicateName, *r, r->key, "arrow over " + r->args[0].text + " given twice");
      const auto& ps = std::get<ProfunctorSection>(section_ref(*r, r->args[1], SectionKind::Profunctor).value);
      const Profunctor& p = ps.profunctor;
      if (p.source() != fibers[base->dom(f)] || p.target() != fibers[base->cod(f)])
        fail(*r, "profunctor " + r->args[1].text + " does not run between the fibers over the ends of " +
                     r->args[0].text);
      arrows[f] = p;
      out.arrow_sections[f] = r->args[1].text;
    }
    for (int f = 0; f < base->morphism_count(); ++f)
      if (!base->is_identity(f) && out.arrow_sections[f].empty())
        fail_section(ParseCode::Incomplete, "no arrow over " + base->morphism_name(f));
    auto profunctor_at = [&](int f) -> Profunctor {
      if (base->is_identity(f)) return hom_profunctor(fibers[base->dom(f)]);
      return arrows[f];
    };

    // Given values keyed by (f, g, c, b, a, phi, psi), filled per class below.
    using Key = std::tuple<int, int, int, int, int, int, int>;
    std::map<Key, int> given;
    for (const Record* r : all("mult")) {
      const auto& a = r->args;
      const int f = morphism(base, *r, a[0]);
      const int g = morphism(base, *r, a[1]);
      if (base->is_identity(f) || base->is_identity(g)) fail(*r, "multiplications with identities are implied");
      if (base->dom(f) != base->cod(g)) fail(ParseCode::Invalid, *r, a[0], a[0].text + " cannot follow " + a[1].text);
      const CatRef fc = fibers[base->dom(g)];
      const CatRef fb = fibers[base->cod(g)];
      const CatRef fa = fibers[base->cod(f)];
      const int c = object(fc, *r, a[2]);
      const int b = object(fb, *r, a[3]);
      const int o = object(fa, *r, a[4]);
      const int phi = element(arrows[g], c, b, *r, a[5]);
      const int psi = element(arrows[f], b, o, *r, a[6]);
      const int fg = base->compose(f, g);
      if (fg < 0) fail(*r, "the base has no composite of " + a[0].text + " after " + a[1].text);
      const Profunctor target = profunctor_at(fg);
      const int v = element(target, c, o, *r, a[7]);
      if (!given.emplace(Key{f, g, c, b, o, phi, psi}, v).second)
        fail(ParseCode::DuplicateName, *r, r->key, "multiplication given twice");
    }
    std::map<std::pair<int, int>, std::pair<Composite, std::vector<std::vector<int>>>> classes;
    auto class_values = [&](int f, int g) -> const std::pair<Composite, std::vector<std::vector<int>>>& {
      auto it = classes.find({f, g});
      if (it != classes.end()) return it->second;
      Composite comp = compose(arrows[g], arrows[f]);
      const int na = fibers[base->cod(f)]->object_count();
      std::vector<std::vector<int>> values(comp.pairs.size());
      for (std::size_t fiber = 0; fiber < comp.pairs.size(); ++fiber) {
        values[fiber].assign(comp.representative[fiber].size(), -1);
        const int c = static_cast<int>(fiber) / na;
        const int o = static_cast<int>(fiber) % na;
        for (std::size_t i = 0; i < comp.pairs[fiber].size(); ++i) {
          const auto& pr = comp.pairs[fiber][i];
          auto g_it = given.find(Key{f, g, c, pr.y, o, pr.p, pr.q});
          int& slot = values[fiber][comp.class_of[fiber][i]];
          if (g_it != given.end() && slot < 0) slot = g_it->second;
        }
      }
      return classes.emplace(std::pair{f, g}, std::pair{std::move(comp), std::move(values)}).first->second;
    };
    out.lax = guarded([&] {
      return make_lax_functor(base, fibers, arrows, [&](int f, int g, int c, int b, int a, int phi, int psi) {
        auto it = given.find(Key{f, g, c, b, a, phi, psi});
        if (it != given.end()) return it->second;
        const auto& [comp, values] = class_values(f, g);
        const int v = values[comp.profunctor.fiber_index(c, a)][comp.class_of_pair(c, a, b, phi, psi)];
        if (v < 0)
          fail_section(ParseCode::Incomplete, "no multiplication over " + base->morphism_name(f) + " after " +
                                                  base->morphism_name(g) + " for " +
                                                  arrows[g].element_name(c, b, phi) + " then " +
                                                  arrows[f].element_name(b, a, psi));
        return v;
      });
    });
    return out;
  }

  Tree tree_value(const Record& r, std::size_t from) const {
    try {
      return parse_tree(join_from(r.args, from));
    } catch (const StructuralError& e) {
      fail(ParseCode::Syntax, r, r.args[from], e.what());
    }
  }

  SectionValue parse_tree_section() {
    const Record* sr = single("shape", true);
    TreeCell out{tree_value(*sr, 0), 0};
    out.dim = height(out.shape);
    if (const Record* dr = single("dim", false)) {
      out.dim = number(*dr, dr->args[0]);
      if (out.dim < height(out.shape)) fail(*dr, "dimension below the height of the shape");
    }
    return out;
  }

  SectionValue parse_labelled() {
    const Record* sr = single("shape", true);
    LabelledTree out;
    out.shape = tree_value(*sr, 0);
    for (const Record* r : all("label")) {
      CellId cell;
      try {
        cell = parse_cell(r->args[0].text);
      } catch (const StructuralError& e) {
        fail(ParseCode::Syntax, *r, r->args[0], e.what());
      }
      if (!out.labels.emplace(cell, tree_value(*r, 1)).second)
        fail(ParseCode::DuplicateName, *r, r->args[0], "cell " + r->args[0].text + " labelled twice");
    }
    return out;
  }

  const Document& doc_;
  std::string label_;
  int line_;
  std::vector<Record> records_;
  std::unordered_map<const FinCat*, NameMap> object_maps_;
  std::unordered_map<const FinCat*, NameMap> morphism_maps_;
};

}  // namespace

Document parse_document(std::string_view text) {
  Document doc;
  int line_no = 0;
  std::size_t pos = 0;
  struct Open {
    SectionKind kind;
    std::string kind_word;
    std::string name;
    int line;
    std::vector<Record> records;
    std::vector<KeySpec> keys;
  };
  std::optional<Open> open;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::vector<Token> toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string where = open ? open->kind_word + " " + open->name : "";
    if (!open) {
      if (toks[0].text != "begin")
        throw ParseError(ParseCode::Syntax, line_no, toks[0].column, "", "expected 'begin', got '" + toks[0].text + "'");
      if (toks.size() != 3)
        throw ParseError(ParseCode::ArityMismatch, line_no, toks[0].column, "", "begin takes a kind and a name");
      const auto kind = parse_kind(toks[1].text);
      if (!kind)
        throw ParseError(ParseCode::UnknownKind, line_no, toks[1].column, toks[2].text,
                         "unknown section kind '" + toks[1].text + "'");
      if (doc.find(toks[2].text))
        throw ParseError(ParseCode::DuplicateName, line_no, toks[2].column, toks[2].text,
                         "section " + toks[2].text + " defined twice");
      open = Open{*kind, toks[1].text, toks[2].text, line_no, {}, keys_of(*kind)};
      continue;
    }
    if (toks[0].text == "end") {
      if (toks.size() != 1) throw ParseError(ParseCode::ArityMismatch, line_no, toks[1].column, where, "end takes no fields");
      SectionParser parser(doc, open->kind_word, open->name, open->line, std::move(open->records));
      SectionValue value = parser.parse(open->kind);
      doc.sections.push_back({open->kind, open->name, open->line, std::move(value)});
      open.reset();
      continue;
    }
    if (toks[0].text == "begin")
      throw ParseError(ParseCode::Syntax, line_no, toks[0].column, where, "section " + open->name + " is not closed");
    auto spec = std::find_if(open->keys.begin(), open->keys.end(),
                             [&](const KeySpec& k) { return toks[0].text == k.key; });
    if (spec == open->keys.end())
      throw ParseError(ParseCode::UnknownKey, line_no, toks[0].column, where,
                       "unknown key '" + toks[0].text + "' in a " + open->kind_word + " section");
    const int nargs = static_cast<int>(toks.size()) - 1;
    if (nargs < spec->min_args || (spec->max_args >= 0 && nargs > spec->max_args)) {
      const std::string expected = spec->max_args == spec->min_args ? std::to_string(spec->min_args)
                                   : spec->max_args < 0              ? "at least " + std::to_string(spec->min_args)
                                                                     : std::to_string(spec->min_args) + " to " +
                                                                           std::to_string(spec->max_args);
      throw ParseError(ParseCode::ArityMismatch, line_no, toks[0].column, where,
                       toks[0].text + " takes " + expected + " fields, got " + std::to_string(nargs));
    }
    Record r{line_no, toks[0], {toks.begin() + 1, toks.end()}};
    open->records.push_back(std::move(r));
  }
  if (open)
    throw ParseError(ParseCode::Syntax, line_no, 1, open->kind_word + " " + open->name,
                     "section " + open->name + " has no end");
  return doc;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

class Printer {
public:
  Printer(const Document& doc, const Document* context) : doc_(doc), context_(context) {}

  std::string run() {
    bool first = true;
    for (const auto& s : doc_.sections) {
      if (!first) out_ << '\n';
      first = false;
      out_ << "begin " << to_string(s.kind) << ' ' << s.name << '\n';
      std::visit([&](const auto& v) { section(v); }, s.value);
      out_ << "end\n";
    }
    return out_.str();
  }

private:
  const CatNames& names(const CatRef& c) {
    auto it = cache_.find(c.get());
    if (it == cache_.end()) it = cache_.emplace(c.get(), names_of(*c)).first;
    return it->second;
  }

  std::string category(const CatRef& c) const {
    auto n = doc_.category_name(c, context_);
    if (!n) throw StructuralError("print: a referenced category has no section");
    return *n;
  }

  void section(const CatRef& cat) {
    const FinCat& c = *cat;
    const auto& n = names(cat);
    for (int x = 0; x < c.object_count(); ++x) out_ << "object " << n.objects[x] << '\n';
    for (int x = 0; x < c.object_count(); ++x)
      if (n.morphisms[c.identity(x)] != "id_" + n.objects[x])
        out_ << "identity " << n.morphisms[c.identity(x)] << ' ' << n.objects[x] << '\n';
    const auto order = morphism_order(c);
    for (int f : order)
      if (!c.is_identity(f))
        out_ << "morphism " << n.morphisms[f] << ' ' << n.objects[c.dom(f)] << ' ' << n.objects[c.cod(f)] << '\n';
    for (int f : order)
      for (int g : order) {
        if (!c.composable(g, f)) continue;
        const int h = c.compose(g, f);
        const int implied = c.is_identity(f) ? g : c.is_identity(g) ? f : -1;
        if (h != implied && h >= 0)
          out_ << "compose " << n.morphisms[g] << ' ' << n.morphisms[f] << ' ' << n.morphisms[h] << '\n';
      }
  }

  void section(const Functor& fn) {
    const auto& a = names(fn.source);
    const auto& b = names(fn.target);
    out_ << "source " << category(fn.source) << '\n' << "target " << category(fn.target) << '\n';
    const FinCat& s = *fn.source;
    for (int x = 0; x < s.object_count(); ++x)
      out_ << "object " << a.objects[x] << ' ' << b.objects[fn.object_map[x]] << '\n';
    for (int f : morphism_order(s)) {
      const int img = fn.morphism_map[f];
      if (s.is_identity(f) && img == fn.target->identity(fn.object_map[s.dom(f)])) continue;
      out_ << "morphism " << a.morphisms[f] << ' ' << b.morphisms[img] << '\n';
    }
  }

  void section(const ProfunctorSection& ps) {
    const Profunctor& p = ps.profunctor;
    const FinCat& x = *p.source();
    const FinCat& y = *p.target();
    const auto& xn = names(p.source());
    const auto& yn = names(p.target());
    const auto en = element_names(p);
    auto el = [&](int a, int b, int e) -> const std::string& { return en[p.fiber_index(a, b)][e]; };
    out_ << "source " << category(p.source()) << '\n' << "target " << category(p.target()) << '\n';
    for (int a = 0; a < x.object_count(); ++a)
      for (int b = 0; b < y.object_count(); ++b)
        for (int e = 0; e < p.fiber_size(a, b); ++e)
          out_ << "element " << xn.objects[a] << ' ' << yn.objects[b] << ' ' << el(a, b, e) << '\n';
    for (int u : morphism_order(x))
      for (int b = 0; b < y.object_count(); ++b)
        for (int e = 0; e < p.fiber_size(x.cod(u), b); ++e) {
          const int v = p.left(u, b, e);
          if (x.is_identity(u) && v == e) continue;
          out_ << "left " << xn.morphisms[u] << ' ' << yn.objects[b] << ' ' << el(x.cod(u), b, e) << ' '
               << el(x.dom(u), b, v) << '\n';
        }
    for (int v : morphism_order(y))
      for (int a = 0; a < x.object_count(); ++a)
        for (int e = 0; e < p.fiber_size(a, y.dom(v)); ++e) {
          const int w = p.right(a, e, v);
          if (y.is_identity(v) && w == e) continue;
          out_ << "right " << xn.objects[a] << ' ' << el(a, y.dom(v), e) << ' ' << yn.morphisms[v] << ' '
               << el(a, y.cod(v), w) << '\n';
        }
    if (!ps.monad) return;
    const ProfMonad& m = *ps.monad;
    for (int u : morphism_order(x)) {
      const int pos = x.hom_position(u);
      out_ << "unit " << xn.morphisms[u] << ' ' << el(x.dom(u), x.cod(u), m.unit[p.fiber_index(x.dom(u), x.cod(u))][pos])
           << '\n';
    }
    const Composite mm = compose(p, p);
    const int n = x.object_count();
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        const int fiber = a * n + c;
        const auto& values = m.mult[fiber];
        for (std::size_t i = 0; i < mm.pairs[fiber].size(); ++i) {
          const int rep = mm.representative[fiber][mm.class_of[fiber][i]];
          if (static_cast<int>(i) != rep && values[i] == values[rep]) continue;
          const auto& pr = mm.pairs[fiber][i];
          out_ << "mult " << xn.objects[a] << ' ' << xn.objects[pr.y] << ' ' << xn.objects[c] << ' '
               << el(a, pr.y, pr.p) << ' ' << el(pr.y, c, pr.q) << ' ' << el(a, c, values[i]) << '\n';
        }
      }
  }

  void section(const MultiRef& mref) {
    const Multicategory& m = *mref;
    const auto on = printable_names(m.object_names(), "o");
    const auto an = printable_names(m.arrow_names(), "a");
    const auto order = arrow_order(m);
    const auto rank = rank_of(order);
    int max_arity = 1;
    for (int a = 0; a < m.arrow_count(); ++a) max_arity = std::max(max_arity, m.arity(a));
    if (m.arity_cap() != max_arity) out_ << "cap " << m.arity_cap() << '\n';
    if (m.truncated()) out_ << "truncated\n";
    for (int x = 0; x < m.object_count(); ++x) out_ << "object " << on[x] << '\n';
    for (int x = 0; x < m.object_count(); ++x)
      if (an[m.identity(x)] != "id_" + on[x]) out_ << "identity " << an[m.identity(x)] << ' ' << on[x] << '\n';
    for (int a : order) {
      if (m.is_identity(a)) continue;
      out_ << "arrow " << an[a];
      for (int x : m.source(a)) out_ << ' ' << on[x];
      out_ << " -> " << on[m.target(a)] << '\n';
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> entries;  // (ranked key, key)
    for (const auto& [key, h] : m.composites()) {
      const std::vector<int> gs(key.begin() + 1, key.end());
      const int implied = m.is_identity(key[0])                                                  ? gs[0]
                          : std::all_of(gs.begin(), gs.end(), [&](int g) { return m.is_identity(g); }) ? key[0]
                                                                                                   : -1;
      if (h == implied || h < 0) continue;
      std::vector<int> ranked;
      for (int a : key) ranked.push_back(rank[a]);
      entries.emplace_back(std::move(ranked), key);
    }
    std::sort(entries.begin(), entries.end());
    for (const auto& [ranked, key] : entries) {
      out_ << "compose " << an[m.composites().at(key)];
      for (int a : key) out_ << ' ' << an[a];
      out_ << '\n';
    }
  }

  void tensors(const CatRef& cat, const std::function<int(int, int)>& obj, const std::function<int(int, int)>& mor) {
    const FinCat& c = *cat;
    const auto& n = names(cat);
    for (int a = 0; a < c.object_count(); ++a)
      for (int b = 0; b < c.object_count(); ++b)
        if (obj(a, b) >= 0) out_ << "tensor " << n.objects[a] << ' ' << n.objects[b] << ' ' << n.objects[obj(a, b)] << '\n';
    const auto order = morphism_order(c);
    for (int f : order)
      for (int g : order) {
        const int h = mor(f, g);
        if (h < 0) continue;
        if (c.is_identity(f) && c.is_identity(g)) {
          const int xy = obj(c.dom(f), c.dom(g));
          if (xy >= 0 && h == c.identity(xy)) continue;
        }
        out_ << "tensormor " << n.morphisms[f] << ' ' << n.morphisms[g] << ' ' << n.morphisms[h] << '\n';
      }
  }

  void section(const std::shared_ptr<const StrictMonCat>& sp) {
    const StrictMonCat& s = *sp;
    out_ << "category " << category(s.base()) << '\n';
    out_ << "unit " << names(s.base()).objects[s.unit()] << '\n';
    if (s.truncated()) out_ << "truncated\n";
    tensors(s.base(), [&](int a, int b) { return s.tensor(a, b); }, [&](int f, int g) { return s.tensor_mor(f, g); });
  }

  void section(const MonoidalCategory& m) {
    const auto& n = names(m.base);
    const int k = m.object_count();
    out_ << "category " << category(m.base) << '\n';
    out_ << "unit " << n.objects[m.unit] << '\n';
    tensors(m.base, [&](int a, int b) { return m.tensor(a, b); }, [&](int f, int g) { return m.tensor_m(f, g); });
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        for (int c = 0; c < k; ++c)
          out_ << "alpha " << n.objects[a] << ' ' << n.objects[b] << ' ' << n.objects[c] << ' '
               << n.morphisms[m.assoc(a, b, c)] << '\n';
    for (int a = 0; a < k; ++a) out_ << "lambda " << n.objects[a] << ' ' << n.morphisms[m.lambda[a]] << '\n';
    for (int a = 0; a < k; ++a) out_ << "rho " << n.objects[a] << ' ' << n.morphisms[m.rho[a]] << '\n';
  }

  void section(const LaxSection& ls) {
    const LaxProfFunctor& l = ls.lax;
    const FinCat& base = *l.base;
    const auto& bn = names(l.base);
    out_ << "base " << category(l.base) << '\n';
    for (int x = 0; x < base.object_count(); ++x) out_ << "fiber " << bn.objects[x] << ' ' << category(l.fibers[x]) << '\n';
    const auto order = morphism_order(base);
    for (int f : order)
      if (!base.is_identity(f)) {
        if (ls.arrow_sections[f].empty()) throw StructuralError("print: laxbundle arrow without a profunctor section");
        out_ << "arrow " << bn.morphisms[f] << ' ' << ls.arrow_sections[f] << '\n';
      }
    const auto rank = rank_of(order);
    std::vector<const LaxProfFunctor::Mult*> mults;
    for (const auto& m : l.mults) mults.push_back(&m);
    std::sort(mults.begin(), mults.end(), [&](auto* a, auto* b) {
      return std::pair{rank[a->f], rank[a->g]} < std::pair{rank[b->f], rank[b->g]};
    });
    for (const auto* m : mults) {
      const Profunctor& pg = l.arrow(m->g);
      const Profunctor& pf = l.arrow(m->f);
      const Profunctor& pfg = l.arrow(base.compose(m->f, m->g));
      const auto& cn = names(pg.source());
      const auto& bn2 = names(pg.target());
      const auto& an = names(pf.target());
      const auto eg = element_names(pg);
      const auto ef = element_names(pf);
      const auto efg = element_names(pfg);
      const int na = pf.target()->object_count();
      const Composite& comp = m->composite;
      for (std::size_t fiber = 0; fiber < comp.pairs.size(); ++fiber) {
        const int c = static_cast<int>(fiber) / na;
        const int a = static_cast<int>(fiber) % na;
        for (std::size_t cls = 0; cls < comp.representative[fiber].size(); ++cls) {
          const auto& pr = comp.pairs[fiber][comp.representative[fiber][cls]];
          out_ << "mult " << bn.morphisms[m->f] << ' ' << bn.morphisms[m->g] << ' ' << cn.objects[c] << ' '
               << bn2.objects[pr.y] << ' ' << an.objects[a] << ' ' << eg[pg.fiber_index(c, pr.y)][pr.p] << ' '
               << ef[pf.fiber_index(pr.y, a)][pr.q] << ' ' << efg[pfg.fiber_index(c, a)][m->values[fiber][cls]]
               << '\n';
        }
      }
    }
  }

  void section(const TreeCell& t) {
    out_ << "shape " << to_string(t.shape) << '\n';
    if (t.dim != height(t.shape)) out_ << "dim " << t.dim << '\n';
  }

  void section(const LabelledTree& l) {
    out_ << "shape " << to_string(l.shape) << '\n';
    for (const auto& [cell, label] : l.labels) out_ << "label " << to_string(cell) << ' ' << to_string(label) << '\n';
  }

  const Document& doc_;
  const Document* context_;
  std::ostringstream out_;
  std::unordered_map<const FinCat*, CatNames> cache_;
};

}  // namespace

std::string print_document(const Document& doc, const Document* context) { return Printer(doc, context).run(); }

}  // namespace catkit
