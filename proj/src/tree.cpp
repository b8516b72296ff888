#include "catkit/tree.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

namespace catkit {

std::strong_ordering Tree::operator<=>(const Tree& other) const {
  return std::lexicographical_compare_three_way(children.begin(), children.end(), other.children.begin(),
                                                other.children.end());
}

namespace {

Tree parse_at(std::string_view text, std::size_t& at) {
  auto skip = [&] {
    while (at < text.size() && std::isspace(static_cast<unsigned char>(text[at]))) ++at;
  };
  skip();
  if (at >= text.size() || text[at] != '[') throw StructuralError("tree: expected '[' at " + std::to_string(at));
  ++at;
  Tree t;
  skip();
  if (at < text.size() && text[at] == ']') {
    ++at;
    return t;
  }
  while (true) {
    t.children.push_back(parse_at(text, at));
    skip();
    if (at >= text.size()) throw StructuralError("tree: unterminated bracket");
    if (text[at] == ']') {
      ++at;
      return t;
    }
    if (text[at] != ',') throw StructuralError("tree: expected ',' or ']' at " + std::to_string(at));
    ++at;
  }
}

void write(const Tree& t, std::string& out) {
  out += '[';
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) out += ',';
    write(t.children[i], out);
  }
  out += ']';
}

}  // namespace

Tree parse_tree(std::string_view text) {
  std::size_t at = 0;
  Tree t = parse_at(text, at);
  while (at < text.size() && std::isspace(static_cast<unsigned char>(text[at]))) ++at;
  if (at != text.size()) throw StructuralError("tree: trailing characters");
  return t;
}

std::string to_string(const Tree& t) {
  std::string s;
  write(t, s);
  return s;
}

int height(const Tree& t) {
  int h = 0;
  for (const auto& c : t.children) h = std::max(h, 1 + height(c));
  return h;
}

int node_count(const Tree& t) {
  int n = 1;
  for (const auto& c : t.children) n += node_count(c);
  return n;
}

std::vector<int> level_counts(const Tree& t) {
  std::vector<int> counts;
  std::function<void(const Tree&, std::size_t)> go = [&](const Tree& x, std::size_t d) {
    if (counts.size() <= d) counts.push_back(0);
    ++counts[d];
    for (const auto& c : x.children) go(c, d + 1);
  };
  go(t, 0);
  return counts;
}

Tree truncate(const Tree& t, int k) {
  if (k <= 0) return Tree{};
  Tree out;
  for (const auto& c : t.children) out.children.push_back(truncate(c, k - 1));
  return out;
}

Tree compose(const Tree& a, const Tree& b, int k) {
  if (k < 0) throw StructuralError("compose: negative level");
  if (k == 0) {
    Tree out = a;
    out.children.insert(out.children.end(), b.children.begin(), b.children.end());
    return out;
  }
  if (a.arity() != b.arity())
    throw StructuralError("compose: boundaries differ (" + to_string(a) + " vs " + to_string(b) + " at " +
                          std::to_string(k) + ")");
  Tree out;
  for (std::size_t i = 0; i < a.arity(); ++i) out.children.push_back(compose(a.children[i], b.children[i], k - 1));
  return out;
}

std::vector<Fibers> to_delta_functor(const Tree& t) {
  std::vector<Fibers> maps;
  std::vector<const Tree*> level{&t};
  while (true) {
    Fibers f;
    std::vector<const Tree*> next;
    for (const Tree* x : level) {
      f.push_back(static_cast<int>(x->arity()));
      for (const auto& c : x->children) next.push_back(&c);
    }
    if (next.empty()) break;
    maps.push_back(std::move(f));
    level = std::move(next);
  }
  return maps;
}

Tree from_delta_functor(const std::vector<Fibers>& maps) {
  // Build bottom-up: the nodes of the deepest level are leaves.
  std::size_t width = 1;
  for (const auto& f : maps) {
    if (f.size() != width) throw StructuralError("tree functor: maps are not composable");
    int sum = 0;
    for (int v : f) {
      if (v < 0) throw StructuralError("tree functor: negative fiber");
      sum += v;
    }
    if (sum == 0) throw StructuralError("tree functor: empty level");
    width = static_cast<std::size_t>(sum);
  }
  std::vector<Tree> level(width);
  for (auto f = maps.rbegin(); f != maps.rend(); ++f) {
    std::vector<Tree> up;
    std::size_t at = 0;
    for (int v : *f) {
      Tree x;
      for (int i = 0; i < v; ++i) x.children.push_back(std::move(level[at++]));
      up.push_back(std::move(x));
    }
    level = std::move(up);
  }
  return level.at(0);
}

std::vector<Tree> enumerate_trees(int max_nodes, int max_height) {
  // forests[h][n]: ordered forests with n nodes whose trees have height <= h.
  std::vector<std::vector<std::vector<std::vector<Tree>>>> forests(
      std::max(max_height, 0) + 1, std::vector<std::vector<std::vector<Tree>>>(std::max(max_nodes, 0) + 1));
  auto trees = [&](int n, int h) {
    std::vector<Tree> out;
    if (n == 1) out.emplace_back();
    else if (n > 1 && h > 0)
      for (const auto& f : forests[h - 1][n - 1]) out.emplace_back(f);
    return out;
  };
  for (int h = 0; h <= max_height; ++h) {
    forests[h][0] = {{}};
    for (int n = 1; n <= max_nodes; ++n)
      for (int first = 1; first <= n; ++first)
        for (const auto& t : trees(first, h))
          for (const auto& rest : forests[h][n - first]) {
            std::vector<Tree> f{t};
            f.insert(f.end(), rest.begin(), rest.end());
            forests[h][n].push_back(std::move(f));
          }
  }
  std::vector<Tree> out;
  for (int n = 1; n <= max_nodes; ++n) {
    auto level = trees(n, max_height);
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// ---------------------------------------------------------------------------

int GlobularSet::find(int k, const std::string& name) const {
  if (k < 0 || k > dim()) return -1;
  const auto it = std::find(names[k].begin(), names[k].end(), name);
  return it == names[k].end() ? -1 : static_cast<int>(it - names[k].begin());
}

Report check_globular(const GlobularSet& g) {
  Report r;
  const int n = g.dim();
  if (static_cast<int>(g.src.size()) != n + 1 || static_cast<int>(g.tgt.size()) != n + 1) {
    r.add("globular-shape", "source/target tables");
    return r;
  }
  for (int k = 1; k <= n; ++k) {
    if (g.src[k].size() != g.names[k].size() || g.tgt[k].size() != g.names[k].size()) {
      r.add("globular-shape", "dimension " + std::to_string(k));
      return r;
    }
    for (int c = 0; c < g.count(k); ++c)
      if (g.src[k][c] < 0 || g.src[k][c] >= g.count(k - 1) || g.tgt[k][c] < 0 || g.tgt[k][c] >= g.count(k - 1)) {
        r.add("globular-shape", g.names[k][c]);
        return r;
      }
  }
  for (int k = 2; k <= n; ++k)
    for (int c = 0; c < g.count(k); ++c) {
      const int s = g.src[k][c], t = g.tgt[k][c];
      if (g.src[k - 1][s] != g.src[k - 1][t] || g.tgt[k - 1][s] != g.tgt[k - 1][t])
        r.add("globularity", g.names[k][c]);
    }
  return r;
}

GlobularSet suspend(const GlobularSet& g, const std::string& tag) {
  GlobularSet out;
  const int n = g.dim();
  out.names.resize(n + 2);
  out.src.resize(n + 2);
  out.tgt.resize(n + 2);
  out.names[0] = {"|0", "|1"};
  for (int k = 0; k <= n; ++k) {
    for (const auto& name : g.names[k]) out.names[k + 1].push_back(tag + (name.starts_with('|') ? "" : ".") + name);
    if (k == 0) {
      out.src[1].assign(g.count(0), 0);
      out.tgt[1].assign(g.count(0), 1);
    } else {
      out.src[k + 1] = g.src[k];
      out.tgt[k + 1] = g.tgt[k];
    }
  }
  return out;
}

GlobularSet wedge(const GlobularSet& a, const GlobularSet& b) {
  const int n = std::max(a.dim(), b.dim());
  GlobularSet out;
  out.names.resize(n + 1);
  out.src.resize(n + 1);
  out.tgt.resize(n + 1);
  const int shift0 = a.count(0) - 1;
  for (int k = 0; k <= n; ++k) {
    for (int c = 0; c < a.count(k); ++c) {
      out.names[k].push_back(a.names[k][c]);
      if (k) {
        out.src[k].push_back(a.src[k][c]);
        out.tgt[k].push_back(a.tgt[k][c]);
      }
    }
    const int below = k == 0 ? 0 : (k == 1 ? shift0 : a.count(k - 1));
    for (int c = k == 0 ? 1 : 0; c < b.count(k); ++c) {
      out.names[k].push_back(b.names[k][c]);
      if (k) {
        out.src[k].push_back(b.src[k][c] + below);
        out.tgt[k].push_back(b.tgt[k][c] + below);
      }
    }
  }
  for (int v = 0; v < out.count(0); ++v) out.names[0][v] = "|" + std::to_string(v);
  return out;
}

std::string to_string(const CellId& c) {
  std::string s;
  for (std::size_t i = 0; i < c.path.size(); ++i) s += (i ? "." : "") + std::to_string(c.path[i]);
  return s + "|" + std::to_string(c.gap);
}

CellId parse_cell(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) throw StructuralError("cell: missing '|' in " + std::string(text));
  auto number = [&](std::string_view part) {
    int v = -1;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || v < 0)
      throw StructuralError("cell: bad index in " + std::string(text));
    return v;
  };
  CellId c;
  std::string_view path = text.substr(0, bar);
  while (!path.empty()) {
    const auto dot = path.find('.');
    c.path.push_back(number(path.substr(0, dot)));
    path = dot == std::string_view::npos ? std::string_view{} : path.substr(dot + 1);
  }
  c.gap = number(text.substr(bar + 1));
  return c;
}

GlobularSet realize(const Tree& t) {
  if (t.is_leaf()) {
    GlobularSet point;
    point.names = {{"|0"}};
    point.src = {{}};
    point.tgt = {{}};
    return point;
  }
  GlobularSet out = suspend(realize(t.children[0]), "0");
  for (std::size_t i = 1; i < t.arity(); ++i) out = wedge(out, suspend(realize(t.children[i]), std::to_string(i)));
  return out;
}

std::vector<CellId> cells_of(const Tree& t) {
  std::vector<CellId> out;
  std::vector<std::pair<std::vector<int>, const Tree*>> level{{{}, &t}};
  while (!level.empty()) {
    std::vector<std::pair<std::vector<int>, const Tree*>> next;
    for (const auto& [path, x] : level) {
      for (int g = 0; g <= static_cast<int>(x->arity()); ++g) out.push_back({path, g});
      for (std::size_t i = 0; i < x->arity(); ++i) {
        auto p = path;
        p.push_back(static_cast<int>(i));
        next.push_back({std::move(p), &x->children[i]});
      }
    }
    level = std::move(next);
  }
  return out;
}

const Tree& subtree(const Tree& t, const std::vector<int>& path) {
  const Tree* x = &t;
  for (int i : path) {
    if (i < 0 || i >= static_cast<int>(x->arity())) throw StructuralError("subtree: path leaves the tree");
    x = &x->children[i];
  }
  return *x;
}

}  // namespace catkit
