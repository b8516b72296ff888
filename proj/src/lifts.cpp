#include "catkit/lifts.hpp"

#include <map>

namespace catkit {

const char* to_string(LiftVerdict v) {
  switch (v) {
    case LiftVerdict::SplitCofibration: return "split cofibration";
    case LiftVerdict::Cofibration: return "cofibration";
    case LiftVerdict::Neither: return "neither";
  }
  return "?";
}

bool is_cocartesian(const Functor& p, int phi) {
  const FinCat& e = *p.source;
  const FinCat& c = *p.target;
  const int f = p.on_morphism(phi);
  const int src = e.dom(phi), mid = e.cod(phi);
  for (int psi : e.out(src)) {
    const int end = e.cod(psi);
    for (int h : c.hom(c.cod(f), p.on_object(end))) {
      if (c.compose(h, f) != p.on_morphism(psi)) continue;
      int factorizations = 0;
      for (int chi : e.hom(mid, end))
        if (p.on_morphism(chi) == h && e.compose(chi, phi) == psi && ++factorizations > 1) return false;
      if (factorizations != 1) return false;
    }
  }
  return true;
}

namespace {

std::vector<LiftEntry> plan_entries(const Functor& p) {
  const FinCat& e = *p.source;
  const FinCat& c = *p.target;
  std::vector<LiftEntry> entries;
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int o = 0; o < e.object_count(); ++o)
      if (p.on_object(o) == c.dom(f)) entries.push_back({f, o, {}, {}});
  return entries;
}

void fill_entry(const Functor& p, LiftEntry& entry) {
  for (int phi : p.source->out(entry.object))
    if (p.on_morphism(phi) == entry.f) {
      entry.candidates.push_back(phi);
      if (is_cocartesian(p, phi)) entry.cocartesian.push_back(phi);
    }
}

// Backtracking over one cocartesian lift per entry, identities fixed.
class SplitSearch {
public:
  SplitSearch(const Functor& p, const std::vector<LiftEntry>& entries, std::size_t budget)
      : p_(p), e_(*p.source), c_(*p.target), entries_(entries), budget_(budget), choice_(entries.size(), -1) {
    for (std::size_t i = 0; i < entries.size(); ++i) index_[{entries[i].f, entries[i].object}] = static_cast<int>(i);
    for (int f = 0; f < c_.morphism_count(); ++f)
      for (int g : c_.out(c_.cod(f))) factorizations_[c_.compose(g, f)].push_back({f, g});
  }

  bool run() {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (c_.is_identity(entries_[i].f)) choice_[i] = e_.identity(entries_[i].object);
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (choice_[i] >= 0 && !consistent(static_cast<int>(i))) return false;
    return search(0);
  }

  bool exhausted() const { return nodes_ > budget_; }
  const std::vector<int>& choice() const { return choice_; }

private:
  int at(int f, int object) const {
    auto it = index_.find({f, object});
    return it == index_.end() ? -1 : choice_[it->second];
  }

  // Does lift(g . f, o) == lift(g, cod lift(f, o)) . lift(f, o) hold wherever
  // all three are chosen? Checked for every constraint touching entry i.
  bool check(int f, int g, int o) const {
    const int first = at(f, o);
    if (first < 0) return true;
    const int second = at(g, e_.cod(first));
    const int whole = at(c_.compose(g, f), o);
    return second < 0 || whole < 0 || whole == e_.compose(second, first);
  }

  bool consistent(int i) const {
    const int f = entries_[i].f, o = entries_[i].object;
    for (int g : c_.out(c_.cod(f)))
      if (!check(f, g, o)) return false;
    // As the second factor: every (f0, o0) whose chosen lift lands on o.
    for (int f0 = 0; f0 < c_.morphism_count(); ++f0) {
      if (c_.cod(f0) != c_.dom(f)) continue;
      for (int o0 = 0; o0 < e_.object_count(); ++o0)
        if (p_.on_object(o0) == c_.dom(f0) && at(f0, o0) >= 0 && e_.cod(at(f0, o0)) == o && !check(f0, f, o0))
          return false;
    }
    auto it = factorizations_.find(f);
    if (it != factorizations_.end())
      for (const auto& [f1, g1] : it->second)
        if (!check(f1, g1, o)) return false;
    return true;
  }

  bool search(std::size_t i) {
    if (++nodes_ > budget_) return false;
    while (i < entries_.size() && choice_[i] >= 0) ++i;
    if (i == entries_.size()) return true;
    for (int phi : entries_[i].cocartesian) {
      choice_[i] = phi;
      if (consistent(static_cast<int>(i)) && search(i + 1)) return true;
      if (nodes_ > budget_) break;
    }
    choice_[i] = -1;
    return false;
  }

  const Functor& p_;
  const FinCat& e_;
  const FinCat& c_;
  const std::vector<LiftEntry>& entries_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<int> choice_;
  std::map<std::pair<int, int>, int> index_;
  std::map<int, std::vector<std::pair<int, int>>> factorizations_;
};

LiftReport finish(const Functor& p, std::vector<LiftEntry> entries, std::size_t budget) {
  const FinCat& e = *p.source;
  const FinCat& c = *p.target;
  LiftReport r;
  r.convention =
      "cocartesian lifts: phi : e -> e' over f is chosen when every psi : e -> e'' over h . f factors uniquely "
      "as chi . phi with chi over h";
  r.entries = std::move(entries);
  for (const auto& entry : r.entries) {
    r.chosen.push_back(entry.cocartesian.empty() ? -1 : entry.cocartesian.front());
    if (entry.cocartesian.empty() && r.witness.empty())
      r.witness = "no cocartesian lift of " + c.morphism_name(entry.f) + " at " + e.object_name(entry.object);
  }
  if (!r.witness.empty()) {
    r.verdict = LiftVerdict::Neither;
    return r;
  }
  SplitSearch search(p, r.entries, budget);
  if (search.run()) {
    r.verdict = LiftVerdict::SplitCofibration;
    r.chosen = search.choice();
    return r;
  }
  r.verdict = LiftVerdict::Cofibration;
  r.split_decided = !search.exhausted();
  r.witness = r.split_decided ? "no choice of lifts is closed under identities and composition"
                              : "split search budget exhausted";
  return r;
}

}  // namespace

namespace serial {
LiftReport cocartesian_lifts(const Functor& p, std::size_t split_budget) {
  check_functor_shape(p);
  auto entries = plan_entries(p);
  for (auto& entry : entries) fill_entry(p, entry);
  return finish(p, std::move(entries), split_budget);
}
}  // namespace serial

namespace parallel {
LiftReport cocartesian_lifts(const Functor& p, std::size_t split_budget) {
  check_functor_shape(p);
  auto entries = plan_entries(p);
  const int n = static_cast<int>(entries.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < n; ++i) fill_entry(p, entries[i]);
  return finish(p, std::move(entries), split_budget);
}
}  // namespace parallel

LiftReport cocartesian_lifts(const Functor& p, std::size_t split_budget) {
  return parallel::cocartesian_lifts(p, split_budget);
}

}  // namespace catkit
