// Cocartesian lifts of a functor p : E -> C, and the cofibration verdict.
#pragma once

#include "catkit/fincat.hpp"

namespace catkit {

enum class LiftVerdict { SplitCofibration, Cofibration, Neither };
const char* to_string(LiftVerdict v);

struct LiftEntry {
  int f = 0;       // base morphism
  int object = 0;  // object of E over dom f
  std::vector<int> candidates;   // morphisms out of `object` lying over f
  std::vector<int> cocartesian;  // those with the universal factorization property
};

struct LiftReport {
  /// States which lifts are searched; printed as the report header.
  std::string convention;
  std::vector<LiftEntry> entries;  // by f, then object
  LiftVerdict verdict = LiftVerdict::Neither;
  /// Neither: the first (f, object) without a lift. Cofibration: why no
  /// cleavage splits. Empty for split cofibrations.
  std::string witness;
  /// One chosen lift per entry: a split cleavage when the verdict is split,
  /// otherwise the first cocartesian lift (-1 where none exists).
  std::vector<int> chosen;
  /// False when the split search ran out of budget; the verdict is then
  /// Cofibration without a proof that no splitting exists.
  bool split_decided = true;
};

/// phi : e -> e' over f is cocartesian when every psi : e -> e'' over h . f
/// (for every h : cod f -> p e'') factors as chi . phi for exactly one chi
/// over h.
bool is_cocartesian(const Functor& p, int phi);

/// Exhaustive lift search for every (f, object over dom f), then a
/// backtracking search for a cleavage closed under identities and
/// composition. `split_budget` bounds the backtracking nodes.
namespace serial {
LiftReport cocartesian_lifts(const Functor& p, std::size_t split_budget = 10'000'000);
}
namespace parallel {
LiftReport cocartesian_lifts(const Functor& p, std::size_t split_budget = 10'000'000);
}
LiftReport cocartesian_lifts(const Functor& p, std::size_t split_budget = 10'000'000);

}  // namespace catkit
