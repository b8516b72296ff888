// Strict monoidal categories with tabulated tensor.
//
// A truncated category omits tensors that would leave its stored range (for
// example ordinal sums beyond a maximum size). A missing object tensor is -1;
// f (x) g is required exactly when both dom f (x) dom g and cod f (x) cod g exist.
#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>

#include "catkit/fincat.hpp"

namespace catkit {

class StrictMonCat {
public:
  StrictMonCat() = default;
  /// `tensor_obj[x * n + y]` is x (x) y or -1. `tensor_mor(f, g)` is queried for
  /// every pair whose endpoint tensors exist.
  StrictMonCat(CatRef base, int unit, std::vector<int> tensor_obj, const std::function<int(int, int)>& tensor_mor,
               bool truncated = false);

  const CatRef& base() const { return base_; }
  const FinCat& category() const { return *base_; }
  int unit() const { return unit_; }
  bool truncated() const { return truncated_; }

  int tensor(int x, int y) const { return tensor_obj_[x * base_->object_count() + y]; }
  /// f (x) g, or -1 outside the stored range.
  int tensor_mor(int f, int g) const {
    auto it = tensor_mor_.find(key(f, g));
    return it == tensor_mor_.end() ? -1 : it->second;
  }
  /// Left-bracketed tensor of a list; -1 when it leaves the stored range.
  int tensor_all(const std::vector<int>& objects) const;
  int tensor_all_mor(const std::vector<int>& morphisms) const;

  const std::vector<int>& tensor_table() const { return tensor_obj_; }
  std::size_t tensor_mor_entries() const { return tensor_mor_.size(); }
  /// Copy with one morphism tensor overwritten (seeded defects in tests).
  StrictMonCat with_tensor_mor(int f, int g, int h) const;

private:
  static std::uint64_t key(int f, int g) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(f)) << 32) | static_cast<std::uint32_t>(g);
  }

  CatRef base_;
  int unit_ = 0;
  bool truncated_ = false;
  std::vector<int> tensor_obj_;
  std::unordered_map<std::uint64_t, int> tensor_mor_;
};

/// Category laws of the base plus strict unit, associativity, endpoint,
/// identity and interchange laws of the tensor, wherever the tensors exist.
Report check_strict_monoidal(const StrictMonCat& c, bool include_base = true);

/// One-object, one-morphism strict monoidal category.
StrictMonCat terminal_strict();
/// Discrete category on Z/n with addition as tensor.
StrictMonCat discrete_group(int n);
/// A monoid (as a one-object category) with its own multiplication as tensor.
/// Requires the monoid to be commutative for interchange to hold.
StrictMonCat commutative_monoid_strict(const FinCat& monoid);

/// Functor laws plus strict preservation of unit and tensor, where defined.
Report check_strict_functor(const StrictMonCat& source, const StrictMonCat& target, const Functor& f);

}  // namespace catkit
