// Validation reports and error types shared by every catkit module.
#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace catkit {

/// Input whose indices or shapes are inconsistent, as opposed to data that is
/// well-formed but violates a law.
class StructuralError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An enumeration needed more room than the caller's bound allowed.
class BoundExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// One failed law instance: the law's name plus a rendering of the instance.
struct Violation {
  std::string law;
  std::string instance;

  bool operator==(const Violation&) const = default;
};

/// Ordered list of law violations. Empty means every checked instance held.
class Report {
public:
  void add(std::string law, std::string instance) {
    items_.push_back({std::move(law), std::move(instance)});
  }
  void append(const Report& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  }
  void append(const Report& other, const std::string& prefix) {
    for (const auto& v : other.items_) items_.push_back({v.law, prefix + v.instance});
  }

  bool ok() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<Violation>& items() const { return items_; }

  /// Number of violations whose law name equals `law`.
  std::size_t count(const std::string& law) const {
    std::size_t n = 0;
    for (const auto& v : items_) n += v.law == law;
    return n;
  }
  bool has(const std::string& law) const { return count(law) > 0; }

  bool operator==(const Report&) const = default;

private:
  std::vector<Violation> items_;
};

inline std::ostream& operator<<(std::ostream& os, const Report& r) {
  for (const auto& v : r.items()) os << "violation " << v.law << ": " << v.instance << '\n';
  return os;
}

/// Raised by constructions whose input must satisfy laws that it does not.
class LawViolation : public std::runtime_error {
public:
  LawViolation(const std::string& what, Report report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const Report& report() const { return report_; }

private:
  Report report_;
};

/// Three-valued outcome for checks that may run out of enumeration budget.
enum class Verdict { Holds, Fails, Indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

}  // namespace catkit
