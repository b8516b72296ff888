// The catkit text format.
//
// A document is a list of sections
//
//   begin <kind> <name>
//   <key> <value> ...
//   end
//
// with one record per line; '#' starts a comment. Objects, morphisms and
// elements are referred to by name, other sections by section name. Every
// kind has a canonical form, the output of print(), and parsing it back and
// printing again reproduces it byte for byte.
//
//   category       object x | identity <name> x | morphism <name> x y | compose g f h
//   functor        source C | target D | object x y | morphism f g
//   profunctor     source X | target Y | element x y <name> | left u y p q | right x p v q
//                  and, for a monad, unit u p | mult x y z p q r
//   multicategory  cap n | truncated | object x | identity <name> x
//                  | arrow <name> x1 .. xn -> y | compose h f g1 .. gn
//   strictmonoidal category C | unit I | truncated | tensor x y z | tensormor f g h
//   monoidal       category C | unit I | tensor x y z | tensormor f g h
//                  | alpha x y z m | lambda x m | rho x m
//   laxbundle      base C | fiber x F | arrow f P | mult f g c b a phi psi r
//   tree           shape <brackets> | dim n
//   labelledtree   shape <brackets> | label <cell> <brackets>
//
// Identities and identity composites, identity actions and tensors of
// identities are implied and may be omitted. For multiplications (monad and
// laxbundle) one raw pair per class of the composite suffices.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "catkit/graft.hpp"
#include "catkit/groth.hpp"
#include "catkit/monoidal.hpp"

namespace catkit {

enum class ParseCode {
  Syntax,             // malformed line, bad number, misplaced begin/end
  UnknownKind,        // begin with a kind outside the list above
  UnknownKey,         // record key not valid for the section kind
  DanglingReference,  // name of an object, morphism, element or section that does not exist
  ArityMismatch,      // wrong number of fields, or of inputs to a multiarrow
  DuplicateName,      // a name defined twice
  Incomplete,         // a required record is missing
  Invalid,            // well-formed records describing an impossible structure
};
const char* to_string(ParseCode c);

/// A parse failure with its location. `line` and `column` are 1-based;
/// `section` is empty outside sections.
class ParseError : public StructuralError {
public:
  ParseError(ParseCode code, int line, int column, std::string section, const std::string& message);
  ParseCode code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& section() const { return section_; }
  const std::string& message() const { return message_; }

private:
  ParseCode code_;
  int line_;
  int column_;
  std::string section_;
  std::string message_;
};

enum class SectionKind { Category, Functor, Profunctor, Multicategory, Monoidal, StrictMonoidal, LaxBundle, Tree, LabelledTree };
const char* to_string(SectionKind k);
std::optional<SectionKind> parse_kind(std::string_view word);

struct ProfunctorSection {
  Profunctor profunctor;
  std::optional<ProfMonad> monad;  // carrier equal to `profunctor`
};

struct LaxSection {
  LaxProfFunctor lax;
  /// Per base morphism, the profunctor section holding M^f (empty for identities).
  std::vector<std::string> arrow_sections;
};

struct TreeCell {
  Tree shape;
  int dim = 0;  // at least height(shape)
};

using SectionValue = std::variant<CatRef, Functor, ProfunctorSection, MultiRef, MonoidalCategory,
                                  std::shared_ptr<const StrictMonCat>, LaxSection, TreeCell, LabelledTree>;

struct Section {
  SectionKind kind;
  std::string name;
  int line = 0;  // of the begin record; 0 for sections built in code
  SectionValue value;
};

class Document {
public:
  std::vector<Section> sections;

  /// Appends a section; the kind follows from the value.
  void add(std::string name, SectionValue value);
  const Section* find(std::string_view name) const;
  /// The named section, or the first section of the kind when `name` is
  /// empty. Throws StructuralError when there is none or the kind differs.
  const Section& get(SectionKind kind, std::string_view name = {}) const;

  /// Name of the category section holding `c` (by pointer), searching
  /// `context` after this document.
  std::optional<std::string> category_name(const CatRef& c, const Document* context = nullptr) const;
};

/// Throws ParseError.
Document parse_document(std::string_view text);

/// Canonical text. References to categories that are not sections of `doc`
/// are resolved in `context`; throws StructuralError when unresolved.
std::string print_document(const Document& doc, const Document* context = nullptr);

/// Names as printed: names that are empty, contain whitespace or '#', or
/// repeat an earlier name get a deterministic replacement.
std::vector<std::string> printable_names(const std::vector<std::string>& names, const std::string& fallback);

/// "file:line:column: error[code] in <section>: message".
std::string format_error(const ParseError& e, std::string_view origin);

}  // namespace catkit
