#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dsutgen {

struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Identity of a component within one layer: class name plus instance index.
/// Ordering is lexicographic on (class_name, index); this is the canonical
/// order used everywhere (connection endpoints, neighbor lists, reports).
struct ComponentRef {
  std::string class_name;
  int index = 0;

  friend auto operator<=>(const ComponentRef&, const ComponentRef&) = default;
};

std::string to_string(const ComponentRef& ref);  // "(class,idx)"

/// One side of a requirement: a concrete component, a whole class, or a
/// bare wildcard.
struct ComponentPattern {
  enum class Kind { exact, class_all, any };

  Kind kind = Kind::any;
  std::string class_name;  // empty when kind == any
  int index = 0;           // 0 unless kind == exact

  static ComponentPattern make_exact(std::string cls, int idx);
  static ComponentPattern make_class_all(std::string cls);
  static ComponentPattern make_any();

  friend auto operator<=>(const ComponentPattern&, const ComponentPattern&) = default;
};

std::string to_string(const ComponentPattern& pattern);

struct ObjectFact {
  int layer = 0;
  ComponentRef ref;
  std::optional<std::string> type_label;  // absent for virtual components
  std::vector<std::string> params;        // canonical term texts, carried opaquely
  SourcePos pos;
};

/// Shared record for connection_ and map_ facts.  For maps, `a` is the
/// upper-layer component and `b` the lower-layer one.
struct EdgeFact {
  int layer = 0;
  ComponentRef a;
  ComponentRef b;
  std::vector<std::string> params;
  SourcePos pos;
};

struct RequirementFact {
  int layer = 0;  // kept as written; range is checked during validation
  ComponentPattern source;
  ComponentPattern target;
  std::vector<std::string> params;
  SourcePos pos;
};

struct FactSet {
  std::vector<ObjectFact> objects;
  std::vector<EdgeFact> connections;
  std::vector<EdgeFact> maps;
  std::vector<RequirementFact> requirements;
};

/// Structural equality, ignoring source positions.
bool structurally_equal(const FactSet& lhs, const FactSet& rhs);

struct ParseError {
  SourcePos pos;
  std::string message;
  bool shape = false;  // true for well-formed terms violating a fact shape rule
};

struct ParseResult {
  FactSet facts;  // empty unless ok()
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

/// Parses a fact file.  Any error yields an empty FactSet: there is no
/// partial acceptance.  Syntax errors stop at the first offending token;
/// shape errors are collected across the whole file.
ParseResult parse_facts(std::string_view text);

/// Canonical rendering: one fact per line, grouped by fact kind
/// (object_, connection_, map_, requirement_), sorted within each group by
/// (layer descending, class, index).  parse(render(parse(x))) == parse(x).
std::string render_facts(const FactSet& facts);

}  // namespace dsutgen
