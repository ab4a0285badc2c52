// Fact file parsing and canonical rendering.
//
// Grammar (whitespace-insensitive between tokens, '%' starts a line comment):
//
//   file      = { fact } ;
//   fact      = factname "(" args ")" "." ;
//   factname  = "object_" | "connection_" | "map_" | "requirement_" ;
//   args      = term { "," term } ;
//   term      = compound | atom | quoted | integer | "_" | list ;
//   compound  = atom "(" args ")" ;
//   list      = "[" [ term { "," term } ] "]" ;
//   atom      = lowercase letter, then letters, digits, "_" (ASCII only) ;
//   quoted    = "'" chars "'"  with backslash escaping for "'" and "\" ;
//   integer   = digits ;
//
// Terms are first parsed generically, then each fact is checked against the
// shape rule for its name.  Syntax errors abort at the first offending token;
// shape errors are collected across the file.  Either way a file with errors
// yields no facts.

#include "dsutgen/facts.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace dsutgen {
namespace {

struct Term {
  enum class Kind { atom, quoted, integer, var, list, compound };

  Kind kind = Kind::atom;
  std::string text;         // atom name, decoded quoted content, or digits
  long long value = 0;      // integer value
  std::vector<Term> args;   // list items or compound arguments
  SourcePos pos;
};

struct RawFact {
  std::string name;
  std::vector<Term> args;
  SourcePos pos;
};

struct SyntaxError {
  ParseError error;
};

[[noreturn]] void fail(SourcePos pos, std::string message) {
  throw SyntaxError{ParseError{pos, std::move(message), false}};
}

bool is_atom_start(char c) { return c >= 'a' && c <= 'z'; }
bool is_atom_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_valid_atom(std::string_view s) {
  if (s.empty() || !is_atom_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return is_atom_char(c); });
}

bool is_valid_integer(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return is_digit(c); });
}

std::string quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

/// Canonical text of a term: bare where the bare form reparses to the same
/// value, quoted otherwise.
std::string render_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::atom:
      return t.text;
    case Term::Kind::integer:
      return t.text;
    case Term::Kind::var:
      return "_";
    case Term::Kind::quoted:
      if (is_valid_atom(t.text)) return t.text;
      if (is_valid_integer(t.text)) return t.text;
      return quote(t.text);
    case Term::Kind::list: {
      std::string out = "[";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        out += render_term(t.args[i]);
      }
      return out + "]";
    }
    case Term::Kind::compound: {
      std::string out = t.text + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        out += render_term(t.args[i]);
      }
      return out + ")";
    }
  }
  return {};
}

class Lexer {
 public:
  struct Token {
    enum class Kind { atom, integer, quoted, lparen, rparen, lbracket, rbracket, comma, dot, var, end };

    Kind kind = Kind::end;
    std::string text;
    long long value = 0;
    SourcePos pos;
  };

  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blanks();
    Token tok;
    tok.pos = pos_;
    if (at_end()) return tok;

    char c = src_[i_];
    if (is_atom_start(c)) {
      while (!at_end() && is_atom_char(src_[i_])) tok.text += take();
      tok.kind = Token::Kind::atom;
      return tok;
    }
    if (is_digit(c)) {
      while (!at_end() && is_digit(src_[i_])) tok.text += take();
      tok.kind = Token::Kind::integer;
      tok.value = std::stoll(tok.text);
      return tok;
    }
    if (c == '\'') {
      take();
      while (true) {
        if (at_end()) fail(tok.pos, "unterminated quoted atom");
        char q = take();
        if (q == '\'') break;
        if (q == '\\') {
          if (at_end()) fail(tok.pos, "unterminated quoted atom");
          q = take();
        }
        tok.text += q;
      }
      tok.kind = Token::Kind::quoted;
      return tok;
    }

    take();
    switch (c) {
      case '(': tok.kind = Token::Kind::lparen; break;
      case ')': tok.kind = Token::Kind::rparen; break;
      case '[': tok.kind = Token::Kind::lbracket; break;
      case ']': tok.kind = Token::Kind::rbracket; break;
      case ',': tok.kind = Token::Kind::comma; break;
      case '.': tok.kind = Token::Kind::dot; break;
      case '_': tok.kind = Token::Kind::var; break;
      default:
        fail(tok.pos, std::string("unexpected character '") + c + "'");
    }
    return tok;
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }

  char take() {
    char c = src_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  void skip_blanks() {
    while (!at_end()) {
      char c = src_[i_];
      if (c == '%') {
        while (!at_end() && src_[i_] != '\n') take();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

const char* token_name(Lexer::Token::Kind kind) {
  using K = Lexer::Token::Kind;
  switch (kind) {
    case K::atom: return "atom";
    case K::integer: return "integer";
    case K::quoted: return "quoted atom";
    case K::lparen: return "'('";
    case K::rparen: return "')'";
    case K::lbracket: return "'['";
    case K::rbracket: return "']'";
    case K::comma: return "','";
    case K::dot: return "'.'";
    case K::var: return "'_'";
    case K::end: return "end of input";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  std::vector<RawFact> parse_file() {
    std::vector<RawFact> facts;
    while (cur_.kind != Lexer::Token::Kind::end) {
      facts.push_back(parse_fact());
    }
    return facts;
  }

 private:
  using K = Lexer::Token::Kind;

  void advance() { cur_ = lexer_.next(); }

  Lexer::Token expect(K kind, const char* what) {
    if (cur_.kind != kind) {
      fail(cur_.pos, std::string("expected ") + what + ", found " + token_name(cur_.kind));
    }
    Lexer::Token tok = cur_;
    advance();
    return tok;
  }

  RawFact parse_fact() {
    Lexer::Token name = expect(K::atom, "fact name");
    if (name.text != "object_" && name.text != "connection_" && name.text != "map_" &&
        name.text != "requirement_") {
      fail(name.pos, "unknown fact name '" + name.text +
                         "' (expected object_, connection_, map_ or requirement_)");
    }
    RawFact fact;
    fact.name = name.text;
    fact.pos = name.pos;
    expect(K::lparen, "'('");
    fact.args.push_back(parse_term());
    while (cur_.kind == K::comma) {
      advance();
      fact.args.push_back(parse_term());
    }
    expect(K::rparen, "')'");
    expect(K::dot, "'.'");
    return fact;
  }

  Term parse_term() {
    Term t;
    t.pos = cur_.pos;
    switch (cur_.kind) {
      case K::atom: {
        t.text = cur_.text;
        advance();
        if (cur_.kind == K::lparen) {
          t.kind = Term::Kind::compound;
          advance();
          t.args.push_back(parse_term());
          while (cur_.kind == K::comma) {
            advance();
            t.args.push_back(parse_term());
          }
          expect(K::rparen, "')'");
        } else {
          t.kind = Term::Kind::atom;
        }
        return t;
      }
      case K::quoted:
        t.kind = Term::Kind::quoted;
        t.text = cur_.text;
        advance();
        return t;
      case K::integer:
        t.kind = Term::Kind::integer;
        t.text = cur_.text;
        t.value = cur_.value;
        advance();
        return t;
      case K::var:
        t.kind = Term::Kind::var;
        advance();
        return t;
      case K::lbracket: {
        t.kind = Term::Kind::list;
        advance();
        if (cur_.kind != K::rbracket) {
          t.args.push_back(parse_term());
          while (cur_.kind == K::comma) {
            advance();
            t.args.push_back(parse_term());
          }
        }
        expect(K::rbracket, "']'");
        return t;
      }
      default:
        fail(cur_.pos, std::string("expected term, found ") + token_name(cur_.kind));
    }
  }

  Lexer lexer_;
  Lexer::Token cur_;
};

// ---- shape checking ------------------------------------------------------

class ShapeChecker {
 public:
  explicit ShapeChecker(std::vector<ParseError>& errors) : errors_(errors) {}

  void check(const RawFact& raw, FactSet& out) {
    if (raw.name == "object_") {
      check_object(raw, out);
    } else if (raw.name == "connection_") {
      check_edge(raw, out.connections, /*is_map=*/false);
    } else if (raw.name == "map_") {
      check_edge(raw, out.maps, /*is_map=*/true);
    } else {
      check_requirement(raw, out);
    }
  }

 private:
  void error(SourcePos pos, std::string message) {
    errors_.push_back(ParseError{pos, std::move(message), true});
  }

  bool expect_arity(const RawFact& raw, std::size_t lo, std::size_t hi) {
    if (raw.args.size() < lo || raw.args.size() > hi) {
      error(raw.pos, raw.name + " takes " + (lo == hi ? std::to_string(lo)
                                                      : std::to_string(lo) + " to " + std::to_string(hi)) +
                         " arguments, found " + std::to_string(raw.args.size()));
      return false;
    }
    return true;
  }

  /// layer(N); range_checked constrains N to 1..4.
  std::optional<int> check_layer(const Term& t, bool range_checked) {
    if (t.kind != Term::Kind::compound || t.text != "layer" || t.args.size() != 1 ||
        t.args[0].kind != Term::Kind::integer) {
      error(t.pos, "expected layer(N) with integer N");
      return std::nullopt;
    }
    long long n = t.args[0].value;
    if (range_checked && (n < 1 || n > 4)) {
      error(t.args[0].pos, "layer out of range (expected 1..4)");
      return std::nullopt;
    }
    return static_cast<int>(n);
  }

  std::optional<ComponentRef> check_component(const Term& t) {
    if (t.kind != Term::Kind::compound || t.text != "component_" || t.args.size() != 2 ||
        t.args[0].kind != Term::Kind::atom || t.args[1].kind != Term::Kind::integer) {
      error(t.pos, "expected component_(class, index)");
      return std::nullopt;
    }
    if (t.args[1].value < 1) {
      error(t.args[1].pos, "component index must be a positive integer");
      return std::nullopt;
    }
    return ComponentRef{t.args[0].text, static_cast<int>(t.args[1].value)};
  }

  std::optional<ComponentPattern> check_pattern(const Term& t) {
    if (t.kind == Term::Kind::var) return ComponentPattern::make_any();
    if (t.kind == Term::Kind::compound && t.text == "component_" && t.args.size() == 2 &&
        t.args[0].kind == Term::Kind::atom) {
      if (t.args[1].kind == Term::Kind::var) return ComponentPattern::make_class_all(t.args[0].text);
      if (t.args[1].kind == Term::Kind::integer) {
        if (t.args[1].value < 1) {
          error(t.args[1].pos, "component index must be a positive integer");
          return std::nullopt;
        }
        return ComponentPattern::make_exact(t.args[0].text, static_cast<int>(t.args[1].value));
      }
    }
    error(t.pos, "expected component_(class, index), component_(class, _) or _");
    return std::nullopt;
  }

  std::optional<std::vector<std::string>> check_params(const Term& t) {
    if (t.kind != Term::Kind::compound || t.text != "parameters_" || t.args.size() != 1 ||
        t.args[0].kind != Term::Kind::list) {
      error(t.pos, "expected parameters_([...])");
      return std::nullopt;
    }
    std::vector<std::string> params;
    params.reserve(t.args[0].args.size());
    for (const Term& item : t.args[0].args) params.push_back(render_term(item));
    return params;
  }

  void check_object(const RawFact& raw, FactSet& out) {
    if (!expect_arity(raw, 4, 4)) return;
    auto layer = check_layer(raw.args[0], true);
    auto ref = check_component(raw.args[1]);

    const Term& ty = raw.args[2];
    std::optional<std::string> label;
    bool type_ok = true;
    if (ty.kind == Term::Kind::compound && ty.text == "type_" && ty.args.size() == 1) {
      const Term& v = ty.args[0];
      if (v.kind == Term::Kind::atom || v.kind == Term::Kind::quoted) {
        label = v.text;
      } else if (v.kind == Term::Kind::list && v.args.empty()) {
        label = std::nullopt;  // virtual component
      } else {
        error(v.pos, "type_ takes an atom, a quoted atom or [] (virtual)");
        type_ok = false;
      }
    } else {
      error(ty.pos, "expected type_(label)");
      type_ok = false;
    }

    auto params = check_params(raw.args[3]);
    if (!layer || !ref || !type_ok || !params) return;
    out.objects.push_back(ObjectFact{*layer, std::move(*ref), std::move(label), std::move(*params), raw.pos});
  }

  void check_edge(const RawFact& raw, std::vector<EdgeFact>& out, bool is_map) {
    if (!expect_arity(raw, 4, 4)) return;
    auto layer = check_layer(raw.args[0], true);
    auto a = check_component(raw.args[1]);
    auto b = check_component(raw.args[2]);
    auto params = check_params(raw.args[3]);
    if (!layer || !a || !b || !params) return;
    (void)is_map;
    out.push_back(EdgeFact{*layer, std::move(*a), std::move(*b), std::move(*params), raw.pos});
  }

  void check_requirement(const RawFact& raw, FactSet& out) {
    if (!expect_arity(raw, 3, 4)) return;
    // The layer of a requirement is range-checked during validation, not
    // here, so that a whole requirement file can be linted in one pass.
    auto layer = check_layer(raw.args[0], false);
    auto source = check_pattern(raw.args[1]);
    auto target = check_pattern(raw.args[2]);
    std::optional<std::vector<std::string>> params = std::vector<std::string>{};
    if (raw.args.size() == 4) params = check_params(raw.args[3]);
    if (!layer || !source || !target || !params) return;
    out.requirements.push_back(
        RequirementFact{*layer, std::move(*source), std::move(*target), std::move(*params), raw.pos});
  }

  std::vector<ParseError>& errors_;
};

// ---- rendering -----------------------------------------------------------

std::string render_ref(const ComponentRef& ref) {
  // Class names come from parsed atoms and are rendered bare; the compact
  // comma (no space) matches the fixture style.
  return "component_(" + ref.class_name + "," + std::to_string(ref.index) + ")";
}

std::string render_pattern(const ComponentPattern& p) {
  switch (p.kind) {
    case ComponentPattern::Kind::exact:
      return "component_(" + p.class_name + "," + std::to_string(p.index) + ")";
    case ComponentPattern::Kind::class_all:
      return "component_(" + p.class_name + ",_)";
    case ComponentPattern::Kind::any:
      return "_";
  }
  return {};
}

std::string render_params(const std::vector<std::string>& params) {
  std::string out = "parameters_([";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += params[i];
  }
  return out + "])";
}

std::string render_type(const std::optional<std::string>& label) {
  if (!label) return "type_([])";
  if (is_valid_atom(*label)) return "type_(" + *label + ")";
  return "type_(" + quote(*label) + ")";
}

std::string object_line(const ObjectFact& f) {
  return "object_(layer(" + std::to_string(f.layer) + "), " + render_ref(f.ref) + ", " +
         render_type(f.type_label) + ", " + render_params(f.params) + ").";
}

std::string edge_line(const char* name, const EdgeFact& f) {
  return std::string(name) + "(layer(" + std::to_string(f.layer) + "), " + render_ref(f.a) +
         ", " + render_ref(f.b) + ", " + render_params(f.params) + ").";
}

std::string requirement_line(const RequirementFact& f) {
  std::string out = "requirement_(layer(" + std::to_string(f.layer) + "), " +
                    render_pattern(f.source) + ", " + render_pattern(f.target);
  if (!f.params.empty()) out += ", " + render_params(f.params);
  return out + ").";
}

// Sort key shared by all fact kinds: layer descending, then canonical
// component order.
template <typename T, typename KeyFn>
std::vector<const T*> sorted_view(const std::vector<T>& facts, KeyFn key) {
  std::vector<const T*> view;
  view.reserve(facts.size());
  for (const T& f : facts) view.push_back(&f);
  std::stable_sort(view.begin(), view.end(),
                   [&](const T* lhs, const T* rhs) { return key(*lhs) < key(*rhs); });
  return view;
}

auto pattern_key(const ComponentPattern& p) {
  return std::tuple(p.class_name, static_cast<int>(p.kind), p.index);
}

}  // namespace

ComponentPattern ComponentPattern::make_exact(std::string cls, int idx) {
  return ComponentPattern{Kind::exact, std::move(cls), idx};
}

ComponentPattern ComponentPattern::make_class_all(std::string cls) {
  return ComponentPattern{Kind::class_all, std::move(cls), 0};
}

ComponentPattern ComponentPattern::make_any() { return ComponentPattern{}; }

std::string to_string(const ComponentRef& ref) {
  return "(" + ref.class_name + "," + std::to_string(ref.index) + ")";
}

std::string to_string(const ComponentPattern& pattern) {
  switch (pattern.kind) {
    case ComponentPattern::Kind::exact:
      return "(" + pattern.class_name + "," + std::to_string(pattern.index) + ")";
    case ComponentPattern::Kind::class_all:
      return "(" + pattern.class_name + ",_)";
    case ComponentPattern::Kind::any:
      return "_";
  }
  return {};
}

bool structurally_equal(const FactSet& lhs, const FactSet& rhs) {
  // Facts form a multiset per kind: reordering (for example by the canonical
  // renderer) never changes structure.  Comparing rendered lines excludes
  // source positions by construction.
  auto lines = [](const FactSet& facts) {
    std::array<std::vector<std::string>, 4> out;
    for (const ObjectFact& f : facts.objects) out[0].push_back(object_line(f));
    for (const EdgeFact& f : facts.connections) out[1].push_back(edge_line("connection_", f));
    for (const EdgeFact& f : facts.maps) out[2].push_back(edge_line("map_", f));
    for (const RequirementFact& f : facts.requirements) out[3].push_back(requirement_line(f));
    for (auto& group : out) std::sort(group.begin(), group.end());
    return out;
  };
  return lines(lhs) == lines(rhs);
}

ParseResult parse_facts(std::string_view text) {
  ParseResult result;
  std::vector<RawFact> raw;
  try {
    raw = Parser(text).parse_file();
  } catch (const SyntaxError& e) {
    result.errors.push_back(e.error);
    return result;
  }

  ShapeChecker checker(result.errors);
  for (const RawFact& fact : raw) checker.check(fact, result.facts);
  if (!result.errors.empty()) result.facts = FactSet{};
  return result;
}

std::string render_facts(const FactSet& facts) {
  std::ostringstream out;

  for (const ObjectFact* f : sorted_view(facts.objects, [](const ObjectFact& f) {
         return std::tuple(-f.layer, f.ref);
       })) {
    out << object_line(*f) << "\n";
  }
  for (const EdgeFact* f : sorted_view(facts.connections, [](const EdgeFact& f) {
         return std::tuple(-f.layer, f.a, f.b);
       })) {
    out << edge_line("connection_", *f) << "\n";
  }
  for (const EdgeFact* f : sorted_view(facts.maps, [](const EdgeFact& f) {
         return std::tuple(-f.layer, f.a, f.b);
       })) {
    out << edge_line("map_", *f) << "\n";
  }
  for (const RequirementFact* f : sorted_view(facts.requirements, [](const RequirementFact& f) {
         return std::tuple(-f.layer, pattern_key(f.source), pattern_key(f.target));
       })) {
    out << requirement_line(*f) << "\n";
  }
  return out.str();
}

}  // namespace dsutgen
