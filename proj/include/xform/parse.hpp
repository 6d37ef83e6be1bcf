// Textual syntax for types, terms, and transformation files, with the
// inverse renderer. Application is juxtaposition, `%x:T.` binds a
// lambda, `===>` is the function relator in rule statements, `{..}` and
// `{#..#}` are set and multiset displays, and `*`, `+`, `=`, `<=`, `<`,
// `dvd`, `subseteq`, `msubseteq` are infix sugar for prefix constants.

#ifndef XFORM_PARSE_HPP_
#define XFORM_PARSE_HPP_

#include <map>
#include <stdexcept>
#include <string>

#include "xform/rule.hpp"

namespace xform {

struct SourceSpan {
  std::string file = "<input>";
  int line = 1;
  int col = 1;
  std::string str() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(col);
  }
};

struct SyntaxError : std::runtime_error {
  SourceSpan span;
  SyntaxError(const SourceSpan& s, const std::string& msg)
      : std::runtime_error(s.str() + ": " + msg), span(s) {}
};

struct DuplicateRuleName : std::runtime_error {
  explicit DuplicateRuleName(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Free variables and extra constants visible while parsing one term.
struct SymbolScope {
  std::map<std::string, TypeExpr> consts;  // file-declared constants
  std::map<std::string, TypeExpr> vars;    // free variable context
  std::map<std::string, RelExpr> rels;     // declared base relations
};

TypeExpr parse_type(const std::string& text,
                    const std::string& file = "<type>");

Term parse_term(const std::string& text, const SymbolScope& scope = {},
                const std::string& file = "<term>");

// parse_term(render(t)) is alpha-equal to t for closed well-typed terms.
std::string render(const Term& t);

std::string render_type(const TypeExpr& t);

// One goal term; '#' starts a comment. The goal must be closed,
// schematic-free, and of type bool.
Term parse_goal_file(const std::string& text,
                     const std::string& file = "<goal>");

// Sectioned format: [meta] (name, from_types, to_types, may_strengthen),
// [constants] (`from|to|rel name : type` per line), [rules]
// (`name = statement` per line), [normalize] (`lhs ~> rhs` per line),
// optional [universe] (`key = value` bound overrides).
Transformation parse_transformation_file(
    const std::string& text, const std::string& file = "<xform>",
    std::map<std::string, std::string>* universe_overrides = nullptr);

std::string render_transformation_file(const Transformation& t);

}  // namespace xform

#endif  // XFORM_PARSE_HPP_
