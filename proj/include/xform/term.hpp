// Terms of a simply-typed higher-order language. Every variable and
// constant carries its type explicitly, so typechecking is a bottom-up
// walk with no inference. Terms are immutable and shared.

#ifndef XFORM_TERM_HPP_
#define XFORM_TERM_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "xform/types.hpp"

namespace xform {

class Term {
public:
  enum class Kind { Const, Var, Schematic, App, Lam };

  Term() = default;

  static Term constant(const std::string& name, TypeExpr ty);
  static Term var(const std::string& name, TypeExpr ty);
  static Term schematic(const std::string& name, TypeExpr ty);
  static Term app(Term f, Term a);
  static Term app(Term f, std::initializer_list<Term> args);
  static Term lam(const std::string& bound, TypeExpr bty, Term body);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }       // Const/Var/Schematic
  const TypeExpr& leaf_type() const { return node_->ty; }       // Const/Var/Schematic
  const Term& fun() const { return node_->a; }                  // App
  const Term& arg() const { return node_->b; }                  // App
  const std::string& bound_name() const { return node_->name; } // Lam
  const TypeExpr& bound_type() const { return node_->ty; }      // Lam
  const Term& body() const { return node_->a; }                 // Lam

  bool is_const(const std::string& n) const {
    return valid() && kind() == Kind::Const && name() == n;
  }

  // Pointer identity; cheap and conservative.
  bool same_node(const Term& rhs) const { return node_ == rhs.node_; }

private:
  struct Node {
    Kind kind;
    std::string name;
    TypeExpr ty;
    Term a, b;
  };
  std::shared_ptr<const Node> node_;
};

using Subst = std::map<std::string, Term>;

// Type of a term, or TypeError naming the offending subterm.
TypeExpr typecheck(const Term& t);

// Equality modulo renaming of bound variables.
bool alpha_eq(const Term& a, const Term& b);

// Canonical rendering with de Bruijn indices; alpha-equal terms map to
// equal strings. Used for hashing and deduplication.
std::string alpha_key(const Term& t);

// Full beta-normalization (normal order); terminates on well-typed input.
Term beta_normalize(const Term& t);

// Capture-avoiding replacement of schematics.
Term substitute(const Term& t, const Subst& s);

// Capture-avoiding replacement of a free variable by a term.
Term subst_var(const Term& t, const std::string& var, const Term& payload);

// First-order matching of a schematic pattern against a schematic-free
// target, modulo alpha. Also handles the pattern case `?f x1 .. xk`
// where the xi are distinct pattern-bound variables (needed for rewrite
// rules whose schematics occur under a binder).
std::optional<Subst> match(const Term& pattern, const Term& target);

// Free variables with their types (bound occurrences excluded).
std::map<std::string, TypeExpr> free_vars(const Term& t);

bool contains_schematic(const Term& t);

// Names of all constants occurring in t.
std::set<std::string> constants_of(const Term& t);

// Spine view: f a1 a2 .. an -> (f, [a1..an]).
Term spine_head(const Term& t, std::vector<Term>* args = nullptr);

std::size_t term_size(const Term& t);

}  // namespace xform

#endif  // XFORM_TERM_HPP_
