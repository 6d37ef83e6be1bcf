// The fixed signature: every constant of the bundled theory languages
// with its type, plus quantifier metadata and surface-name aliases for
// the typed quantifier instances. The logical constants all/ex/eq exist
// at every type; everything else is monomorphic.

#ifndef XFORM_BUILTINS_HPP_
#define XFORM_BUILTINS_HPP_

#include <map>
#include <optional>
#include <string>

#include "xform/term.hpp"

namespace xform::builtins {

// Monomorphic constants (domain operations, bounded quantifiers,
// base-relation constants usable inside terms).
const std::map<std::string, TypeExpr>& signature();

std::optional<TypeExpr> type_of(const std::string& name);

// forall_nat, exists_mset, ... -> the all/ex instance they abbreviate.
std::optional<Term> resolve_alias(const std::string& name);
// Inverse: alias for all/ex at this type, if one exists.
std::optional<std::string> alias_for(const Term& c);

bool is_numeral_name(const std::string& name);

Term numeral(unsigned long long v, const TypeExpr& t);
Term all_at(const TypeExpr& t);
Term ex_at(const TypeExpr& t);
Term eq_at(const TypeExpr& t);
Term conj();
Term disj();
Term implies();
Term neg();
Term truth();
Term falsity();

// Quantifier constants bind via an argument of type T -> bool; bounded
// forms restrict the range.
enum class QuantFilter { None, Pos, Prime, Fin, NonNeg };
struct QuantSpec {
  bool universal;
  TypeExpr domain;
  QuantFilter filter;
};
std::optional<QuantSpec> quantifier_spec(const Term& c);

}  // namespace xform::builtins

#endif  // XFORM_BUILTINS_HPP_
