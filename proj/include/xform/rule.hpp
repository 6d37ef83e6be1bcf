// Transfer rules and transformations. A transfer rule `R a b` pairs a
// term of the from-side language (a) with one of the to-side language
// (b) under a relation expression R. A transformation bundles rules,
// declared constant tables for each side, and oriented normalization
// rewrites. Reversal pushes `swap` to the leaves and exchanges sides.

#ifndef XFORM_RULE_HPP_
#define XFORM_RULE_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "xform/rel.hpp"
#include "xform/term.hpp"

namespace xform {

struct TransferRule {
  std::string name;
  RelExpr rel;
  Term left, right;
  // Bundled rules are oracle_verified at load (strict mode); rules from
  // user files that cannot be checked remain assumed.
  enum class ProofStatus { Assumed, OracleVerified };
  ProofStatus proof_status = ProofStatus::Assumed;
  std::string verified_bound;  // description of the bound used
  bool generated = false;      // literal rules produced by the catalog

  std::string str() const;
};

// Side a rewrite prepares: From rewrites fire when the from-side is the
// goal side (i.e. on the reversed transformation), To rewrites on the
// plain direction, Neutral ones always.
enum class RewriteSide { From, To, Neutral };

struct RewriteRule {
  Term lhs, rhs;
  RewriteSide side = RewriteSide::Neutral;
};

struct Transformation {
  std::string name;
  std::vector<TypeExpr> from_types, to_types;
  bool may_strengthen = false;
  bool reversed = false;
  std::vector<TransferRule> rules;
  std::vector<RewriteRule> rewrites;
  std::set<std::string> from_consts, to_consts;
  std::map<std::string, RelExpr> base_rels;

  // Constants of the side a goal must be written in when this
  // transformation is applied as-is (rules match their right sides).
  const std::set<std::string>& goal_side_consts() const { return to_consts; }

  std::string display_name() const;
};

struct RuleFormatError : std::runtime_error {
  explicit RuleFormatError(const std::string& m) : std::runtime_error(m) {}
};

// Checks that `rel left right` is a boolean statement: the relation's
// type pair must equal (type(left), type(right)). Also enforces the side
// discipline: the left term mentions no declared to-side constants and
// the right term no declared from-side constants. Throws on violation.
void validate_rule(const TransferRule& r, const Transformation& t);

// `R a b`  =>  `(swap R) b a`, with swap pushed to the leaves and
// eq/imp/revimp cases eliminated.
TransferRule reverse_rule(const TransferRule& r);

// Reverses every rule, exchanges the type sets and constant tables, and
// retargets the rewrites. The name gains or loses a "-rev" suffix.
Transformation reverse_transformation(const Transformation& t);

}  // namespace xform

#endif  // XFORM_RULE_HPP_
