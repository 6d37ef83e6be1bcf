// Relation expressions: the three logical relations (eq at a type,
// implication, reverse implication), named base relations of a
// transformation, relation variables used during inference, the
// function relator, and the argument-swap operator.

#ifndef XFORM_REL_HPP_
#define XFORM_REL_HPP_

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "xform/types.hpp"

namespace xform {

class RelExpr {
public:
  enum class Kind { Eq, Imp, Revimp, Base, Var, FunRel, Swap };

  RelExpr() = default;

  static RelExpr eq(TypeExpr ty);
  static RelExpr imp();
  static RelExpr revimp();
  static RelExpr base(const std::string& name, TypeExpr left, TypeExpr right);
  static RelExpr var(const std::string& name);
  static RelExpr funrel(RelExpr l, RelExpr r);
  static RelExpr swap(RelExpr inner);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const TypeExpr& eq_type() const { return node_->left; }
  const TypeExpr& left_type() const { return node_->left; }    // Base
  const TypeExpr& right_type() const { return node_->right; }  // Base
  const RelExpr& left() const { return node_->a; }             // FunRel
  const RelExpr& right() const { return node_->b; }            // FunRel
  const RelExpr& inner() const { return node_->a; }            // Swap

  bool operator==(const RelExpr& rhs) const;
  bool operator!=(const RelExpr& rhs) const { return !(*this == rhs); }

  std::string str() const;

private:
  struct Node {
    Kind kind;
    std::string name;
    TypeExpr left, right;
    RelExpr a, b;
  };
  std::shared_ptr<const Node> node_;
};

// The (X, Y) pair with r : X -> Y -> bool. Throws TypeError on relation
// variables (their type is not known until they are solved).
std::pair<TypeExpr, TypeExpr> rel_type(const RelExpr& r);

// Unique normal form: no Swap wraps eq/imp/revimp, another Swap, or a
// function relator.
RelExpr swap_normalize(const RelExpr& r);

bool contains_rel_var(const RelExpr& r);

using RelSubst = std::map<std::string, RelExpr>;

RelExpr rel_subst(const RelExpr& r, const RelSubst& s);

// Match a pattern (which may contain relation variables) against a
// ground relation, extending `s`. When `coerce` is set, a ground eq over
// bool is accepted where the pattern head asks for imp or revimp (eq is
// the stronger relation); coercion propagates only through the result
// side of a function relator.
bool rel_match(const RelExpr& pattern, const RelExpr& ground, RelSubst& s,
               bool coerce);

}  // namespace xform

#endif  // XFORM_REL_HPP_
