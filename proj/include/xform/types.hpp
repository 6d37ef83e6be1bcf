// Simple type expressions for the term language: base types, unary
// container constructors, and the function arrow. Values are immutable
// and shared; structural equality is the only notion of type agreement.

#ifndef XFORM_TYPES_HPP_
#define XFORM_TYPES_HPP_

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace xform {

struct TypeError : std::runtime_error {
  explicit TypeError(const std::string& msg) : std::runtime_error(msg) {}
};

class TypeExpr {
public:
  enum class Kind { Base, Con, Fun };

  TypeExpr() = default;  // empty; only for containers, not a valid type

  static TypeExpr base(const std::string& name);
  static TypeExpr con(const std::string& name, std::vector<TypeExpr> args);
  static TypeExpr fun(TypeExpr dom, TypeExpr cod);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const std::vector<TypeExpr>& args() const { return node_->args; }
  const TypeExpr& dom() const { return node_->args[0]; }
  const TypeExpr& cod() const { return node_->args[1]; }

  bool is_fun() const { return valid() && node_->kind == Kind::Fun; }
  bool is_bool() const;

  bool operator==(const TypeExpr& rhs) const;
  bool operator!=(const TypeExpr& rhs) const { return !(*this == rhs); }
  // Total order, usable as a map key.
  int compare(const TypeExpr& rhs) const;
  bool operator<(const TypeExpr& rhs) const { return compare(rhs) < 0; }

  std::string str() const;

private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<TypeExpr> args;
  };
  std::shared_ptr<const Node> node_;
};

// Shorthands for the fixed base types.
namespace ty {
TypeExpr nat();
TypeExpr integer();
TypeExpr rat();
TypeExpr boolean();
TypeExpr bit();
TypeExpr set(const TypeExpr& elem);
TypeExpr multiset(const TypeExpr& elem);
TypeExpr list(const TypeExpr& elem);
TypeExpr fn(const TypeExpr& dom, const TypeExpr& cod);
}  // namespace ty

}  // namespace xform

#endif  // XFORM_TYPES_HPP_
