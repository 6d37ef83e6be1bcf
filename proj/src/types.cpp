#include "xform/types.hpp"

#include <algorithm>

namespace xform {

namespace {

const char* kBaseNames[] = {"nat", "int", "rat", "bool", "bit"};

bool known_base(const std::string& n) {
  for (const char* b : kBaseNames)
    if (n == b) return true;
  return false;
}

// Fixed constructor arities; "fun" is handled by Kind::Fun.
int con_arity(const std::string& n) {
  if (n == "set" || n == "multiset" || n == "list") return 1;
  return -1;
}

}  // namespace

TypeExpr TypeExpr::base(const std::string& name) {
  if (!known_base(name)) throw TypeError("unknown base type: " + name);
  TypeExpr t;
  t.node_ = std::make_shared<Node>(Node{Kind::Base, name, {}});
  return t;
}

TypeExpr TypeExpr::con(const std::string& name, std::vector<TypeExpr> args) {
  int arity = con_arity(name);
  if (arity < 0) throw TypeError("unknown type constructor: " + name);
  if (static_cast<int>(args.size()) != arity)
    throw TypeError("type constructor " + name + " expects " +
                    std::to_string(arity) + " argument(s)");
  TypeExpr t;
  t.node_ = std::make_shared<Node>(Node{Kind::Con, name, std::move(args)});
  return t;
}

TypeExpr TypeExpr::fun(TypeExpr dom, TypeExpr cod) {
  TypeExpr t;
  t.node_ = std::make_shared<Node>(
      Node{Kind::Fun, "fun", {std::move(dom), std::move(cod)}});
  return t;
}

bool TypeExpr::is_bool() const {
  return valid() && node_->kind == Kind::Base && node_->name == "bool";
}

bool TypeExpr::operator==(const TypeExpr& rhs) const {
  return compare(rhs) == 0;
}

int TypeExpr::compare(const TypeExpr& rhs) const {
  if (node_ == rhs.node_) return 0;
  if (!node_) return rhs.node_ ? -1 : 0;
  if (!rhs.node_) return 1;
  if (node_->kind != rhs.node_->kind)
    return node_->kind < rhs.node_->kind ? -1 : 1;
  if (int c = node_->name.compare(rhs.node_->name)) return c < 0 ? -1 : 1;
  size_t n = std::min(node_->args.size(), rhs.node_->args.size());
  for (size_t i = 0; i < n; ++i)
    if (int c = node_->args[i].compare(rhs.node_->args[i])) return c;
  if (node_->args.size() != rhs.node_->args.size())
    return node_->args.size() < rhs.node_->args.size() ? -1 : 1;
  return 0;
}

std::string TypeExpr::str() const {
  if (!valid()) return "<none>";
  switch (node_->kind) {
    case Kind::Base:
      return node_->name;
    case Kind::Con: {
      const TypeExpr& a = node_->args[0];
      std::string inner = a.str();
      if (a.is_fun()) inner = "(" + inner + ")";
      return inner + " " + node_->name;
    }
    case Kind::Fun: {
      std::string d = dom().str();
      if (dom().is_fun()) d = "(" + d + ")";
      return d + " -> " + cod().str();
    }
  }
  return "<bad>";
}

namespace ty {
TypeExpr nat() { return TypeExpr::base("nat"); }
TypeExpr integer() { return TypeExpr::base("int"); }
TypeExpr rat() { return TypeExpr::base("rat"); }
TypeExpr boolean() { return TypeExpr::base("bool"); }
TypeExpr bit() { return TypeExpr::base("bit"); }
TypeExpr set(const TypeExpr& elem) { return TypeExpr::con("set", {elem}); }
TypeExpr multiset(const TypeExpr& elem) {
  return TypeExpr::con("multiset", {elem});
}
TypeExpr list(const TypeExpr& elem) { return TypeExpr::con("list", {elem}); }
TypeExpr fn(const TypeExpr& dom, const TypeExpr& cod) {
  return TypeExpr::fun(dom, cod);
}
}  // namespace ty

}  // namespace xform
