#include "xform/rel.hpp"

namespace xform {

RelExpr RelExpr::eq(TypeExpr ty) {
  RelExpr r;
  r.node_ = std::make_shared<Node>(
      Node{Kind::Eq, "eq", std::move(ty), {}, {}, {}});
  return r;
}

RelExpr RelExpr::imp() {
  RelExpr r;
  r.node_ = std::make_shared<Node>(Node{Kind::Imp, "imp", {}, {}, {}, {}});
  return r;
}

RelExpr RelExpr::revimp() {
  RelExpr r;
  r.node_ =
      std::make_shared<Node>(Node{Kind::Revimp, "revimp", {}, {}, {}, {}});
  return r;
}

RelExpr RelExpr::base(const std::string& name, TypeExpr left, TypeExpr right) {
  RelExpr r;
  r.node_ = std::make_shared<Node>(
      Node{Kind::Base, name, std::move(left), std::move(right), {}, {}});
  return r;
}

RelExpr RelExpr::var(const std::string& name) {
  RelExpr r;
  r.node_ = std::make_shared<Node>(Node{Kind::Var, name, {}, {}, {}, {}});
  return r;
}

RelExpr RelExpr::funrel(RelExpr l, RelExpr r2) {
  RelExpr r;
  r.node_ = std::make_shared<Node>(
      Node{Kind::FunRel, "", {}, {}, std::move(l), std::move(r2)});
  return r;
}

RelExpr RelExpr::swap(RelExpr inner) {
  RelExpr r;
  r.node_ = std::make_shared<Node>(
      Node{Kind::Swap, "", {}, {}, std::move(inner), {}});
  return r;
}

bool RelExpr::operator==(const RelExpr& rhs) const {
  if (node_ == rhs.node_) return true;
  if (!node_ || !rhs.node_) return false;
  if (kind() != rhs.kind()) return false;
  switch (kind()) {
    case Kind::Eq:
      return eq_type() == rhs.eq_type();
    case Kind::Imp:
    case Kind::Revimp:
      return true;
    case Kind::Base:
      return name() == rhs.name() && left_type() == rhs.left_type() &&
             right_type() == rhs.right_type();
    case Kind::Var:
      return name() == rhs.name();
    case Kind::FunRel:
      return left() == rhs.left() && right() == rhs.right();
    case Kind::Swap:
      return inner() == rhs.inner();
  }
  return false;
}

std::string RelExpr::str() const {
  if (!valid()) return "<none>";
  switch (kind()) {
    case Kind::Eq:
      return "eq";
    case Kind::Imp:
      return "imp";
    case Kind::Revimp:
      return "revimp";
    case Kind::Base:
      return name();
    case Kind::Var:
      return "?" + name();
    case Kind::FunRel: {
      std::string l = left().str();
      if (left().valid() && left().kind() == Kind::FunRel) l = "(" + l + ")";
      return l + " ===> " + right().str();
    }
    case Kind::Swap: {
      std::string i = inner().str();
      if (inner().valid() && inner().kind() == Kind::FunRel) i = "(" + i + ")";
      return "swap " + i;
    }
  }
  return "<bad>";
}

std::pair<TypeExpr, TypeExpr> rel_type(const RelExpr& r) {
  switch (r.kind()) {
    case RelExpr::Kind::Eq:
      return {r.eq_type(), r.eq_type()};
    case RelExpr::Kind::Imp:
    case RelExpr::Kind::Revimp:
      return {ty::boolean(), ty::boolean()};
    case RelExpr::Kind::Base:
      return {r.left_type(), r.right_type()};
    case RelExpr::Kind::Var:
      throw TypeError("relation variable ?" + r.name() + " has no type");
    case RelExpr::Kind::FunRel: {
      auto [x, y] = rel_type(r.left());
      auto [a, b] = rel_type(r.right());
      return {TypeExpr::fun(x, a), TypeExpr::fun(y, b)};
    }
    case RelExpr::Kind::Swap: {
      auto [x, y] = rel_type(r.inner());
      return {y, x};
    }
  }
  throw TypeError("invalid relation expression");
}

RelExpr swap_normalize(const RelExpr& r) {
  switch (r.kind()) {
    case RelExpr::Kind::FunRel:
      return RelExpr::funrel(swap_normalize(r.left()),
                             swap_normalize(r.right()));
    case RelExpr::Kind::Swap: {
      RelExpr in = swap_normalize(r.inner());
      switch (in.kind()) {
        case RelExpr::Kind::Eq:
          return in;  // eq is symmetric
        case RelExpr::Kind::Imp:
          return RelExpr::revimp();
        case RelExpr::Kind::Revimp:
          return RelExpr::imp();
        case RelExpr::Kind::Swap:
          return in.inner();
        case RelExpr::Kind::FunRel:
          return RelExpr::funrel(swap_normalize(RelExpr::swap(in.left())),
                                 swap_normalize(RelExpr::swap(in.right())));
        default:
          return RelExpr::swap(in);
      }
    }
    default:
      return r;
  }
}

bool contains_rel_var(const RelExpr& r) {
  switch (r.kind()) {
    case RelExpr::Kind::Var:
      return true;
    case RelExpr::Kind::FunRel:
      return contains_rel_var(r.left()) || contains_rel_var(r.right());
    case RelExpr::Kind::Swap:
      return contains_rel_var(r.inner());
    default:
      return false;
  }
}

RelExpr rel_subst(const RelExpr& r, const RelSubst& s) {
  switch (r.kind()) {
    case RelExpr::Kind::Var: {
      auto it = s.find(r.name());
      return it == s.end() ? r : it->second;
    }
    case RelExpr::Kind::FunRel:
      return RelExpr::funrel(rel_subst(r.left(), s), rel_subst(r.right(), s));
    case RelExpr::Kind::Swap:
      return swap_normalize(RelExpr::swap(rel_subst(r.inner(), s)));
    default:
      return r;
  }
}

bool rel_match(const RelExpr& pattern, const RelExpr& ground, RelSubst& s,
               bool coerce) {
  RelExpr p = swap_normalize(rel_subst(pattern, s));
  RelExpr g = swap_normalize(ground);
  if (p.kind() == RelExpr::Kind::Var) {
    auto it = s.find(p.name());
    if (it != s.end()) return rel_match(it->second, g, s, false);
    s.emplace(p.name(), g);
    return true;
  }
  // eq over bool is a subrelation of imp and revimp; at conclusion
  // positions a stronger rule relation may serve a weaker expectation.
  if (coerce && g.kind() == RelExpr::Kind::Eq && g.eq_type().is_bool() &&
      (p.kind() == RelExpr::Kind::Imp || p.kind() == RelExpr::Kind::Revimp))
    return true;
  if (p.kind() != g.kind()) return false;
  switch (p.kind()) {
    case RelExpr::Kind::Eq:
      return p.eq_type() == g.eq_type();
    case RelExpr::Kind::Imp:
    case RelExpr::Kind::Revimp:
      return true;
    case RelExpr::Kind::Base:
      return p == g;
    case RelExpr::Kind::FunRel:
      return rel_match(p.left(), g.left(), s, false) &&
             rel_match(p.right(), g.right(), s, coerce);
    case RelExpr::Kind::Swap:
      return rel_match(p.inner(), g.inner(), s, false);
    default:
      return false;
  }
}

}  // namespace xform
