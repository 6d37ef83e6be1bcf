#include "xform/rule.hpp"

#include <algorithm>

namespace xform {

std::string TransferRule::str() const {
  std::string rs = rel.str();
  if (rel.kind() == RelExpr::Kind::FunRel || rel.kind() == RelExpr::Kind::Swap)
    rs = "(" + rs + ")";
  // Rendering of the two sides is owned by the parser module; here a
  // compact structural form is enough for diagnostics.
  return rs + " <" + std::to_string(term_size(left)) + "-term> <" +
         std::to_string(term_size(right)) + "-term>";
}

std::string Transformation::display_name() const { return name; }

void validate_rule(const TransferRule& r, const Transformation& t) {
  auto [x, y] = rel_type(r.rel);
  TypeExpr tl = typecheck(r.left);
  TypeExpr tr = typecheck(r.right);
  if (tl != x)
    throw RuleFormatError("rule " + r.name + ": left term has type " +
                          tl.str() + ", relation expects " + x.str());
  if (tr != y)
    throw RuleFormatError("rule " + r.name + ": right term has type " +
                          tr.str() + ", relation expects " + y.str());
  for (const std::string& c : constants_of(r.left))
    if (t.to_consts.count(c))
      throw RuleFormatError("rule " + r.name + ": left side mentions to-side constant " + c);
  for (const std::string& c : constants_of(r.right))
    if (t.from_consts.count(c))
      throw RuleFormatError("rule " + r.name +
                            ": right side mentions from-side constant " + c);
}

TransferRule reverse_rule(const TransferRule& r) {
  TransferRule out = r;
  out.rel = swap_normalize(RelExpr::swap(r.rel));
  out.left = r.right;
  out.right = r.left;
  return out;
}

Transformation reverse_transformation(const Transformation& t) {
  Transformation out;
  if (t.reversed && t.name.size() > 4 &&
      t.name.compare(t.name.size() - 4, 4, "-rev") == 0)
    out.name = t.name.substr(0, t.name.size() - 4);
  else
    out.name = t.name + "-rev";
  out.reversed = !t.reversed;
  out.from_types = t.to_types;
  out.to_types = t.from_types;
  out.may_strengthen = t.may_strengthen;
  out.from_consts = t.to_consts;
  out.to_consts = t.from_consts;
  out.base_rels = t.base_rels;
  out.rules.reserve(t.rules.size());
  for (const TransferRule& r : t.rules) out.rules.push_back(reverse_rule(r));
  out.rewrites.reserve(t.rewrites.size());
  for (const RewriteRule& rw : t.rewrites) {
    RewriteRule flipped = rw;
    if (rw.side == RewriteSide::From)
      flipped.side = RewriteSide::To;
    else if (rw.side == RewriteSide::To)
      flipped.side = RewriteSide::From;
    out.rewrites.push_back(flipped);
  }
  return out;
}

}  // namespace xform
