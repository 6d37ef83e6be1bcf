#include "xform/builtins.hpp"

#include <cctype>

namespace xform::builtins {

namespace {

std::map<std::string, TypeExpr> make_signature() {
  using namespace ty;
  TypeExpr N = nat(), I = integer(), Q = rat(), B = boolean(), T = bit();
  TypeExpr M = multiset(N), S = set(N), SS = set(S), L = list(N);
  TypeExpr FB = fn(N, B), FN = fn(N, N);
  auto p2 = [](TypeExpr a, TypeExpr b, TypeExpr c) {
    return fn(a, fn(b, c));
  };
  auto p3 = [&](TypeExpr a, TypeExpr b, TypeExpr c, TypeExpr d) {
    return fn(a, p2(b, c, d));
  };
  std::map<std::string, TypeExpr> m;
  // naturals
  m["add"] = p2(N, N, N);
  m["times"] = p2(N, N, N);
  m["lcm"] = p2(N, N, N);
  m["gcd"] = p2(N, N, N);
  m["exp"] = p2(N, N, N);
  m["choose"] = p2(N, N, N);
  m["pow2"] = fn(N, N);
  m["suc"] = fn(N, N);
  m["dvd"] = p2(N, N, B);
  m["le"] = p2(N, N, B);
  m["lt"] = p2(N, N, B);
  m["plus3"] = p3(N, N, N, B);
  m["prime"] = fn(N, B);
  m["pos"] = fn(N, B);
  m["forall_pos"] = fn(fn(N, B), B);
  m["exists_pos"] = fn(fn(N, B), B);
  // multisets of naturals
  m["mempty"] = M;
  m["madd"] = p2(N, M, M);
  m["msum"] = p2(M, M, M);
  m["munion"] = p2(M, M, M);
  m["minter"] = p2(M, M, M);
  m["msubseteq"] = p2(M, M, B);
  m["smult"] = p2(M, N, M);
  m["sing"] = fn(M, B);
  m["count"] = p2(M, N, N);
  m["forall_prime"] = fn(fn(M, B), B);
  m["exists_prime"] = fn(fn(M, B), B);
  // sets of naturals
  m["emptyset"] = S;
  m["insert"] = p2(N, S, S);
  m["union"] = p2(S, S, S);
  m["inter"] = p2(S, S, S);
  m["subseteq"] = p2(S, S, B);
  m["mem"] = p2(N, S, B);
  m["card"] = fn(S, N);
  m["finite"] = fn(S, B);
  m["eqp"] = p2(S, S, B);
  m["disjoint"] = p2(S, S, B);
  m["disjU"] = p3(S, S, S, B);
  m["sinsert"] = fn(S, S);
  m["Pow"] = fn(S, SS);
  m["nPow"] = p2(S, N, SS);
  m["nPowIns"] = p2(S, N, SS);
  m["forall_fin"] = fn(fn(S, B), B);
  // sets of sets
  m["disjU2"] = p3(SS, SS, SS, B);
  m["disjoint2"] = p2(SS, SS, B);
  m["eqp2"] = p2(SS, SS, B);
  m["subseteq2"] = p2(SS, SS, B);
  // lists of naturals
  m["nil"] = L;
  m["cons"] = p2(N, L, L);
  m["append"] = p2(L, L, L);
  m["list_mem"] = p2(N, L, B);
  m["list_count"] = p2(L, N, N);
  m["list_seteq"] = p2(L, L, B);
  m["list_permeq"] = p2(L, L, B);
  m["length"] = fn(L, N);
  // functional representations
  m["fmem"] = p2(N, FB, B);
  m["fempty_b"] = FB;
  m["finsert_b"] = p2(N, FB, FB);
  m["funion_b"] = p2(FB, FB, FB);
  m["finter_b"] = p2(FB, FB, FB);
  m["fsubseteq_b"] = p2(FB, FB, B);
  m["fcount"] = p2(FN, N, N);
  m["fzero_n"] = FN;
  m["fbump_n"] = p2(N, FN, FN);
  m["fplus_n"] = p2(FN, FN, FN);
  m["fmax_n"] = p2(FN, FN, FN);
  m["fmin_n"] = p2(FN, FN, FN);
  m["fle_n"] = p2(FN, FN, B);
  // integers
  m["add_i"] = p2(I, I, I);
  m["times_i"] = p2(I, I, I);
  m["neg_i"] = fn(I, I);
  m["le_i"] = p2(I, I, B);
  m["lt_i"] = p2(I, I, B);
  m["dvd_i"] = p2(I, I, B);
  m["forall_nonneg"] = fn(fn(I, B), B);
  // rationals
  m["add_q"] = p2(Q, Q, Q);
  m["le_q"] = p2(Q, Q, B);
  // bits
  m["b0"] = T;
  m["b1"] = T;
  m["bxor"] = p2(T, T, T);
  m["band"] = p2(T, T, T);
  // booleans beyond the core
  m["xorb"] = p2(B, B, B);
  // base relations, usable as boolean-valued constants inside terms
  m["F"] = p2(N, M, B);
  m["C"] = p2(N, S, B);
  m["C2"] = p2(N, SS, B);
  m["NI"] = p2(N, I, B);
  m["IR"] = p2(I, Q, B);
  m["BI"] = p2(I, T, B);
  m["BB"] = p2(T, B, B);
  m["Z"] = p2(N, B, B);
  m["SF"] = p2(S, FB, B);
  m["MF"] = p2(M, FN, B);
  m["STM"] = p2(FN, FB, B);
  m["SL"] = p2(S, L, B);
  m["ML"] = p2(M, L, B);
  m["autm"] = p2(Q, Q, B);
  return m;
}

const std::map<std::string, TypeExpr>& alias_types() {
  using namespace ty;
  static const std::map<std::string, TypeExpr> m = {
      {"nat", nat()},           {"int", integer()},
      {"rat", rat()},           {"bool", boolean()},
      {"bit", bit()},           {"mset", multiset(nat())},
      {"set", set(nat())},      {"setset", set(set(nat()))},
      {"list", list(nat())},    {"fnat", fn(nat(), nat())},
      {"fbool", fn(nat(), boolean())},
  };
  return m;
}

}  // namespace

const std::map<std::string, TypeExpr>& signature() {
  static const std::map<std::string, TypeExpr> sig = make_signature();
  return sig;
}

std::optional<TypeExpr> type_of(const std::string& name) {
  const auto& sig = signature();
  auto it = sig.find(name);
  if (it == sig.end()) return std::nullopt;
  return it->second;
}

std::optional<Term> resolve_alias(const std::string& name) {
  bool fa = name.rfind("forall_", 0) == 0;
  bool ex = name.rfind("exists_", 0) == 0;
  if (!fa && !ex) return std::nullopt;
  std::string suffix = name.substr(7);
  auto it = alias_types().find(suffix);
  if (it == alias_types().end()) return std::nullopt;
  // Bounded quantifiers (forall_pos, forall_prime, ...) are separate
  // constants in the signature, not aliases; they never reach here
  // because their suffixes are not alias type names.
  return fa ? all_at(it->second) : ex_at(it->second);
}

std::optional<std::string> alias_for(const Term& c) {
  if (c.kind() != Term::Kind::Const || (c.name() != "all" && c.name() != "ex"))
    return std::nullopt;
  const TypeExpr& t = c.leaf_type();
  if (!t.is_fun() || !t.dom().is_fun()) return std::nullopt;
  TypeExpr dom = t.dom().dom();
  for (const auto& [suffix, ty2] : alias_types())
    if (ty2 == dom)
      return (c.name() == "all" ? "forall_" : "exists_") + suffix;
  return std::nullopt;
}

bool is_numeral_name(const std::string& name) {
  if (name.empty()) return false;
  size_t i = name[0] == '-' ? 1 : 0;
  if (i >= name.size()) return false;
  for (; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

Term numeral(unsigned long long v, const TypeExpr& t) {
  return Term::constant(std::to_string(v), t);
}

Term all_at(const TypeExpr& t) {
  return Term::constant("all", ty::fn(ty::fn(t, ty::boolean()), ty::boolean()));
}
Term ex_at(const TypeExpr& t) {
  return Term::constant("ex", ty::fn(ty::fn(t, ty::boolean()), ty::boolean()));
}
Term eq_at(const TypeExpr& t) {
  return Term::constant("eq", ty::fn(t, ty::fn(t, ty::boolean())));
}
Term conj() {
  return Term::constant("and",
                        ty::fn(ty::boolean(),
                               ty::fn(ty::boolean(), ty::boolean())));
}
Term disj() {
  return Term::constant("or", ty::fn(ty::boolean(),
                                     ty::fn(ty::boolean(), ty::boolean())));
}
Term implies() {
  return Term::constant("imp", ty::fn(ty::boolean(),
                                      ty::fn(ty::boolean(), ty::boolean())));
}
Term neg() { return Term::constant("not", ty::fn(ty::boolean(), ty::boolean())); }
Term truth() { return Term::constant("true", ty::boolean()); }
Term falsity() { return Term::constant("false", ty::boolean()); }

std::optional<QuantSpec> quantifier_spec(const Term& c) {
  if (c.kind() != Term::Kind::Const) return std::nullopt;
  const std::string& n = c.name();
  const TypeExpr& t = c.leaf_type();
  auto dom_of = [&]() { return t.dom().dom(); };
  if (n == "all") return QuantSpec{true, dom_of(), QuantFilter::None};
  if (n == "ex") return QuantSpec{false, dom_of(), QuantFilter::None};
  if (n == "forall_pos") return QuantSpec{true, ty::nat(), QuantFilter::Pos};
  if (n == "exists_pos") return QuantSpec{false, ty::nat(), QuantFilter::Pos};
  if (n == "forall_prime")
    return QuantSpec{true, ty::multiset(ty::nat()), QuantFilter::Prime};
  if (n == "exists_prime")
    return QuantSpec{false, ty::multiset(ty::nat()), QuantFilter::Prime};
  if (n == "forall_fin")
    return QuantSpec{true, ty::set(ty::nat()), QuantFilter::Fin};
  if (n == "forall_nonneg")
    return QuantSpec{true, ty::integer(), QuantFilter::NonNeg};
  return std::nullopt;
}

}  // namespace xform::builtins
