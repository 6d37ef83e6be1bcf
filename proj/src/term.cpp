#include "xform/term.hpp"

#include <algorithm>
#include <functional>

namespace xform {

Term Term::constant(const std::string& name, TypeExpr ty) {
  Term t;
  t.node_ = std::make_shared<Node>(Node{Kind::Const, name, std::move(ty), {}, {}});
  return t;
}

Term Term::var(const std::string& name, TypeExpr ty) {
  Term t;
  t.node_ = std::make_shared<Node>(Node{Kind::Var, name, std::move(ty), {}, {}});
  return t;
}

Term Term::schematic(const std::string& name, TypeExpr ty) {
  Term t;
  t.node_ = std::make_shared<Node>(
      Node{Kind::Schematic, name, std::move(ty), {}, {}});
  return t;
}

Term Term::app(Term f, Term a) {
  Term t;
  t.node_ = std::make_shared<Node>(
      Node{Kind::App, "", TypeExpr{}, std::move(f), std::move(a)});
  return t;
}

Term Term::app(Term f, std::initializer_list<Term> args) {
  Term t = std::move(f);
  for (const Term& a : args) t = app(t, a);
  return t;
}

Term Term::lam(const std::string& bound, TypeExpr bty, Term body) {
  Term t;
  t.node_ = std::make_shared<Node>(
      Node{Kind::Lam, bound, std::move(bty), std::move(body), {}});
  return t;
}

TypeExpr typecheck(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Var:
    case Term::Kind::Schematic:
      return t.leaf_type();
    case Term::Kind::App: {
      TypeExpr tf = typecheck(t.fun());
      TypeExpr ta = typecheck(t.arg());
      if (!tf.is_fun())
        throw TypeError("application of non-function (head type " + tf.str() +
                        ")");
      if (tf.dom() != ta)
        throw TypeError("argument type mismatch: expected " + tf.dom().str() +
                        ", got " + ta.str());
      return tf.cod();
    }
    case Term::Kind::Lam:
      return TypeExpr::fun(t.bound_type(), typecheck(t.body()));
  }
  throw TypeError("invalid term");
}

namespace {

void free_vars_go(const Term& t, std::vector<std::string>& bound,
                  std::map<std::string, TypeExpr>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (std::find(bound.rbegin(), bound.rend(), t.name()) == bound.rend())
        out.emplace(t.name(), t.leaf_type());
      return;
    case Term::Kind::App:
      free_vars_go(t.fun(), bound, out);
      free_vars_go(t.arg(), bound, out);
      return;
    case Term::Kind::Lam:
      bound.push_back(t.bound_name());
      free_vars_go(t.body(), bound, out);
      bound.pop_back();
      return;
    default:
      return;
  }
}

// A name not occurring in `avoid`, derived from `base`.
std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid) {
  std::string n = base;
  while (avoid.count(n)) n += "'";
  return n;
}

void collect_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
    case Term::Kind::Schematic:
      out.insert(t.name());
      return;
    case Term::Kind::App:
      collect_names(t.fun(), out);
      collect_names(t.arg(), out);
      return;
    case Term::Kind::Lam:
      out.insert(t.bound_name());
      collect_names(t.body(), out);
      return;
  }
}

}  // namespace

std::map<std::string, TypeExpr> free_vars(const Term& t) {
  std::map<std::string, TypeExpr> out;
  std::vector<std::string> bound;
  free_vars_go(t, bound, out);
  return out;
}

bool contains_schematic(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Schematic:
      return true;
    case Term::Kind::App:
      return contains_schematic(t.fun()) || contains_schematic(t.arg());
    case Term::Kind::Lam:
      return contains_schematic(t.body());
    default:
      return false;
  }
}

std::set<std::string> constants_of(const Term& t) {
  std::set<std::string> out;
  std::function<void(const Term&)> go = [&](const Term& u) {
    switch (u.kind()) {
      case Term::Kind::Const:
        out.insert(u.name());
        return;
      case Term::Kind::App:
        go(u.fun());
        go(u.arg());
        return;
      case Term::Kind::Lam:
        go(u.body());
        return;
      default:
        return;
    }
  };
  go(t);
  return out;
}

Term spine_head(const Term& t, std::vector<Term>* args) {
  if (t.kind() != Term::Kind::App) return t;
  Term head = spine_head(t.fun(), args);
  if (args) args->push_back(t.arg());
  return head;
}

std::size_t term_size(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::App:
      return 1 + term_size(t.fun()) + term_size(t.arg());
    case Term::Kind::Lam:
      return 1 + term_size(t.body());
    default:
      return 1;
  }
}

Term subst_var(const Term& t, const std::string& var, const Term& payload) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == var ? payload : t;
    case Term::Kind::Const:
    case Term::Kind::Schematic:
      return t;
    case Term::Kind::App:
      return Term::app(subst_var(t.fun(), var, payload),
                       subst_var(t.arg(), var, payload));
    case Term::Kind::Lam: {
      if (t.bound_name() == var) return t;  // shadowed
      auto pfree = free_vars(payload);
      if (pfree.count(t.bound_name())) {
        // Rename the binder away from the payload's free variables.
        std::set<std::string> avoid;
        for (auto& [n, _] : pfree) avoid.insert(n);
        collect_names(t.body(), avoid);
        avoid.insert(var);
        std::string nb = fresh_name(t.bound_name(), avoid);
        Term body = subst_var(t.body(), t.bound_name(),
                              Term::var(nb, t.bound_type()));
        return Term::lam(nb, t.bound_type(), subst_var(body, var, payload));
      }
      return Term::lam(t.bound_name(), t.bound_type(),
                       subst_var(t.body(), var, payload));
    }
  }
  return t;
}

Term substitute(const Term& t, const Subst& s) {
  if (s.empty()) return t;
  std::set<std::string> payload_free;
  for (auto& [_, p] : s)
    for (auto& [n, __] : free_vars(p)) payload_free.insert(n);

  std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
    switch (u.kind()) {
      case Term::Kind::Schematic: {
        auto it = s.find(u.name());
        return it == s.end() ? u : it->second;
      }
      case Term::Kind::App:
        return Term::app(go(u.fun()), go(u.arg()));
      case Term::Kind::Lam: {
        if (payload_free.count(u.bound_name()) && contains_schematic(u.body())) {
          std::set<std::string> avoid = payload_free;
          collect_names(u.body(), avoid);
          std::string nb = fresh_name(u.bound_name(), avoid);
          Term body = subst_var(u.body(), u.bound_name(),
                                Term::var(nb, u.bound_type()));
          return Term::lam(nb, u.bound_type(), go(body));
        }
        return Term::lam(u.bound_name(), u.bound_type(), go(u.body()));
      }
      default:
        return u;
    }
  };
  return go(t);
}

Term beta_normalize(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::App: {
      Term f = beta_normalize(t.fun());
      if (f.kind() == Term::Kind::Lam)
        return beta_normalize(subst_var(f.body(), f.bound_name(), t.arg()));
      return Term::app(f, beta_normalize(t.arg()));
    }
    case Term::Kind::Lam:
      return Term::lam(t.bound_name(), t.bound_type(),
                       beta_normalize(t.body()));
    default:
      return t;
  }
}

namespace {

bool alpha_go(const Term& a, const Term& b, std::vector<std::string>& ba,
              std::vector<std::string>& bb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Schematic:
      return a.name() == b.name() && a.leaf_type() == b.leaf_type();
    case Term::Kind::Var: {
      // Innermost binder position must coincide.
      auto ia = std::find(ba.rbegin(), ba.rend(), a.name());
      auto ib = std::find(bb.rbegin(), bb.rend(), b.name());
      bool fa = ia == ba.rend(), fb = ib == bb.rend();
      if (fa != fb) return false;
      if (fa) return a.name() == b.name() && a.leaf_type() == b.leaf_type();
      return std::distance(ba.rbegin(), ia) == std::distance(bb.rbegin(), ib);
    }
    case Term::Kind::App:
      return alpha_go(a.fun(), b.fun(), ba, bb) &&
             alpha_go(a.arg(), b.arg(), ba, bb);
    case Term::Kind::Lam: {
      if (a.bound_type() != b.bound_type()) return false;
      ba.push_back(a.bound_name());
      bb.push_back(b.bound_name());
      bool ok = alpha_go(a.body(), b.body(), ba, bb);
      ba.pop_back();
      bb.pop_back();
      return ok;
    }
  }
  return false;
}

void alpha_key_go(const Term& t, std::vector<std::string>& bound,
                  std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Const:
      out += "c:" + t.name() + ":" + t.leaf_type().str() + ";";
      return;
    case Term::Kind::Schematic:
      out += "s:" + t.name() + ":" + t.leaf_type().str() + ";";
      return;
    case Term::Kind::Var: {
      auto it = std::find(bound.rbegin(), bound.rend(), t.name());
      if (it == bound.rend())
        out += "v:" + t.name() + ":" + t.leaf_type().str() + ";";
      else
        out += "b" + std::to_string(std::distance(bound.rbegin(), it)) + ";";
      return;
    }
    case Term::Kind::App:
      out += "(";
      alpha_key_go(t.fun(), bound, out);
      alpha_key_go(t.arg(), bound, out);
      out += ")";
      return;
    case Term::Kind::Lam:
      out += "L" + t.bound_type().str() + ".";
      bound.push_back(t.bound_name());
      alpha_key_go(t.body(), bound, out);
      bound.pop_back();
      return;
  }
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  std::vector<std::string> ba, bb;
  return alpha_go(a, b, ba, bb);
}

std::string alpha_key(const Term& t) {
  std::string out;
  std::vector<std::string> bound;
  alpha_key_go(t, bound, out);
  return out;
}

namespace {

struct Frame {
  std::string pname, tname;
  TypeExpr ty;
};

// Does t mention any target-side binder from `frames`, respecting
// shadowing by inner lambdas of t itself?
bool mentions_target_binder(const Term& t, const std::vector<Frame>& frames,
                            std::vector<std::string>& shadow) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      if (std::find(shadow.rbegin(), shadow.rend(), t.name()) != shadow.rend())
        return false;
      for (const Frame& f : frames)
        if (f.tname == t.name()) return true;
      return false;
    }
    case Term::Kind::App: {
      return mentions_target_binder(t.fun(), frames, shadow) ||
             mentions_target_binder(t.arg(), frames, shadow);
    }
    case Term::Kind::Lam: {
      shadow.push_back(t.bound_name());
      bool r = mentions_target_binder(t.body(), frames, shadow);
      shadow.pop_back();
      return r;
    }
    default:
      return false;
  }
}

struct Matcher {
  Subst subst;
  std::vector<Frame> frames;

  bool bind(const std::string& name, const TypeExpr& want, const Term& t) {
    auto it = subst.find(name);
    if (it != subst.end()) return alpha_eq(it->second, t);
    TypeExpr got;
    try {
      got = typecheck(t);
    } catch (const TypeError&) {
      return false;
    }
    if (got != want) return false;
    subst.emplace(name, t);
    return true;
  }

  // Pattern `?f x1 .. xk` where the xi are distinct pattern binders:
  // bind ?f to the abstraction of the target over the paired binders.
  bool miller(const Term& head, const std::vector<Term>& args, const Term& t) {
    std::vector<const Frame*> picked;
    for (const Term& a : args) {
      if (a.kind() != Term::Kind::Var) return false;
      const Frame* found = nullptr;
      for (auto it = frames.rbegin(); it != frames.rend(); ++it)
        if (it->pname == a.name()) {
          found = &*it;
          break;
        }
      if (!found) return false;
      for (const Frame* p : picked)
        if (p == found) return false;  // must be distinct
      picked.push_back(found);
    }
    // Abstract the target over the paired target-side binders.
    std::set<std::string> avoid;
    collect_names(t, avoid);
    Term body = t;
    std::vector<std::pair<std::string, TypeExpr>> lams;
    for (size_t i = picked.size(); i-- > 0;) {
      std::string z = fresh_name(picked[i]->pname, avoid);
      avoid.insert(z);
      body = subst_var(body, picked[i]->tname, Term::var(z, picked[i]->ty));
      lams.emplace_back(z, picked[i]->ty);
    }
    // Remaining target binders in the body would escape: reject.
    std::vector<std::string> shadow;
    if (mentions_target_binder(body, frames, shadow)) return false;
    for (auto& [z, zt] : lams) body = Term::lam(z, zt, body);
    return bind(head.name(), head.leaf_type(), body);
  }

  bool go(const Term& p, const Term& t) {
    if (p.kind() == Term::Kind::Schematic) {
      std::vector<std::string> shadow;
      if (mentions_target_binder(t, frames, shadow)) return false;
      return bind(p.name(), p.leaf_type(), t);
    }
    switch (p.kind()) {
      case Term::Kind::Const:
        return t.kind() == Term::Kind::Const && p.name() == t.name() &&
               p.leaf_type() == t.leaf_type();
      case Term::Kind::Var: {
        for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
          if (it->pname == p.name()) {
            // Bound: target must be the paired binder.
            return t.kind() == Term::Kind::Var && it->tname == t.name() &&
                   // the target occurrence must resolve to this frame, i.e.
                   // not be shadowed by a deeper frame with the same name
                   [&] {
                     for (auto jt = frames.rbegin(); jt != it; ++jt)
                       if (jt->tname == t.name()) return false;
                     return true;
                   }();
          }
          if (it->tname == t.name() && t.kind() == Term::Kind::Var)
            return false;  // target binder paired with a different name
        }
        return t.kind() == Term::Kind::Var && p.name() == t.name() &&
               p.leaf_type() == t.leaf_type();
      }
      case Term::Kind::App: {
        if (t.kind() == Term::Kind::App) {
          Matcher save = *this;
          if (go(p.fun(), t.fun()) && go(p.arg(), t.arg())) return true;
          *this = save;
        }
        std::vector<Term> args;
        Term head = spine_head(p, &args);
        if (head.kind() == Term::Kind::Schematic) return miller(head, args, t);
        return false;
      }
      case Term::Kind::Lam: {
        if (t.kind() != Term::Kind::Lam || p.bound_type() != t.bound_type())
          return false;
        frames.push_back({p.bound_name(), t.bound_name(), p.bound_type()});
        bool ok = go(p.body(), t.body());
        frames.pop_back();
        return ok;
      }
      default:
        return false;
    }
  }
};

}  // namespace

std::optional<Subst> match(const Term& pattern, const Term& target) {
  Matcher m;
  if (!m.go(pattern, target)) return std::nullopt;
  return m.subst;
}

}  // namespace xform
