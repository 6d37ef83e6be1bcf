#include "xform/parse.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <sstream>
#include <vector>

#include "xform/builtins.hpp"

namespace xform {

namespace {

// ---------------------------------------------------------------- lexer

struct Tok {
  enum class K { Ident, Num, Sym, End };
  K k = K::End;
  std::string s;
  SourceSpan span;
  bool is_sym(const char* t) const { return k == K::Sym && s == t; }
  bool is_ident(const char* t) const { return k == K::Ident && s == t; }
};

struct Lexer {
  std::string file;
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;
  std::vector<Tok> toks;

  Lexer(const std::string& f, const std::string& s) : file(f), src(s) {}

  SourceSpan here() const { return SourceSpan{file, line, col}; }

  char peek(size_t off = 0) const {
    return pos + off < src.size() ? src[pos + off] : '\0';
  }

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void take(size_t n, Tok::K k, SourceSpan sp) {
    Tok t;
    t.k = k;
    t.span = sp;
    t.s = src.substr(pos, n);
    for (size_t i = 0; i < n; ++i) advance();
    toks.push_back(std::move(t));
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw SyntaxError(here(), msg);
  }

  void run() {
    while (pos < src.size()) {
      char c = peek();
      SourceSpan sp = here();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
        continue;
      }
      if (c == '#') {
        if (peek(1) == '}') {
          take(2, Tok::K::Sym, sp);
          continue;
        }
        while (pos < src.size() && peek() != '\n') advance();
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t n = 0;
        while (std::isalnum(static_cast<unsigned char>(peek(n))) ||
               peek(n) == '_' || peek(n) == '\'')
          ++n;
        take(n, Tok::K::Ident, sp);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t n = 0;
        while (std::isdigit(static_cast<unsigned char>(peek(n)))) ++n;
        take(n, Tok::K::Num, sp);
        continue;
      }
      if (c == '-') {
        if (peek(1) == '-' && peek(2) == '>') {
          take(3, Tok::K::Sym, sp);
          continue;
        }
        if (peek(1) == '>') {
          take(2, Tok::K::Sym, sp);
          continue;
        }
        if (std::isdigit(static_cast<unsigned char>(peek(1)))) {
          size_t n = 1;
          while (std::isdigit(static_cast<unsigned char>(peek(n)))) ++n;
          take(n, Tok::K::Num, sp);
          continue;
        }
        fail("stray '-'");
      }
      if (c == '=') {
        if (peek(1) == '=' && peek(2) == '=' && peek(3) == '>') {
          take(4, Tok::K::Sym, sp);
          continue;
        }
        take(1, Tok::K::Sym, sp);
        continue;
      }
      if (c == '{' && peek(1) == '#') {
        take(2, Tok::K::Sym, sp);
        continue;
      }
      if (c == '<' && peek(1) == '=') {
        take(2, Tok::K::Sym, sp);
        continue;
      }
      if (c == '~' && peek(1) == '>') {
        take(2, Tok::K::Sym, sp);
        continue;
      }
      if (std::string("(){}[],.:%?&|~<+*").find(c) != std::string::npos) {
        take(1, Tok::K::Sym, sp);
        continue;
      }
      fail(std::string("unexpected character '") + c + "'");
    }
    Tok end;
    end.k = Tok::K::End;
    end.span = here();
    toks.push_back(end);
  }
};

std::vector<Tok> lex(const std::string& text, const std::string& file) {
  Lexer lx(file, text);
  lx.run();
  return lx.toks;
}

// ------------------------------------------------------------ token walk

struct Cursor {
  const std::vector<Tok>* toks;
  size_t i = 0;
  const Tok& cur() const { return (*toks)[i]; }
  const Tok& next(size_t off = 1) const {
    return (*toks)[std::min(i + off, toks->size() - 1)];
  }
  void bump() {
    if (i + 1 < toks->size()) ++i;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(cur().span, msg + " (found '" +
                                      (cur().k == Tok::K::End ? "<end>" : cur().s) +
                                      "')");
  }
  void expect_sym(const char* s) {
    if (!cur().is_sym(s)) fail(std::string("expected '") + s + "'");
    bump();
  }
};

// ------------------------------------------------------------ type parse

TypeExpr parse_type_at(Cursor& c);

TypeExpr parse_type_atom(Cursor& c) {
  if (c.cur().is_sym("(")) {
    c.bump();
    TypeExpr t = parse_type_at(c);
    c.expect_sym(")");
    return t;
  }
  if (c.cur().k != Tok::K::Ident) c.fail("expected a type");
  std::string n = c.cur().s;
  SourceSpan sp = c.cur().span;
  c.bump();
  try {
    return TypeExpr::base(n);
  } catch (const TypeError&) {
    throw SyntaxError(sp, "unknown base type '" + n + "'");
  }
}

TypeExpr parse_type_postfix(Cursor& c) {
  TypeExpr t = parse_type_atom(c);
  while (c.cur().is_ident("set") || c.cur().is_ident("multiset") ||
         c.cur().is_ident("list")) {
    t = TypeExpr::con(c.cur().s, {t});
    c.bump();
  }
  return t;
}

TypeExpr parse_type_at(Cursor& c) {
  TypeExpr t = parse_type_postfix(c);
  if (c.cur().is_sym("->")) {
    c.bump();
    return TypeExpr::fun(t, parse_type_at(c));
  }
  return t;
}

// -------------------------------------------------------------- term AST

struct Ast {
  enum class K {
    Name,
    Num,
    Schem,
    App,
    Lam,
    Infix,
    Not,
    SetDisp,
    MsetDisp,
    ListDisp,
    TypedName
  };
  K k;
  std::string s;
  TypeExpr ty;  // Lam bound type / TypedName type
  std::vector<Ast> kids;
  SourceSpan span;
};

Ast mk(Ast::K k, SourceSpan sp) {
  Ast a;
  a.k = k;
  a.span = sp;
  return a;
}

bool is_infix_word(const Tok& t) {
  return t.k == Tok::K::Ident &&
         (t.s == "dvd" || t.s == "subseteq" || t.s == "msubseteq");
}

// Terms a parse must not run into: statement/rewrite separators.
bool at_term_end(Cursor& c) {
  const Tok& t = c.cur();
  return t.k == Tok::K::End || t.is_sym(")") || t.is_sym("}") ||
         t.is_sym("#}") || t.is_sym("]") || t.is_sym(",") || t.is_sym("~>") ||
         t.is_sym("===>");
}

Ast parse_term_ast(Cursor& c);

Ast parse_atom(Cursor& c) {
  const Tok& t = c.cur();
  SourceSpan sp = t.span;
  if (t.is_sym("(")) {
    // `(name : type)` is an explicitly typed constant reference.
    if ((c.next(1).k == Tok::K::Ident || c.next(1).k == Tok::K::Num) &&
        c.next(2).is_sym(":")) {
      c.bump();
      Ast a = mk(Ast::K::TypedName, sp);
      a.s = c.cur().s;
      c.bump();
      c.expect_sym(":");
      a.ty = parse_type_at(c);
      c.expect_sym(")");
      return a;
    }
    c.bump();
    Ast inner = parse_term_ast(c);
    c.expect_sym(")");
    return inner;
  }
  if (t.is_sym("%")) {
    c.bump();
    Ast a = mk(Ast::K::Lam, sp);
    if (c.cur().k != Tok::K::Ident) c.fail("expected a bound variable name");
    a.s = c.cur().s;
    c.bump();
    c.expect_sym(":");
    a.ty = parse_type_at(c);
    c.expect_sym(".");
    a.kids.push_back(parse_term_ast(c));
    return a;
  }
  if (t.is_sym("?")) {
    c.bump();
    if (c.cur().k != Tok::K::Ident) c.fail("expected a schematic name");
    Ast a = mk(Ast::K::Schem, sp);
    a.s = c.cur().s;
    c.bump();
    return a;
  }
  if (t.is_sym("{")) {
    c.bump();
    Ast a = mk(Ast::K::SetDisp, sp);
    if (!c.cur().is_sym("}")) {
      a.kids.push_back(parse_term_ast(c));
      while (c.cur().is_sym(",")) {
        c.bump();
        a.kids.push_back(parse_term_ast(c));
      }
    }
    c.expect_sym("}");
    return a;
  }
  if (t.is_sym("{#")) {
    c.bump();
    Ast a = mk(Ast::K::MsetDisp, sp);
    if (!c.cur().is_sym("#}")) {
      a.kids.push_back(parse_term_ast(c));
      while (c.cur().is_sym(",")) {
        c.bump();
        a.kids.push_back(parse_term_ast(c));
      }
    }
    c.expect_sym("#}");
    return a;
  }
  if (t.is_sym("[")) {
    c.bump();
    Ast a = mk(Ast::K::ListDisp, sp);
    if (!c.cur().is_sym("]")) {
      a.kids.push_back(parse_term_ast(c));
      while (c.cur().is_sym(",")) {
        c.bump();
        a.kids.push_back(parse_term_ast(c));
      }
    }
    c.expect_sym("]");
    return a;
  }
  if (t.k == Tok::K::Num) {
    Ast a = mk(Ast::K::Num, sp);
    a.s = t.s;
    c.bump();
    return a;
  }
  if (t.k == Tok::K::Ident) {
    Ast a = mk(Ast::K::Name, sp);
    a.s = t.s;
    c.bump();
    return a;
  }
  c.fail("expected a term");
}

bool at_atom_start(Cursor& c) {
  const Tok& t = c.cur();
  if (is_infix_word(t)) return false;
  return t.k == Tok::K::Num || t.k == Tok::K::Ident || t.is_sym("(") ||
         t.is_sym("%") || t.is_sym("?") || t.is_sym("{") || t.is_sym("{#") ||
         t.is_sym("[");
}

Ast parse_app(Cursor& c) {
  Ast f = parse_atom(c);
  while (at_atom_start(c)) {
    Ast a = mk(Ast::K::App, f.span);
    a.kids.push_back(std::move(f));
    a.kids.push_back(parse_atom(c));
    f = std::move(a);
  }
  return f;
}

Ast parse_mul(Cursor& c) {
  Ast l = parse_app(c);
  while (c.cur().is_sym("*")) {
    SourceSpan sp = c.cur().span;
    c.bump();
    Ast a = mk(Ast::K::Infix, sp);
    a.s = "*";
    a.kids.push_back(std::move(l));
    a.kids.push_back(parse_app(c));
    l = std::move(a);
  }
  return l;
}

Ast parse_add(Cursor& c) {
  Ast l = parse_mul(c);
  while (c.cur().is_sym("+")) {
    SourceSpan sp = c.cur().span;
    c.bump();
    Ast a = mk(Ast::K::Infix, sp);
    a.s = "+";
    a.kids.push_back(std::move(l));
    a.kids.push_back(parse_mul(c));
    l = std::move(a);
  }
  return l;
}

Ast parse_rel(Cursor& c) {
  Ast l = parse_add(c);
  std::string op;
  if (c.cur().is_sym("=") || c.cur().is_sym("<=") || c.cur().is_sym("<"))
    op = c.cur().s;
  else if (is_infix_word(c.cur()))
    op = c.cur().s;
  if (!op.empty()) {
    SourceSpan sp = c.cur().span;
    c.bump();
    Ast a = mk(Ast::K::Infix, sp);
    a.s = op;
    a.kids.push_back(std::move(l));
    a.kids.push_back(parse_add(c));
    return a;
  }
  return l;
}

Ast parse_not(Cursor& c) {
  if (c.cur().is_sym("~")) {
    SourceSpan sp = c.cur().span;
    c.bump();
    Ast a = mk(Ast::K::Not, sp);
    a.kids.push_back(parse_not(c));
    return a;
  }
  return parse_rel(c);
}

Ast parse_and(Cursor& c) {
  Ast l = parse_not(c);
  while (c.cur().is_sym("&")) {
    SourceSpan sp = c.cur().span;
    c.bump();
    Ast a = mk(Ast::K::Infix, sp);
    a.s = "&";
    a.kids.push_back(std::move(l));
    a.kids.push_back(parse_not(c));
    l = std::move(a);
  }
  return l;
}

Ast parse_or(Cursor& c) {
  Ast l = parse_and(c);
  while (c.cur().is_sym("|")) {
    SourceSpan sp = c.cur().span;
    c.bump();
    Ast a = mk(Ast::K::Infix, sp);
    a.s = "|";
    a.kids.push_back(std::move(l));
    a.kids.push_back(parse_and(c));
    l = std::move(a);
  }
  return l;
}

Ast parse_imp(Cursor& c) {
  Ast l = parse_or(c);
  if (c.cur().is_sym("-->")) {
    SourceSpan sp = c.cur().span;
    c.bump();
    Ast a = mk(Ast::K::Infix, sp);
    a.s = "-->";
    a.kids.push_back(std::move(l));
    a.kids.push_back(parse_imp(c));
    return a;
  }
  return l;
}

Ast parse_term_ast(Cursor& c) {
  if (c.cur().is_sym("%")) return parse_atom(c);
  return parse_imp(c);
}

// ------------------------------------------------------------ elaborator

[[noreturn]] void elab_fail(const SourceSpan& sp, const std::string& msg) {
  throw TypeError(sp.str() + ": " + msg);
}

struct Elab {
  const SymbolScope* scope;
  std::map<std::string, TypeExpr>* schem_types;  // may be null
  std::vector<std::pair<std::string, TypeExpr>> binders;

  std::optional<TypeExpr> lookup_const(const std::string& n) const {
    if (scope) {
      auto it = scope->consts.find(n);
      if (it != scope->consts.end()) return it->second;
    }
    return builtins::type_of(n);
  }

  bool numeric_base(const TypeExpr& t) const {
    return t.valid() && t.kind() == TypeExpr::Kind::Base &&
           (t.name() == "nat" || t.name() == "int" || t.name() == "rat");
  }

  Term want(const SourceSpan& sp, Term t, const TypeExpr* expected) {
    if (expected) {
      TypeExpr got = typecheck(t);
      if (got != *expected)
        elab_fail(sp, "expected type " + expected->str() + ", got " +
                          got.str());
    }
    return t;
  }

  Term go(const Ast& a, const TypeExpr* expected) {
    switch (a.k) {
      case Ast::K::Num: {
        TypeExpr t = ty::nat();
        if (expected && numeric_base(*expected)) t = *expected;
        if (a.s[0] == '-' && t == ty::nat())
          elab_fail(a.span, "negative literal needs an int or rat context");
        return want(a.span, Term::constant(a.s, t), expected);
      }
      case Ast::K::Schem: {
        if (schem_types) {
          auto it = schem_types->find(a.s);
          if (it != schem_types->end())
            return want(a.span, Term::schematic(a.s, it->second), expected);
        }
        if (expected) {
          if (schem_types) schem_types->emplace(a.s, *expected);
          return Term::schematic(a.s, *expected);
        }
        elab_fail(a.span, "cannot infer the type of ?" + a.s);
      }
      case Ast::K::Name: {
        for (auto it = binders.rbegin(); it != binders.rend(); ++it)
          if (it->first == a.s)
            return want(a.span, Term::var(a.s, it->second), expected);
        if (scope) {
          auto it = scope->vars.find(a.s);
          if (it != scope->vars.end())
            return want(a.span, Term::var(a.s, it->second), expected);
        }
        if (a.s == "true") return want(a.span, builtins::truth(), expected);
        if (a.s == "false") return want(a.span, builtins::falsity(), expected);
        if (a.s == "eq" && expected && expected->is_fun())
          return want(a.span, builtins::eq_at(expected->dom()), expected);
        if ((a.s == "forall" || a.s == "exists" || a.s == "all" ||
             a.s == "ex") &&
            expected && expected->is_fun() && expected->dom().is_fun()) {
          Term h = (a.s == "forall" || a.s == "all")
                       ? builtins::all_at(expected->dom().dom())
                       : builtins::ex_at(expected->dom().dom());
          return want(a.span, h, expected);
        }
        if (a.s == "forall" || a.s == "exists")
          elab_fail(a.span, a.s + " needs a lambda argument or a type annotation");
        if (a.s == "all" || a.s == "ex" || a.s == "eq")
          elab_fail(a.span, a.s + " needs a type annotation");
        if (auto alias = builtins::resolve_alias(a.s))
          return want(a.span, *alias, expected);
        if (auto t = lookup_const(a.s))
          return want(a.span, Term::constant(a.s, *t), expected);
        elab_fail(a.span, "unknown name '" + a.s + "'");
      }
      case Ast::K::TypedName: {
        std::string n = a.s;
        if (n == "forall") n = "all";
        if (n == "exists") n = "ex";
        if (auto t = lookup_const(n); t && n != "all" && n != "ex" && n != "eq") {
          if (*t != a.ty)
            elab_fail(a.span, "constant " + n + " has type " + t->str() +
                                  ", not " + a.ty.str());
        }
        return want(a.span, Term::constant(n, a.ty), expected);
      }
      case Ast::K::Not: {
        TypeExpr b = ty::boolean();
        Term arg = go(a.kids[0], &b);
        return want(a.span, Term::app(builtins::neg(), arg), expected);
      }
      case Ast::K::Lam: {
        binders.emplace_back(a.s, a.ty);
        const TypeExpr* body_exp = nullptr;
        TypeExpr body_ty;
        if (expected) {
          if (!expected->is_fun() || expected->dom() != a.ty)
            elab_fail(a.span,
                      "lambda does not fit expected type " + expected->str());
          body_ty = expected->cod();
          body_exp = &body_ty;
        }
        Term body = go(a.kids[0], body_exp);
        binders.pop_back();
        return Term::lam(a.s, a.ty, body);
      }
      case Ast::K::App: {
        const Ast& fa = a.kids[0];
        const Ast& xa = a.kids[1];
        // Polymorphic quantifiers: instantiate from the argument.
        if (fa.k == Ast::K::Name && (fa.s == "forall" || fa.s == "exists")) {
          Term arg = go(xa, nullptr);
          TypeExpr at = typecheck(arg);
          if (!at.is_fun() || !at.cod().is_bool())
            elab_fail(xa.span, fa.s + " needs an argument of type T -> bool");
          Term head = fa.s == "forall" ? builtins::all_at(at.dom())
                                       : builtins::ex_at(at.dom());
          return want(a.span, Term::app(head, arg), expected);
        }
        // Schematic head with unknown type: infer from argument + context.
        if (fa.k == Ast::K::Schem &&
            (!schem_types || !schem_types->count(fa.s))) {
          Term arg = go(xa, nullptr);
          if (!expected)
            elab_fail(fa.span, "cannot infer the type of ?" + fa.s);
          TypeExpr ft = TypeExpr::fun(typecheck(arg), *expected);
          if (schem_types) schem_types->emplace(fa.s, ft);
          return Term::app(Term::schematic(fa.s, ft), arg);
        }
        Term f = go(fa, nullptr);
        TypeExpr tf = typecheck(f);
        if (!tf.is_fun())
          elab_fail(fa.span, "this term is applied but has non-function type " +
                                 tf.str());
        TypeExpr dom = tf.dom();
        Term x = go(xa, &dom);
        return want(a.span, Term::app(f, x), expected);
      }
      case Ast::K::Infix: {
        if (a.s == "&" || a.s == "|" || a.s == "-->") {
          TypeExpr b = ty::boolean();
          Term l = go(a.kids[0], &b), r = go(a.kids[1], &b);
          Term h = a.s == "&" ? builtins::conj()
                              : a.s == "|" ? builtins::disj()
                                           : builtins::implies();
          return want(a.span, Term::app(Term::app(h, l), r), expected);
        }
        // Type-directed resolution: elaborate the non-literal side first.
        bool swap_order =
            a.kids[0].k == Ast::K::Num && a.kids[1].k != Ast::K::Num;
        const Ast& first = swap_order ? a.kids[1] : a.kids[0];
        const Ast& second = swap_order ? a.kids[0] : a.kids[1];
        Term tfirst = go(first, nullptr);
        TypeExpr t0 = typecheck(tfirst);
        if (a.s == "=") {
          Term tsecond = go(second, &t0);
          Term l = swap_order ? tsecond : tfirst;
          Term r = swap_order ? tfirst : tsecond;
          return want(a.span, Term::app(Term::app(builtins::eq_at(t0), l), r),
                      expected);
        }
        std::string cname = resolve_infix(a.s, t0, a.span);
        auto ct = lookup_const(cname);
        Term h = Term::constant(cname, *ct);
        TypeExpr dom2 = ct->cod().dom();
        Term tsecond = go(second, &dom2);
        // All operators in this table are homogeneous, so elaborating the
        // literal side under the other slot's operand type is fine.
        Term l = swap_order ? tsecond : tfirst;
        Term r = swap_order ? tfirst : tsecond;
        return want(a.span, Term::app(Term::app(h, l), r), expected);
      }
      case Ast::K::SetDisp:
      case Ast::K::MsetDisp:
      case Ast::K::ListDisp: {
        TypeExpr n = ty::nat();
        std::vector<Term> elems;
        for (const Ast& e : a.kids) elems.push_back(go(e, &n));
        Term acc, cons2;
        if (a.k == Ast::K::SetDisp) {
          acc = Term::constant("emptyset", *builtins::type_of("emptyset"));
          cons2 = Term::constant("insert", *builtins::type_of("insert"));
        } else if (a.k == Ast::K::MsetDisp) {
          acc = Term::constant("mempty", *builtins::type_of("mempty"));
          cons2 = Term::constant("madd", *builtins::type_of("madd"));
        } else {
          acc = Term::constant("nil", *builtins::type_of("nil"));
          cons2 = Term::constant("cons", *builtins::type_of("cons"));
        }
        for (size_t i = elems.size(); i-- > 0;)
          acc = Term::app(Term::app(cons2, elems[i]), acc);
        return want(a.span, acc, expected);
      }
    }
    elab_fail(a.span, "internal: unhandled syntax node");
  }

  std::string resolve_infix(const std::string& op, const TypeExpr& operand,
                            const SourceSpan& sp) {
    using namespace ty;
    auto is = [&](const TypeExpr& t) { return operand == t; };
    TypeExpr N = nat(), I = integer(), Q = rat();
    TypeExpr M = multiset(N), S = set(N), SS = set(S);
    TypeExpr FB = fn(N, boolean()), FN = fn(N, N);
    if (op == "*") {
      if (is(N)) return "times";
      if (is(I)) return "times_i";
    } else if (op == "+") {
      if (is(N)) return "add";
      if (is(I)) return "add_i";
      if (is(Q)) return "add_q";
      if (is(M)) return "msum";
    } else if (op == "<=") {
      if (is(N)) return "le";
      if (is(I)) return "le_i";
      if (is(Q)) return "le_q";
    } else if (op == "<") {
      if (is(N)) return "lt";
      if (is(I)) return "lt_i";
    } else if (op == "dvd") {
      if (is(N)) return "dvd";
      if (is(I)) return "dvd_i";
    } else if (op == "subseteq") {
      if (is(S)) return "subseteq";
      if (is(SS)) return "subseteq2";
      if (is(FB)) return "fsubseteq_b";
    } else if (op == "msubseteq") {
      if (is(M)) return "msubseteq";
      if (is(FN)) return "fle_n";
    }
    elab_fail(sp, "operator '" + op + "' does not apply to operands of type " +
                      operand.str());
  }
};

Term elaborate(const Ast& a, const SymbolScope& scope,
               std::map<std::string, TypeExpr>* schem_types,
               const TypeExpr* expected) {
  Elab e{&scope, schem_types, {}};
  Term t = e.go(a, expected);
  typecheck(t);
  return t;
}

}  // namespace

TypeExpr parse_type(const std::string& text, const std::string& file) {
  auto toks = lex(text, file);
  Cursor c{&toks};
  TypeExpr t = parse_type_at(c);
  if (c.cur().k != Tok::K::End) c.fail("trailing input after type");
  return t;
}

Term parse_term(const std::string& text, const SymbolScope& scope,
                const std::string& file) {
  auto toks = lex(text, file);
  Cursor c{&toks};
  Ast a = parse_term_ast(c);
  if (c.cur().k != Tok::K::End) c.fail("trailing input after term");
  std::map<std::string, TypeExpr> schem;
  return elaborate(a, scope, &schem, nullptr);
}

Term parse_goal_file(const std::string& text, const std::string& file) {
  Term t = parse_term(text, SymbolScope{}, file);
  TypeExpr tt = typecheck(t);
  if (!tt.is_bool())
    throw TypeError(file + ": goal has type " + tt.str() + ", expected bool");
  if (contains_schematic(t))
    throw TypeError(file + ": goal contains schematic variables");
  if (!free_vars(t).empty())
    throw TypeError(file + ": goal has free variables");
  return t;
}

// ---------------------------------------------------------------- render

namespace {

// Precedence levels: lam 0, --> 1, | 2, & 3, ~ 4, relations 5, + 6, * 7,
// application 8, atom 9.
struct InfixInfo {
  const char* op;
  int lvl, l, r;
};

const std::map<std::string, InfixInfo>& infix_render() {
  static const std::map<std::string, InfixInfo> m = {
      {"imp", {"-->", 1, 2, 1}},     {"or", {"|", 2, 2, 3}},
      {"and", {"&", 3, 3, 4}},       {"eq", {"=", 5, 6, 6}},
      {"le", {"<=", 5, 6, 6}},       {"le_i", {"<=", 5, 6, 6}},
      {"le_q", {"<=", 5, 6, 6}},     {"lt", {"<", 5, 6, 6}},
      {"lt_i", {"<", 5, 6, 6}},      {"dvd", {"dvd", 5, 6, 6}},
      {"dvd_i", {"dvd", 5, 6, 6}},   {"subseteq", {"subseteq", 5, 6, 6}},
      {"subseteq2", {"subseteq", 5, 6, 6}},
      {"fsubseteq_b", {"subseteq", 5, 6, 6}},
      {"msubseteq", {"msubseteq", 5, 6, 6}},
      {"fle_n", {"msubseteq", 5, 6, 6}},
      {"add", {"+", 6, 6, 7}},       {"add_i", {"+", 6, 6, 7}},
      {"add_q", {"+", 6, 6, 7}},     {"msum", {"+", 6, 6, 7}},
      {"times", {"*", 7, 7, 8}},     {"times_i", {"*", 7, 7, 8}},
  };
  return m;
}

std::string wrap(const std::string& s, bool need) {
  return need ? "(" + s + ")" : s;
}

bool display_chain(const Term& t, const char* cons2, const char* empty,
                   std::vector<Term>& elems) {
  Term cur = t;
  while (true) {
    if (cur.is_const(empty)) return true;
    if (cur.kind() != Term::Kind::App || cur.fun().kind() != Term::Kind::App)
      return false;
    const Term& h = cur.fun().fun();
    if (!h.is_const(cons2)) return false;
    elems.push_back(cur.fun().arg());
    cur = cur.arg();
  }
}

std::string render_at(const Term& t, int lvl);

std::string render_const_atom(const Term& t) {
  const std::string& n = t.name();
  if (builtins::is_numeral_name(n)) {
    if (t.leaf_type() == ty::nat() && n[0] != '-') return n;
    return "(" + n + " : " + t.leaf_type().str() + ")";
  }
  if (n == "all" || n == "ex") {
    if (auto alias = builtins::alias_for(t)) return *alias;
    return "(" + std::string(n == "all" ? "forall" : "exists") + " : " +
           t.leaf_type().str() + ")";
  }
  if (n == "eq" || n == "true" || n == "false" || n == "not" || n == "and" ||
      n == "or" || n == "imp")
    return n == "eq" ? "(eq : " + t.leaf_type().str() + ")" : n;
  if (auto bt = builtins::type_of(n); bt && *bt == t.leaf_type()) {
    if (infix_render().count(n))
      return "(" + n + " : " + t.leaf_type().str() + ")";
    return n;
  }
  // Unknown or locally-declared constant: keep it reparsable.
  return "(" + n + " : " + t.leaf_type().str() + ")";
}

std::string render_at(const Term& t, int lvl) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name();
    case Term::Kind::Schematic:
      return "?" + t.name();
    case Term::Kind::Const:
      return render_const_atom(t);
    case Term::Kind::Lam: {
      std::string s = "%" + t.bound_name() + ":" + t.bound_type().str() +
                      ". " + render_at(t.body(), 0);
      return wrap(s, lvl > 0);
    }
    case Term::Kind::App: {
      std::vector<Term> elems;
      if (display_chain(t, "insert", "emptyset", elems)) {
        std::string s = "{";
        for (size_t i = 0; i < elems.size(); ++i)
          s += (i ? "," : "") + render_at(elems[i], 6);
        return s + "}";
      }
      elems.clear();
      if (display_chain(t, "madd", "mempty", elems)) {
        std::string s = "{#";
        for (size_t i = 0; i < elems.size(); ++i)
          s += (i ? "," : "") + render_at(elems[i], 6);
        return s + "#}";
      }
      elems.clear();
      if (display_chain(t, "cons", "nil", elems)) {
        std::string s = "[";
        for (size_t i = 0; i < elems.size(); ++i)
          s += (i ? "," : "") + render_at(elems[i], 6);
        return s + "]";
      }
      // not
      if (t.fun().is_const("not")) {
        std::string s = "~" + render_at(t.arg(), 4);
        return wrap(s, lvl > 4);
      }
      // quantifier over a lambda
      if (t.fun().kind() == Term::Kind::Const &&
          (t.fun().name() == "all" || t.fun().name() == "ex") &&
          t.arg().kind() == Term::Kind::Lam) {
        std::string q = t.fun().name() == "all" ? "forall" : "exists";
        std::string s = q + " " + render_at(t.arg(), 9);
        return wrap(s, lvl > 8);
      }
      // binary infix
      if (t.fun().kind() == Term::Kind::App &&
          t.fun().fun().kind() == Term::Kind::Const) {
        auto it = infix_render().find(t.fun().fun().name());
        if (it != infix_render().end()) {
          const InfixInfo& info = it->second;
          std::string s = render_at(t.fun().arg(), info.l) + " " + info.op +
                          " " + render_at(t.arg(), info.r);
          return wrap(s, lvl > info.lvl);
        }
      }
      std::string s = render_at(t.fun(), 8) + " " + render_at(t.arg(), 9);
      return wrap(s, lvl > 8);
    }
  }
  return "<bad-term>";
}

}  // namespace

std::string render(const Term& t) { return render_at(t, 0); }

std::string render_type(const TypeExpr& t) { return t.str(); }

// ------------------------------------------------- transformation files

namespace {

struct RelAst {
  enum class K { Name, Eq, Imp, Revimp, Fun, Swap };
  K k;
  std::string name;
  std::vector<RelAst> kids;
  SourceSpan span;
};

RelAst parse_rel_ast(Cursor& c);

RelAst parse_rel_atom(Cursor& c) {
  SourceSpan sp = c.cur().span;
  if (c.cur().is_sym("(")) {
    c.bump();
    RelAst r = parse_rel_ast(c);
    c.expect_sym(")");
    return r;
  }
  if (c.cur().is_ident("swap")) {
    c.bump();
    RelAst inner = parse_rel_atom(c);
    RelAst r{RelAst::K::Swap, "", {std::move(inner)}, sp};
    return r;
  }
  if (c.cur().k != Tok::K::Ident) c.fail("expected a relation");
  std::string n = c.cur().s;
  c.bump();
  if (n == "eq") return RelAst{RelAst::K::Eq, n, {}, sp};
  if (n == "imp") return RelAst{RelAst::K::Imp, n, {}, sp};
  if (n == "revimp") return RelAst{RelAst::K::Revimp, n, {}, sp};
  return RelAst{RelAst::K::Name, n, {}, sp};
}

RelAst parse_rel_ast(Cursor& c) {
  RelAst l = parse_rel_atom(c);
  if (c.cur().is_sym("===>")) {
    SourceSpan sp = c.cur().span;
    c.bump();
    RelAst r = parse_rel_ast(c);
    return RelAst{RelAst::K::Fun, "", {std::move(l), std::move(r)}, sp};
  }
  return l;
}

// Partially known term type on one side of a relation skeleton; the eq
// leaves leave holes that the terms themselves must fill.
struct TyPat {
  enum class K { Hole, Exact, Fun } k = K::Hole;
  TypeExpr exact;
  std::shared_ptr<TyPat> dom, cod;

  static TyPat hole() { return TyPat{}; }
  static TyPat of(TypeExpr t) {
    TyPat p;
    p.k = K::Exact;
    p.exact = std::move(t);
    return p;
  }
  static TyPat fun(TyPat d, TyPat c) {
    if (d.k == K::Exact && c.k == K::Exact)
      return of(TypeExpr::fun(d.exact, c.exact));
    TyPat p;
    p.k = K::Fun;
    p.dom = std::make_shared<TyPat>(std::move(d));
    p.cod = std::make_shared<TyPat>(std::move(c));
    return p;
  }
  bool matches(const TypeExpr& t) const {
    switch (k) {
      case K::Hole:
        return true;
      case K::Exact:
        return exact == t;
      case K::Fun:
        return t.is_fun() && dom->matches(t.dom()) && cod->matches(t.cod());
    }
    return false;
  }
  std::optional<TypeExpr> fun_dom() const {
    if (k == K::Exact && exact.is_fun()) return exact.dom();
    if (k == K::Fun && dom->k == K::Exact) return dom->exact;
    return std::nullopt;
  }
};

TyPat rel_side_pat(const RelAst& r, bool left,
                   const std::map<std::string, RelExpr>& rels) {
  switch (r.k) {
    case RelAst::K::Name: {
      auto it = rels.find(r.name);
      if (it == rels.end()) return TyPat::hole();
      return TyPat::of(left ? it->second.left_type()
                            : it->second.right_type());
    }
    case RelAst::K::Eq:
      return TyPat::hole();
    case RelAst::K::Imp:
    case RelAst::K::Revimp:
      return TyPat::of(ty::boolean());
    case RelAst::K::Fun:
      return TyPat::fun(rel_side_pat(r.kids[0], left, rels),
                        rel_side_pat(r.kids[1], left, rels));
    case RelAst::K::Swap:
      return rel_side_pat(r.kids[0], !left, rels);
  }
  return TyPat::hole();
}

Term elab_rule_side(const Ast& a, const TyPat& pat, const SymbolScope& scope,
                    std::map<std::string, TypeExpr>* schem) {
  // Bare polymorphic names take their instance from the skeleton.
  if (a.k == Ast::K::Name &&
      (a.s == "eq" || a.s == "forall" || a.s == "exists")) {
    if (a.s == "eq") {
      auto d = pat.fun_dom();
      if (!d) elab_fail(a.span, "cannot infer the eq instance here");
      return builtins::eq_at(*d);
    }
    std::optional<TypeExpr> d;
    if (pat.k == TyPat::K::Exact)
      d = pat.fun_dom() && pat.fun_dom()->is_fun()
              ? std::optional<TypeExpr>(pat.fun_dom()->dom())
              : std::nullopt;
    else if (pat.k == TyPat::K::Fun)
      d = pat.dom->fun_dom();
    if (!d) elab_fail(a.span, "cannot infer the quantifier instance here");
    return a.s == "forall" ? builtins::all_at(*d) : builtins::ex_at(*d);
  }
  Term t;
  if (pat.k == TyPat::K::Exact) {
    TypeExpr e = pat.exact;
    Elab el{&scope, schem, {}};
    t = el.go(a, &e);
  } else {
    Elab el{&scope, schem, {}};
    t = el.go(a, nullptr);
  }
  if (!pat.matches(typecheck(t)))
    elab_fail(a.span, "term type " + typecheck(t).str() +
                          " does not fit the relation skeleton");
  return t;
}

RelExpr resolve_rel(const RelAst& r, const TypeExpr& x, const TypeExpr& y,
                    const std::map<std::string, RelExpr>& rels) {
  switch (r.k) {
    case RelAst::K::Name: {
      auto it = rels.find(r.name);
      if (it == rels.end())
        throw SyntaxError(r.span, "unknown relation '" + r.name + "'");
      if (it->second.left_type() != x || it->second.right_type() != y)
        elab_fail(r.span, "relation " + r.name + " relates (" +
                              it->second.left_type().str() + ", " +
                              it->second.right_type().str() +
                              "), but the statement needs (" + x.str() + ", " +
                              y.str() + ")");
      return it->second;
    }
    case RelAst::K::Eq:
      if (x != y)
        elab_fail(r.span, "eq needs both sides at the same type; got " +
                              x.str() + " and " + y.str());
      return RelExpr::eq(x);
    case RelAst::K::Imp:
    case RelAst::K::Revimp:
      if (!x.is_bool() || !y.is_bool())
        elab_fail(r.span, "imp/revimp relate booleans");
      return r.k == RelAst::K::Imp ? RelExpr::imp() : RelExpr::revimp();
    case RelAst::K::Fun: {
      if (!x.is_fun() || !y.is_fun())
        elab_fail(r.span,
                  "the function relator needs function types on both sides; "
                  "got " + x.str() + " and " + y.str());
      RelExpr l = resolve_rel(r.kids[0], x.dom(), y.dom(), rels);
      RelExpr rr = resolve_rel(r.kids[1], x.cod(), y.cod(), rels);
      return RelExpr::funrel(l, rr);
    }
    case RelAst::K::Swap:
      return swap_normalize(
          RelExpr::swap(resolve_rel(r.kids[0], y, x, rels)));
  }
  throw SyntaxError(r.span, "invalid relation expression");
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Transformation parse_transformation_file(
    const std::string& text, const std::string& file,
    std::map<std::string, std::string>* universe_overrides) {
  Transformation t;
  SymbolScope scope;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::set<std::string> rule_names;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    SourceSpan sp{file, lineno, 1};
    if (line.front() == '[') {
      if (line.back() != ']') throw SyntaxError(sp, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    if (section == "meta") {
      size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw SyntaxError(sp, "expected key = value");
      std::string key = trim(line.substr(0, eq));
      std::string val = trim(line.substr(eq + 1));
      if (key == "name") {
        t.name = val;
      } else if (key == "from_types" || key == "to_types") {
        std::vector<TypeExpr> tys;
        std::istringstream parts(val);
        std::string piece;
        while (std::getline(parts, piece, ',')) {
          piece = trim(piece);
          if (!piece.empty()) tys.push_back(parse_type(piece, file));
        }
        (key == "from_types" ? t.from_types : t.to_types) = std::move(tys);
      } else if (key == "may_strengthen") {
        if (val != "true" && val != "false")
          throw SyntaxError(sp, "may_strengthen must be true or false");
        t.may_strengthen = val == "true";
      } else {
        throw SyntaxError(sp, "unknown meta key '" + key + "'");
      }
      continue;
    }
    if (section == "constants") {
      std::istringstream ls(line);
      std::string side, name;
      ls >> side >> name;
      std::string rest;
      std::getline(ls, rest);
      rest = trim(rest);
      if (rest.empty() || rest[0] != ':')
        throw SyntaxError(sp, "expected `side name : type`");
      TypeExpr cty = parse_type(trim(rest.substr(1)), file);
      if (auto global = builtins::type_of(name); global && *global != cty)
        throw TypeError(sp.str() + ": constant " + name +
                        " is known with type " + global->str() + ", not " +
                        cty.str());
      if (side == "from") {
        t.from_consts.insert(name);
      } else if (side == "to") {
        t.to_consts.insert(name);
      } else if (side == "rel") {
        if (!cty.is_fun() || !cty.cod().is_fun() ||
            !cty.cod().cod().is_bool())
          throw TypeError(sp.str() + ": relation " + name +
                          " must have type X -> Y -> bool");
        RelExpr re = RelExpr::base(name, cty.dom(), cty.cod().dom());
        t.base_rels.emplace(name, re);
        scope.rels.emplace(name, re);
      } else {
        throw SyntaxError(sp, "constant side must be from, to, or rel");
      }
      scope.consts.emplace(name, cty);
      continue;
    }
    if (section == "rules") {
      auto toks = lex(line, file);
      for (auto& tk : toks) tk.span.line = lineno;
      Cursor c{&toks};
      if (c.cur().k != Tok::K::Ident) c.fail("expected a rule name");
      std::string rname = c.cur().s;
      c.bump();
      c.expect_sym("=");
      if (!rule_names.insert(rname).second)
        throw DuplicateRuleName(sp.str() + ": duplicate rule name '" + rname +
                                "'");
      RelAst rast = parse_rel_ast(c);
      Ast la = parse_atom(c);
      Ast ra = parse_atom(c);
      if (c.cur().k != Tok::K::End) c.fail("trailing input after rule");
      TyPat patL = rel_side_pat(rast, true, scope.rels);
      TyPat patR = rel_side_pat(rast, false, scope.rels);
      std::map<std::string, TypeExpr> schem;
      Term lt = elab_rule_side(la, patL, scope, &schem);
      Term rt = elab_rule_side(ra, patR, scope, &schem);
      if (contains_schematic(lt) || contains_schematic(rt))
        throw TypeError(sp.str() + ": rules must not contain schematics");
      TransferRule rule;
      rule.name = rname;
      rule.left = lt;
      rule.right = rt;
      rule.rel = resolve_rel(rast, typecheck(lt), typecheck(rt), scope.rels);
      t.rules.push_back(std::move(rule));
      continue;
    }
    if (section == "normalize") {
      auto toks = lex(line, file);
      for (auto& tk : toks) tk.span.line = lineno;
      Cursor c{&toks};
      Ast la = parse_term_ast(c);
      c.expect_sym("~>");
      Ast ra = parse_term_ast(c);
      if (c.cur().k != Tok::K::End) c.fail("trailing input after rewrite");
      std::map<std::string, TypeExpr> schem;
      Term lt = elaborate(la, scope, &schem, nullptr);
      Term rt = elaborate(ra, scope, &schem, nullptr);
      if (typecheck(lt) != typecheck(rt))
        throw TypeError(sp.str() + ": rewrite sides have different types");
      RewriteRule rw;
      rw.lhs = lt;
      rw.rhs = rt;
      bool from = false, to = false;
      for (const std::string& cn : constants_of(rt)) {
        if (t.from_consts.count(cn)) from = true;
        if (t.to_consts.count(cn)) to = true;
      }
      if (from && to)
        throw TypeError(sp.str() +
                        ": rewrite target mixes constants of both sides");
      rw.side = from ? RewriteSide::From
                     : to ? RewriteSide::To : RewriteSide::Neutral;
      t.rewrites.push_back(std::move(rw));
      continue;
    }
    if (section == "universe") {
      size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw SyntaxError(sp, "expected key = value");
      if (universe_overrides)
        (*universe_overrides)[trim(line.substr(0, eq))] =
            trim(line.substr(eq + 1));
      continue;
    }
    throw SyntaxError(sp, section.empty()
                              ? "content before the first section"
                              : "unknown section '" + section + "'");
  }

  if (t.name.empty())
    throw SyntaxError(SourceSpan{file, 1, 1}, "[meta] must set name");
  for (const TransferRule& r : t.rules) validate_rule(r, t);
  return t;
}

namespace {

std::string render_rule_statement(const TransferRule& r) {
  RelExpr nr = swap_normalize(r.rel);
  std::string rs = nr.str();
  if (nr.kind() == RelExpr::Kind::FunRel || nr.kind() == RelExpr::Kind::Swap)
    rs = "(" + rs + ")";
  return rs + " " + render_at(r.left, 9) + " " + render_at(r.right, 9);
}

}  // namespace

std::string render_transformation_file(const Transformation& t) {
  std::ostringstream out;
  out << "[meta]\n";
  out << "name = " << t.name << "\n";
  out << "from_types = ";
  for (size_t i = 0; i < t.from_types.size(); ++i)
    out << (i ? ", " : "") << t.from_types[i].str();
  out << "\nto_types = ";
  for (size_t i = 0; i < t.to_types.size(); ++i)
    out << (i ? ", " : "") << t.to_types[i].str();
  out << "\nmay_strengthen = " << (t.may_strengthen ? "true" : "false")
      << "\n\n[constants]\n";
  auto emit_side = [&](const std::set<std::string>& names, const char* side) {
    for (const std::string& n : names) {
      auto ty2 = builtins::type_of(n);
      if (ty2) out << side << " " << n << " : " << ty2->str() << "\n";
    }
  };
  emit_side(t.from_consts, "from");
  emit_side(t.to_consts, "to");
  for (const auto& [n, r] : t.base_rels)
    out << "rel " << n << " : " << r.left_type().str() << " -> "
        << r.right_type().str() << " -> bool\n";
  out << "\n[rules]\n";
  for (const TransferRule& r : t.rules) {
    if (r.generated) continue;
    out << r.name << " = " << render_rule_statement(r) << "\n";
  }
  out << "\n[normalize]\n";
  for (const RewriteRule& rw : t.rewrites)
    out << render(rw.lhs) << " ~> " << render(rw.rhs) << "\n";
  return out.str();
}

}  // namespace xform
