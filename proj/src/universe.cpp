#include "xform/universe.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace xform {

Universe Universe::reduced() const {
  Universe r = *this;
  r.nat_bound = 6;
  r.int_min = -2;
  r.int_max = 2;
  r.rat_num_bound = 2;
  r.rat_den_bound = 2;
  r.prime_base = {2, 3};
  r.mult_bound = 1;
  r.mset_support = {1, 2, 3};
  r.set_carrier = {0, 1, 2};
  r.list_len_bound = 2;
  r.list_elems = {0, 1};
  r.fun_dom_bound = 1;
  return r;
}

std::string Universe::describe() const {
  std::ostringstream s;
  s << "nat<=" << nat_bound << ", int in [" << int_min << "," << int_max
    << "], primes {";
  for (size_t i = 0; i < prime_base.size(); ++i)
    s << (i ? "," : "") << prime_base[i];
  s << "}, mult<=" << mult_bound << ", carrier {";
  for (size_t i = 0; i < set_carrier.size(); ++i)
    s << (i ? "," : "") << set_carrier[i];
  s << "}";
  return s.str();
}

bool Universe::apply_override(const std::string& key,
                              const std::string& value) {
  auto as_ull = [&] { return std::stoull(value); };
  auto as_ll = [&] { return std::stoll(value); };
  auto as_list = [&] {
    std::vector<unsigned> out;
    std::istringstream in(value);
    std::string piece;
    while (std::getline(in, piece, ','))
      if (!piece.empty()) out.push_back(static_cast<unsigned>(std::stoul(piece)));
    return out;
  };
  try {
    if (key == "nat_bound") nat_bound = static_cast<unsigned>(as_ull());
    else if (key == "int_min") int_min = as_ll();
    else if (key == "int_max") int_max = as_ll();
    else if (key == "rat_num_bound") rat_num_bound = static_cast<unsigned>(as_ull());
    else if (key == "rat_den_bound") rat_den_bound = static_cast<unsigned>(as_ull());
    else if (key == "mult_bound") mult_bound = static_cast<unsigned>(as_ull());
    else if (key == "list_len_bound") list_len_bound = static_cast<unsigned>(as_ull());
    else if (key == "fun_dom_bound") fun_dom_bound = static_cast<unsigned>(as_ull());
    else if (key == "prime_base") prime_base = as_list();
    else if (key == "mset_support") mset_support = as_list();
    else if (key == "set_carrier") set_carrier = as_list();
    else if (key == "list_elems") list_elems = as_list();
    else if (key == "autm_num") autm_num = as_ll();
    else if (key == "autm_den") autm_den = as_ll();
    else return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

// ----------------------------------------------------------------- Value

Value Value::nat(std::uint64_t v) {
  Value x;
  x.kind_ = Kind::Nat;
  x.num_ = v;
  return x;
}
Value Value::integer(long long v) {
  Value x;
  x.kind_ = Kind::Int;
  x.inum_ = v;
  return x;
}
Value Value::rational(long long num, long long den) {
  if (den == 0) throw OutOfUniverse{"rational with zero denominator"};
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Value x;
  x.kind_ = Kind::Rat;
  x.inum_ = num;
  x.den_ = den == 0 ? 1 : den;
  return x;
}
Value Value::boolean(bool v) {
  Value x;
  x.kind_ = Kind::Bool;
  x.num_ = v ? 1 : 0;
  return x;
}
Value Value::bit(int v) {
  Value x;
  x.kind_ = Kind::Bit;
  x.num_ = v ? 1 : 0;
  return x;
}
Value Value::set(std::vector<Value> sorted) {
  Value x;
  x.kind_ = Kind::Set;
  x.elems_ = std::make_shared<const std::vector<Value>>(std::move(sorted));
  return x;
}
Value Value::mset(std::vector<std::pair<Value, unsigned>> counts) {
  // Drop zero counts, keep sorted by element.
  std::vector<std::pair<Value, unsigned>> kept;
  for (auto& p : counts)
    if (p.second > 0) kept.push_back(p);
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Value x;
  x.kind_ = Kind::Mset;
  x.counts_ = std::make_shared<const std::vector<std::pair<Value, unsigned>>>(
      std::move(kept));
  return x;
}
Value Value::list(std::vector<Value> elems) {
  Value x;
  x.kind_ = Kind::List;
  x.elems_ = std::make_shared<const std::vector<Value>>(std::move(elems));
  return x;
}
Value Value::fn(std::shared_ptr<FnVal> f) {
  Value x;
  x.kind_ = Kind::Fn;
  x.fn_ = std::move(f);
  return x;
}

int Value::compare(const Value& rhs) const {
  if (kind_ != rhs.kind_)
    return kind_ < rhs.kind_ ? -1 : 1;
  switch (kind_) {
    case Kind::Nat:
    case Kind::Bool:
    case Kind::Bit:
      return num_ < rhs.num_ ? -1 : num_ > rhs.num_ ? 1 : 0;
    case Kind::Int:
      return inum_ < rhs.inum_ ? -1 : inum_ > rhs.inum_ ? 1 : 0;
    case Kind::Rat: {
      // a/b vs c/d  <=>  a*d vs c*b  (positive denominators)
      long long l = inum_ * rhs.den_, r = rhs.inum_ * den_;
      return l < r ? -1 : l > r ? 1 : 0;
    }
    case Kind::Set:
    case Kind::List: {
      const auto& a = *elems_;
      const auto& b = *rhs.elems_;
      size_t n = std::min(a.size(), b.size());
      for (size_t i = 0; i < n; ++i)
        if (int c = a[i].compare(b[i])) return c;
      return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
    }
    case Kind::Mset: {
      const auto& a = *counts_;
      const auto& b = *rhs.counts_;
      size_t n = std::min(a.size(), b.size());
      for (size_t i = 0; i < n; ++i) {
        if (int c = a[i].first.compare(b[i].first)) return c;
        if (a[i].second != b[i].second)
          return a[i].second < b[i].second ? -1 : 1;
      }
      return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
    }
    case Kind::Fn:
      throw OutOfUniverse{"function values have no intrinsic order"};
  }
  return 0;
}

std::string Value::str() const {
  switch (kind_) {
    case Kind::Nat:
      return std::to_string(num_);
    case Kind::Int:
      return std::to_string(inum_);
    case Kind::Rat:
      return den_ == 1 ? std::to_string(inum_)
                       : std::to_string(inum_) + "/" + std::to_string(den_);
    case Kind::Bool:
      return num_ ? "true" : "false";
    case Kind::Bit:
      return num_ ? "1" : "0";
    case Kind::Set: {
      std::string s = "{";
      for (size_t i = 0; i < elems_->size(); ++i)
        s += (i ? "," : "") + (*elems_)[i].str();
      return s + "}";
    }
    case Kind::List: {
      std::string s = "[";
      for (size_t i = 0; i < elems_->size(); ++i)
        s += (i ? "," : "") + (*elems_)[i].str();
      return s + "]";
    }
    case Kind::Mset: {
      std::string s = "{#";
      bool first = true;
      for (const auto& [v, c] : *counts_)
        for (unsigned i = 0; i < c; ++i) {
          if (!first) s += ",";
          s += v.str();
          first = false;
        }
      return s + "#}";
    }
    case Kind::Fn: {
      if (fn_->repr == FnVal::Repr::Table) {
        std::string s = "(";
        for (size_t i = 0; i < fn_->dom.size(); ++i)
          s += (i ? "," : "") + fn_->dom[i].str() + "->" + fn_->out[i].str();
        return s + ")";
      }
      return "<fn>";
    }
  }
  return "?";
}

// ------------------------------------------------------------- EvalCtx

namespace {

bool is_type(const TypeExpr& t, const char* base) {
  return t.kind() == TypeExpr::Kind::Base && t.name() == base;
}

bool is_con(const TypeExpr& t, const char* con) {
  return t.kind() == TypeExpr::Kind::Con && t.name() == con;
}

}  // namespace

std::size_t EvalCtx::domain_size(const TypeExpr& t) {
  // Sizes are computed without materializing; enumeration checks them.
  if (is_type(t, "bool") || is_type(t, "bit")) return 2;
  if (is_type(t, "nat")) return u_.nat_bound + 1;
  if (is_type(t, "int"))
    return static_cast<std::size_t>(u_.int_max - u_.int_min + 1);
  if (is_type(t, "rat")) {
    std::size_t n = 0;
    for (unsigned d = 1; d <= u_.rat_den_bound; ++d)
      for (long long p = -static_cast<long long>(u_.rat_num_bound);
           p <= static_cast<long long>(u_.rat_num_bound); ++p)
        if (std::gcd(p < 0 ? -p : p, static_cast<long long>(d)) == 1 ||
            (p == 0 && d == 1))
          ++n;
    return n;
  }
  auto checked_pow = [&](std::size_t b, std::size_t e) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
      if (r > u_.domain_limit) throw OutOfUniverse{"domain too large: " + t.str()};
      r *= b;
    }
    return r;
  };
  if (is_con(t, "set")) {
    if (is_type(t.args()[0], "nat"))
      return checked_pow(2, u_.set_carrier.size());
    return checked_pow(2, domain_size(t.args()[0]));
  }
  if (is_con(t, "multiset"))
    return checked_pow(u_.mult_bound + 1, u_.mset_support.size());
  if (is_con(t, "list")) {
    std::size_t total = 0, layer = 1;
    for (unsigned len = 0; len <= u_.list_len_bound; ++len) {
      total += layer;
      layer *= u_.list_elems.size();
      if (total > u_.domain_limit) throw OutOfUniverse{"domain too large: " + t.str()};
    }
    return total;
  }
  if (t.is_fun()) {
    std::size_t d = t.dom().is_fun() || is_con(t.dom(), "set") ||
                            is_con(t.dom(), "multiset") || is_con(t.dom(), "list")
                        ? domain_size(t.dom())
                        : (is_type(t.dom(), "nat") ? u_.fun_dom_bound + 1
                                                   : domain_size(t.dom()));
    std::size_t c = is_type(t.cod(), "nat") ? u_.mult_bound + 1
                                            : domain_size(t.cod());
    return checked_pow(c, d);
  }
  throw OutOfUniverse{"no enumeration for type " + t.str()};
}

const std::vector<Value>& EvalCtx::enumerate(const TypeExpr& t) {
  auto it = cache_.find(t);
  if (it != cache_.end()) return it->second;
  std::size_t expect = domain_size(t);
  if (expect > u_.domain_limit)
    throw OutOfUniverse{"domain too large: " + t.str()};

  std::vector<Value> out;
  out.reserve(expect);
  if (is_type(t, "bool")) {
    out = {Value::boolean(false), Value::boolean(true)};
  } else if (is_type(t, "bit")) {
    out = {Value::bit(0), Value::bit(1)};
  } else if (is_type(t, "nat")) {
    for (std::uint64_t v = 0; v <= u_.nat_bound; ++v) out.push_back(Value::nat(v));
  } else if (is_type(t, "int")) {
    for (long long v = u_.int_min; v <= u_.int_max; ++v)
      out.push_back(Value::integer(v));
  } else if (is_type(t, "rat")) {
    std::vector<Value> vals;
    for (unsigned d = 1; d <= u_.rat_den_bound; ++d)
      for (long long p = -static_cast<long long>(u_.rat_num_bound);
           p <= static_cast<long long>(u_.rat_num_bound); ++p)
        if (std::gcd(p < 0 ? -p : p, static_cast<long long>(d)) == 1 ||
            (p == 0 && d == 1))
          vals.push_back(Value::rational(p, d));
    std::sort(vals.begin(), vals.end());
    out = std::move(vals);
  } else if (is_con(t, "set")) {
    std::vector<Value> carrier;
    if (is_type(t.args()[0], "nat")) {
      for (unsigned v : u_.set_carrier) carrier.push_back(Value::nat(v));
    } else {
      carrier = enumerate(t.args()[0]);
    }
    size_t n = carrier.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
      std::vector<Value> elems;
      for (size_t i = 0; i < n; ++i)
        if (mask & (std::size_t(1) << i)) elems.push_back(carrier[i]);
      out.push_back(Value::set(std::move(elems)));
    }
  } else if (is_con(t, "multiset")) {
    if (!is_type(t.args()[0], "nat"))
      throw OutOfUniverse{"no enumeration for type " + t.str()};
    size_t n = u_.mset_support.size();
    std::vector<unsigned> odo(n, 0);
    while (true) {
      std::vector<std::pair<Value, unsigned>> counts;
      for (size_t i = 0; i < n; ++i)
        if (odo[i]) counts.emplace_back(Value::nat(u_.mset_support[i]), odo[i]);
      out.push_back(Value::mset(std::move(counts)));
      size_t i = 0;
      while (i < n && odo[i] == u_.mult_bound) odo[i++] = 0;
      if (i == n) break;
      ++odo[i];
    }
  } else if (is_con(t, "list")) {
    if (!is_type(t.args()[0], "nat"))
      throw OutOfUniverse{"no enumeration for type " + t.str()};
    std::vector<std::vector<Value>> layer = {{}};
    out.push_back(Value::list({}));
    for (unsigned len = 1; len <= u_.list_len_bound; ++len) {
      std::vector<std::vector<Value>> next;
      for (const auto& xs : layer)
        for (unsigned e : u_.list_elems) {
          auto ys = xs;
          ys.push_back(Value::nat(e));
          out.push_back(Value::list(ys));
          next.push_back(std::move(ys));
        }
      layer = std::move(next);
    }
  } else if (t.is_fun()) {
    std::vector<Value> dom;
    if (is_type(t.dom(), "nat")) {
      for (unsigned v = 0; v <= u_.fun_dom_bound; ++v)
        dom.push_back(Value::nat(v));
    } else {
      dom = enumerate(t.dom());
    }
    std::vector<Value> cod;
    if (is_type(t.cod(), "nat")) {
      for (unsigned v = 0; v <= u_.mult_bound; ++v) cod.push_back(Value::nat(v));
    } else {
      cod = enumerate(t.cod());
    }
    std::vector<size_t> odo(dom.size(), 0);
    while (true) {
      auto f = std::make_shared<FnVal>();
      f->repr = FnVal::Repr::Table;
      f->type = t;
      f->dom = dom;
      for (size_t i = 0; i < dom.size(); ++i) f->out.push_back(cod[odo[i]]);
      out.push_back(Value::fn(std::move(f)));
      size_t i = 0;
      while (i < odo.size() && odo[i] + 1 == cod.size()) odo[i++] = 0;
      if (i == odo.size()) break;
      ++odo[i];
    }
  } else {
    throw OutOfUniverse{"no enumeration for type " + t.str()};
  }
  auto [pos, _] = cache_.emplace(t, std::move(out));
  return pos->second;
}

}  // namespace xform
