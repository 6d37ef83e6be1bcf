// Finite bounds per base type, concrete semantic values, and exhaustive
// enumeration of every type within the bounds. Function types enumerate
// as total tables over a small argument domain. OutOfUniverse is a third
// status: an instance that cannot be evaluated inside the bounds is
// skipped and counted, never treated as false.

#ifndef XFORM_UNIVERSE_HPP_
#define XFORM_UNIVERSE_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "xform/term.hpp"

namespace xform {

struct OutOfUniverse {
  std::string note;
};

struct Universe {
  unsigned nat_bound = 30;
  long long int_min = -10, int_max = 10;
  unsigned rat_num_bound = 6, rat_den_bound = 3;
  std::vector<unsigned> prime_base = {2, 3, 5};
  unsigned mult_bound = 4;
  std::vector<unsigned> mset_support = {1, 2, 3, 5};
  std::vector<unsigned> set_carrier = {0, 1, 2, 3, 4, 5};
  unsigned list_len_bound = 3;
  std::vector<unsigned> list_elems = {0, 1, 2, 3};
  unsigned fun_dom_bound = 3;  // function tables take arguments in [0..b]
  std::size_t domain_limit = 300000;   // max values enumerated per type
  std::size_t budget_limit = 6000000;  // max assignments per rule check
  long long autm_num = 2, autm_den = 1;  // rational automorphism factor

  // Small bounds for checks that must enumerate function tables or
  // set-of-set domains.
  Universe reduced() const;

  std::string describe() const;
  bool apply_override(const std::string& key, const std::string& value);
};

class Value;
using Env = std::vector<std::pair<std::string, Value>>;

struct FnVal {
  enum class Repr { Table, LamClosure, ConstPartial };
  Repr repr;
  TypeExpr type;  // A -> B
  // Table
  std::vector<Value> dom, out;
  // LamClosure
  Term lam;
  std::shared_ptr<Env> env;
  // ConstPartial
  std::string cname;
  TypeExpr ctype;
  std::vector<Value> cargs;
};

class Value {
public:
  enum class Kind { Nat, Int, Rat, Bool, Bit, Set, Mset, List, Fn };

  Value() = default;

  static Value nat(std::uint64_t v);
  static Value integer(long long v);
  static Value rational(long long num, long long den);
  static Value boolean(bool v);
  static Value bit(int v);
  static Value set(std::vector<Value> sorted);          // sorted, unique
  static Value mset(std::vector<std::pair<Value, unsigned>> counts);
  static Value list(std::vector<Value> elems);
  static Value fn(std::shared_ptr<FnVal> f);

  Kind kind() const { return kind_; }
  std::uint64_t as_nat() const { return num_; }
  long long as_int() const { return inum_; }
  long long rat_num() const { return inum_; }
  long long rat_den() const { return den_; }
  bool as_bool() const { return num_ != 0; }
  int as_bit() const { return static_cast<int>(num_); }
  const std::vector<Value>& elems() const { return *elems_; }  // Set/List
  const std::vector<std::pair<Value, unsigned>>& counts() const {
    return *counts_;
  }
  const std::shared_ptr<FnVal>& fnval() const { return fn_; }

  // Total order on first-order values; throws on function values.
  int compare(const Value& rhs) const;
  bool operator==(const Value& rhs) const { return compare(rhs) == 0; }
  bool operator<(const Value& rhs) const { return compare(rhs) < 0; }

  std::string str() const;

private:
  Kind kind_ = Kind::Nat;
  std::uint64_t num_ = 0;           // Nat/Bool/Bit payload
  long long inum_ = 0, den_ = 1;    // Int and Rat payload
  std::shared_ptr<const std::vector<Value>> elems_;
  std::shared_ptr<const std::vector<std::pair<Value, unsigned>>> counts_;
  std::shared_ptr<FnVal> fn_;
};

// Enumeration context with a per-instance cache; not shared across
// threads (parallel loops construct their own).
class EvalCtx {
public:
  explicit EvalCtx(const Universe& u) : u_(u) {}
  const Universe& universe() const { return u_; }

  const std::vector<Value>& enumerate(const TypeExpr& t);
  std::size_t domain_size(const TypeExpr& t);  // throws OutOfUniverse if huge

private:
  struct TypeLess {
    bool operator()(const TypeExpr& a, const TypeExpr& b) const {
      return a.compare(b) < 0;
    }
  };
  const Universe& u_;
  std::map<TypeExpr, std::vector<Value>, TypeLess> cache_;
};

}  // namespace xform

#endif  // XFORM_UNIVERSE_HPP_
