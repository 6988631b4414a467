#ifndef IMCAUG_FORMULA_FORMULA_HPP
#define IMCAUG_FORMULA_FORMULA_HPP

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace imcaug::fml {

// Immutable, hash-consed formula DAG mixing bitvector terms and boolean
// formulas. Nodes live in a process-lifetime arena; pointer equality is
// structural equality. Smart constructors do constant folding and the
// cheap absorption rules, so downstream code never sees e.g. And(x, true).
//
// Naming conventions for leaves:
//   "x"    current-state variable
//   "x'"   next-state variable
//   "?3"   nondeterministic input, occurrence index 3
// BitTest("x", j) is the j-th bit (LSB = 0) of variable x; it is both the
// output alphabet of bit-blasting and the vocabulary interpolants are
// lifted into.

enum class Kind : uint8_t {
  // bitvector terms (width > 0)
  BvConst,
  BvVar,
  BvAdd,
  BvSub,
  BvMul,
  BvUDiv,
  BvURem,
  BvIte,  // child0 boolean condition, child1/child2 terms
  // boolean formulas (width == 0)
  BoolConst,
  BitTest,  // name + bit index in `value`
  Cmp,      // two bitvector children
  Not,
  And,
  Or,
  Xor,
};

enum class CmpOp : uint8_t { Eq, Ne, Ult, Ule, Ugt, Uge };

struct Node;
using Formula = const Node*;

struct Node {
  Kind kind;
  uint8_t width;  // 0 for boolean nodes
  CmpOp cmp;      // Cmp only
  uint32_t id;    // creation-order id, used for stable ordering
  uint64_t value; // BvConst value, BoolConst 0/1, BitTest bit index
  std::string name;  // BvVar / BitTest
  Formula child[3];

  int arity() const {
    switch (kind) {
      case Kind::BvConst:
      case Kind::BvVar:
      case Kind::BoolConst:
      case Kind::BitTest:
        return 0;
      case Kind::Not:
        return 1;
      case Kind::BvIte:
        return 3;
      default:
        return 2;
    }
  }
  bool is_bool() const { return width == 0; }
};

uint64_t width_mask(unsigned width);

// Leaves
Formula mk_bv_const(uint64_t value, unsigned width);
Formula mk_bv_var(const std::string& name, unsigned width);
Formula mk_bool(bool value);
Formula mk_bit(const std::string& name, unsigned bit);

// Bitvector operators (operands must share a width)
Formula mk_add(Formula a, Formula b);
Formula mk_sub(Formula a, Formula b);
Formula mk_mul(Formula a, Formula b);
Formula mk_udiv(Formula a, Formula b);  // x/0 = 2^W-1
Formula mk_urem(Formula a, Formula b);  // x%0 = x
Formula mk_bv_ite(Formula cond, Formula a, Formula b);

// Boolean operators
Formula mk_cmp(CmpOp op, Formula a, Formula b);
Formula mk_not(Formula a);
Formula mk_and(Formula a, Formula b);
Formula mk_or(Formula a, Formula b);
Formula mk_xor(Formula a, Formula b);
Formula mk_and(const std::vector<Formula>& fs);
Formula mk_or(const std::vector<Formula>& fs);

inline Formula mk_true() { return mk_bool(true); }
inline Formula mk_false() { return mk_bool(false); }

inline bool is_true(Formula f) { return f->kind == Kind::BoolConst && f->value == 1; }
inline bool is_false(Formula f) { return f->kind == Kind::BoolConst && f->value == 0; }

// Evaluation under a concrete assignment of every leaf name to an unsigned
// value (booleans use 0/1; BitTest reads a bit of the named value).
// Throws std::out_of_range if a name is missing.
class Env {
 public:
  void set(const std::string& name, uint64_t value) { values_[name] = value; }
  uint64_t get(const std::string& name) const { return values_.at(name); }
  bool has(const std::string& name) const { return values_.count(name) != 0; }

 private:
  std::unordered_map<std::string, uint64_t> values_;
};

uint64_t eval(Formula f, const Env& env);
inline bool eval_bool(Formula f, const Env& env) { return eval(f, env) != 0; }

// Free leaf names (BvVar and BitTest), sorted.
std::set<std::string> free_names(Formula f);

// Human-readable infix rendering, for dumps and diagnostics.
std::string to_string(Formula f);

}  // namespace imcaug::fml

#endif
