#include "imcaug/formula/formula.hpp"

#include <cassert>
#include <deque>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace imcaug::fml {

uint64_t width_mask(unsigned width) {
  return width >= 64 ? ~0ULL : ((1ULL << width) - 1);
}

namespace {

struct Key {
  Kind kind;
  uint8_t width;
  CmpOp cmp;
  uint64_t value;
  std::string name;
  Formula c0, c1, c2;

  bool operator==(const Key& o) const {
    return kind == o.kind && width == o.width && cmp == o.cmp &&
           value == o.value && name == o.name && c0 == o.c0 && c1 == o.c1 &&
           c2 == o.c2;
  }
};

struct KeyHash {
  size_t operator()(const Key& k) const {
    size_t h = static_cast<size_t>(k.kind) * 0x9e3779b9;
    auto mix = [&h](size_t v) { h ^= v + 0x9e3779b9 + (h << 6) + (h >> 2); };
    mix(k.width);
    mix(static_cast<size_t>(k.cmp));
    mix(std::hash<uint64_t>{}(k.value));
    mix(std::hash<std::string>{}(k.name));
    mix(std::hash<const void*>{}(k.c0));
    mix(std::hash<const void*>{}(k.c1));
    mix(std::hash<const void*>{}(k.c2));
    return h;
  }
};

// Process-lifetime arena. push_back is serialized; readers only follow
// Node pointers, which std::deque keeps stable.
class Manager {
 public:
  static Manager& instance() {
    static Manager m;
    return m;
  }

  Formula intern(Key k) {
    std::lock_guard<std::mutex> guard(mutex_);
    auto it = table_.find(k);
    if (it != table_.end()) return it->second;
    Node n;
    n.kind = k.kind;
    n.width = k.width;
    n.cmp = k.cmp;
    n.id = static_cast<uint32_t>(nodes_.size());
    n.value = k.value;
    n.name = k.name;
    n.child[0] = k.c0;
    n.child[1] = k.c1;
    n.child[2] = k.c2;
    nodes_.push_back(std::move(n));
    Formula f = &nodes_.back();
    table_.emplace(std::move(k), f);
    return f;
  }

 private:
  std::mutex mutex_;
  std::deque<Node> nodes_;
  std::unordered_map<Key, Formula, KeyHash> table_;
};

Formula intern(Kind kind, uint8_t width, CmpOp cmp, uint64_t value,
               std::string name, Formula c0 = nullptr, Formula c1 = nullptr,
               Formula c2 = nullptr) {
  Key k{kind, width, cmp, value, std::move(name), c0, c1, c2};
  return Manager::instance().intern(std::move(k));
}

bool is_const(Formula f) {
  return f->kind == Kind::BvConst || f->kind == Kind::BoolConst;
}

void require_bv_pair(Formula a, Formula b) {
  if (a->is_bool() || b->is_bool() || a->width != b->width) {
    throw std::logic_error("formula: bitvector width mismatch");
  }
}

void require_bool(Formula a) {
  if (!a->is_bool()) throw std::logic_error("formula: expected boolean");
}

}  // namespace

Formula mk_bv_const(uint64_t value, unsigned width) {
  assert(width >= 1 && width <= 64);
  return intern(Kind::BvConst, static_cast<uint8_t>(width), CmpOp::Eq,
                value & width_mask(width), "");
}

Formula mk_bv_var(const std::string& name, unsigned width) {
  assert(width >= 1 && width <= 64);
  return intern(Kind::BvVar, static_cast<uint8_t>(width), CmpOp::Eq, 0, name);
}

Formula mk_bool(bool value) {
  return intern(Kind::BoolConst, 0, CmpOp::Eq, value ? 1 : 0, "");
}

Formula mk_bit(const std::string& name, unsigned bit) {
  return intern(Kind::BitTest, 0, CmpOp::Eq, bit, name);
}

namespace {

Formula mk_arith(Kind kind, Formula a, Formula b) {
  require_bv_pair(a, b);
  const uint64_t mask = width_mask(a->width);
  if (is_const(a) && is_const(b)) {
    uint64_t x = a->value, y = b->value, r = 0;
    switch (kind) {
      case Kind::BvAdd: r = (x + y) & mask; break;
      case Kind::BvSub: r = (x - y) & mask; break;
      case Kind::BvMul: r = (x * y) & mask; break;
      case Kind::BvUDiv: r = y == 0 ? mask : x / y; break;
      case Kind::BvURem: r = y == 0 ? x : x % y; break;
      default: assert(false);
    }
    return mk_bv_const(r, a->width);
  }
  return intern(kind, a->width, CmpOp::Eq, 0, "", a, b);
}

}  // namespace

Formula mk_add(Formula a, Formula b) { return mk_arith(Kind::BvAdd, a, b); }
Formula mk_sub(Formula a, Formula b) { return mk_arith(Kind::BvSub, a, b); }
Formula mk_mul(Formula a, Formula b) { return mk_arith(Kind::BvMul, a, b); }
Formula mk_udiv(Formula a, Formula b) { return mk_arith(Kind::BvUDiv, a, b); }
Formula mk_urem(Formula a, Formula b) { return mk_arith(Kind::BvURem, a, b); }

Formula mk_bv_ite(Formula cond, Formula a, Formula b) {
  require_bool(cond);
  require_bv_pair(a, b);
  if (is_true(cond)) return a;
  if (is_false(cond)) return b;
  if (a == b) return a;
  return intern(Kind::BvIte, a->width, CmpOp::Eq, 0, "", cond, a, b);
}

Formula mk_cmp(CmpOp op, Formula a, Formula b) {
  require_bv_pair(a, b);
  if (is_const(a) && is_const(b)) {
    uint64_t x = a->value, y = b->value;
    bool r = false;
    switch (op) {
      case CmpOp::Eq: r = x == y; break;
      case CmpOp::Ne: r = x != y; break;
      case CmpOp::Ult: r = x < y; break;
      case CmpOp::Ule: r = x <= y; break;
      case CmpOp::Ugt: r = x > y; break;
      case CmpOp::Uge: r = x >= y; break;
    }
    return mk_bool(r);
  }
  if (a == b) {
    switch (op) {
      case CmpOp::Eq:
      case CmpOp::Ule:
      case CmpOp::Uge:
        return mk_true();
      case CmpOp::Ne:
      case CmpOp::Ult:
      case CmpOp::Ugt:
        return mk_false();
    }
  }
  return intern(Kind::Cmp, 0, op, 0, "", a, b);
}

Formula mk_not(Formula a) {
  require_bool(a);
  if (a->kind == Kind::BoolConst) return mk_bool(a->value == 0);
  if (a->kind == Kind::Not) return a->child[0];
  return intern(Kind::Not, 0, CmpOp::Eq, 0, "", a);
}

namespace {

bool complementary(Formula a, Formula b) {
  return (a->kind == Kind::Not && a->child[0] == b) ||
         (b->kind == Kind::Not && b->child[0] == a);
}

}  // namespace

Formula mk_and(Formula a, Formula b) {
  require_bool(a);
  require_bool(b);
  if (is_false(a) || is_false(b)) return mk_false();
  if (is_true(a)) return b;
  if (is_true(b)) return a;
  if (a == b) return a;
  if (complementary(a, b)) return mk_false();
  return intern(Kind::And, 0, CmpOp::Eq, 0, "", a, b);
}

Formula mk_or(Formula a, Formula b) {
  require_bool(a);
  require_bool(b);
  if (is_true(a) || is_true(b)) return mk_true();
  if (is_false(a)) return b;
  if (is_false(b)) return a;
  if (a == b) return a;
  if (complementary(a, b)) return mk_true();
  return intern(Kind::Or, 0, CmpOp::Eq, 0, "", a, b);
}

Formula mk_xor(Formula a, Formula b) {
  require_bool(a);
  require_bool(b);
  if (is_false(a)) return b;
  if (is_false(b)) return a;
  if (is_true(a)) return mk_not(b);
  if (is_true(b)) return mk_not(a);
  if (a == b) return mk_false();
  if (complementary(a, b)) return mk_true();
  return intern(Kind::Xor, 0, CmpOp::Eq, 0, "", a, b);
}

Formula mk_and(const std::vector<Formula>& fs) {
  Formula acc = mk_true();
  for (Formula f : fs) acc = mk_and(acc, f);
  return acc;
}

Formula mk_or(const std::vector<Formula>& fs) {
  Formula acc = mk_false();
  for (Formula f : fs) acc = mk_or(acc, f);
  return acc;
}

namespace {

uint64_t eval_rec(Formula f, const Env& env,
                  std::unordered_map<Formula, uint64_t>& memo) {
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  uint64_t r = 0;
  const uint64_t mask = width_mask(f->width);
  switch (f->kind) {
    case Kind::BvConst:
    case Kind::BoolConst:
      r = f->value;
      break;
    case Kind::BvVar:
      r = env.get(f->name) & mask;
      break;
    case Kind::BitTest:
      r = (env.get(f->name) >> f->value) & 1;
      break;
    case Kind::BvAdd:
      r = (eval_rec(f->child[0], env, memo) + eval_rec(f->child[1], env, memo)) & mask;
      break;
    case Kind::BvSub:
      r = (eval_rec(f->child[0], env, memo) - eval_rec(f->child[1], env, memo)) & mask;
      break;
    case Kind::BvMul:
      r = (eval_rec(f->child[0], env, memo) * eval_rec(f->child[1], env, memo)) & mask;
      break;
    case Kind::BvUDiv: {
      uint64_t x = eval_rec(f->child[0], env, memo);
      uint64_t y = eval_rec(f->child[1], env, memo);
      r = y == 0 ? mask : x / y;
      break;
    }
    case Kind::BvURem: {
      uint64_t x = eval_rec(f->child[0], env, memo);
      uint64_t y = eval_rec(f->child[1], env, memo);
      r = y == 0 ? x : x % y;
      break;
    }
    case Kind::BvIte:
      r = eval_rec(f->child[0], env, memo) != 0
              ? eval_rec(f->child[1], env, memo)
              : eval_rec(f->child[2], env, memo);
      break;
    case Kind::Cmp: {
      uint64_t x = eval_rec(f->child[0], env, memo);
      uint64_t y = eval_rec(f->child[1], env, memo);
      switch (f->cmp) {
        case CmpOp::Eq: r = x == y; break;
        case CmpOp::Ne: r = x != y; break;
        case CmpOp::Ult: r = x < y; break;
        case CmpOp::Ule: r = x <= y; break;
        case CmpOp::Ugt: r = x > y; break;
        case CmpOp::Uge: r = x >= y; break;
      }
      break;
    }
    case Kind::Not:
      r = eval_rec(f->child[0], env, memo) == 0 ? 1 : 0;
      break;
    case Kind::And:
      r = (eval_rec(f->child[0], env, memo) != 0 &&
           eval_rec(f->child[1], env, memo) != 0)
              ? 1
              : 0;
      break;
    case Kind::Or:
      r = (eval_rec(f->child[0], env, memo) != 0 ||
           eval_rec(f->child[1], env, memo) != 0)
              ? 1
              : 0;
      break;
    case Kind::Xor:
      r = ((eval_rec(f->child[0], env, memo) != 0) !=
           (eval_rec(f->child[1], env, memo) != 0))
              ? 1
              : 0;
      break;
  }
  memo.emplace(f, r);
  return r;
}

}  // namespace

uint64_t eval(Formula f, const Env& env) {
  std::unordered_map<Formula, uint64_t> memo;
  return eval_rec(f, env, memo);
}

std::set<std::string> free_names(Formula f) {
  std::set<std::string> out;
  std::unordered_map<Formula, bool> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula cur = stack.back();
    stack.pop_back();
    if (seen.count(cur)) continue;
    seen[cur] = true;
    if (cur->kind == Kind::BvVar || cur->kind == Kind::BitTest) {
      out.insert(cur->name);
    }
    for (int i = 0; i < cur->arity(); ++i) stack.push_back(cur->child[i]);
  }
  return out;
}

namespace {

const char* cmp_str(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Ult: return "<";
    case CmpOp::Ule: return "<=";
    case CmpOp::Ugt: return ">";
    case CmpOp::Uge: return ">=";
  }
  return "?";
}

void print_rec(std::ostringstream& os, Formula f) {
  switch (f->kind) {
    case Kind::BvConst: os << f->value; break;
    case Kind::BvVar: os << f->name; break;
    case Kind::BoolConst: os << (f->value ? "true" : "false"); break;
    case Kind::BitTest: os << f->name << "[" << f->value << "]"; break;
    case Kind::BvAdd:
    case Kind::BvSub:
    case Kind::BvMul:
    case Kind::BvUDiv:
    case Kind::BvURem: {
      const char* op = f->kind == Kind::BvAdd   ? " + "
                       : f->kind == Kind::BvSub ? " - "
                       : f->kind == Kind::BvMul ? " * "
                       : f->kind == Kind::BvUDiv ? " / "
                                                 : " % ";
      os << "(";
      print_rec(os, f->child[0]);
      os << op;
      print_rec(os, f->child[1]);
      os << ")";
      break;
    }
    case Kind::BvIte:
      os << "ite(";
      print_rec(os, f->child[0]);
      os << ", ";
      print_rec(os, f->child[1]);
      os << ", ";
      print_rec(os, f->child[2]);
      os << ")";
      break;
    case Kind::Cmp:
      os << "(";
      print_rec(os, f->child[0]);
      os << " " << cmp_str(f->cmp) << " ";
      print_rec(os, f->child[1]);
      os << ")";
      break;
    case Kind::Not:
      os << "!";
      print_rec(os, f->child[0]);
      break;
    case Kind::And:
    case Kind::Or:
    case Kind::Xor: {
      const char* op = f->kind == Kind::And ? " && "
                       : f->kind == Kind::Or ? " || "
                                             : " ^ ";
      os << "(";
      print_rec(os, f->child[0]);
      os << op;
      print_rec(os, f->child[1]);
      os << ")";
      break;
    }
  }
}

}  // namespace

std::string to_string(Formula f) {
  std::ostringstream os;
  print_rec(os, f);
  return os.str();
}

}  // namespace imcaug::fml
