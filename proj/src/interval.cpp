#include "imcaug/df/interval.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "imcaug/lang/interp.hpp"

namespace imcaug::df {

namespace {

enum class Tri : uint8_t { False, True, Maybe };

Tri tri_not(Tri t) {
  if (t == Tri::Maybe) return Tri::Maybe;
  return t == Tri::True ? Tri::False : Tri::True;
}

}  // namespace

IntervalEnv IntervalEnv::top(const lang::Program& p) {
  return top_sized(p.vars.size(), p.mask());
}

IntervalEnv IntervalEnv::top_sized(size_t vars, uint64_t mask) {
  IntervalEnv env;
  env.bottom_ = false;
  env.ivs_.assign(vars, Interval{0, mask});
  return env;
}

IntervalEnv IntervalEnv::from_values(const lang::ConcreteState& s) {
  IntervalEnv env;
  env.bottom_ = false;
  for (uint64_t v : s) env.ivs_.push_back(Interval{v, v});
  return env;
}

bool IntervalEnv::contains(const lang::ConcreteState& s) const {
  if (bottom_) return false;
  for (size_t i = 0; i < ivs_.size(); ++i) {
    if (s[i] < ivs_[i].lo || s[i] > ivs_[i].hi) return false;
  }
  return true;
}

bool IntervalEnv::is_top(unsigned width) const {
  if (bottom_) return false;
  uint64_t mask = fml::width_mask(width);
  for (const auto& iv : ivs_) {
    if (iv.lo != 0 || iv.hi != mask) return false;
  }
  return true;
}

IntervalEnv IntervalEnv::joined(const IntervalEnv& other) const {
  if (bottom_) return other;
  if (other.bottom_) return *this;
  IntervalEnv out = *this;
  for (size_t i = 0; i < ivs_.size(); ++i) {
    out.ivs_[i].lo = std::min(ivs_[i].lo, other.ivs_[i].lo);
    out.ivs_[i].hi = std::max(ivs_[i].hi, other.ivs_[i].hi);
  }
  return out;
}

IntervalEnv IntervalEnv::met(const IntervalEnv& other) const {
  if (bottom_ || other.bottom_) return IntervalEnv{};
  IntervalEnv out = *this;
  for (size_t i = 0; i < ivs_.size(); ++i) {
    out.ivs_[i].lo = std::max(ivs_[i].lo, other.ivs_[i].lo);
    out.ivs_[i].hi = std::min(ivs_[i].hi, other.ivs_[i].hi);
    if (out.ivs_[i].lo > out.ivs_[i].hi) return IntervalEnv{};
  }
  return out;
}

bool IntervalEnv::implies(const IntervalEnv& other) const {
  if (bottom_) return true;
  if (other.bottom_) return false;
  for (size_t i = 0; i < ivs_.size(); ++i) {
    if (ivs_[i].lo < other.ivs_[i].lo || ivs_[i].hi > other.ivs_[i].hi) {
      return false;
    }
  }
  return true;
}

fml::Formula IntervalEnv::formula(const lang::Program& p) const {
  if (bottom_) return fml::mk_false();
  fml::Formula acc = fml::mk_true();
  for (size_t i = 0; i < ivs_.size(); ++i) {
    fml::Formula var = fml::mk_bv_var(p.vars[i].name, p.width);
    if (ivs_[i].lo > 0) {
      acc = fml::mk_and(acc, fml::mk_cmp(fml::CmpOp::Ule,
                                         fml::mk_bv_const(ivs_[i].lo, p.width),
                                         var));
    }
    if (ivs_[i].hi < p.mask()) {
      acc = fml::mk_and(acc, fml::mk_cmp(fml::CmpOp::Ule, var,
                                         fml::mk_bv_const(ivs_[i].hi, p.width)));
    }
  }
  return acc;
}

std::string IntervalEnv::to_string(const lang::Program& p) const {
  if (bottom_) return "<bottom>";
  std::ostringstream os;
  for (size_t i = 0; i < ivs_.size(); ++i) {
    if (i > 0) os << ", ";
    os << p.vars[i].name << " in [" << ivs_[i].lo << ", " << ivs_[i].hi << "]";
  }
  return os.str();
}

namespace {

// Abstract expression evaluation; any possible wrap sends the result to
// the full range.
Interval aeval(const lang::Program& p, const lang::Expr& e,
               const IntervalEnv& env) {
  const uint64_t mask = p.mask();
  const Interval top{0, mask};
  using lang::ExprKind;
  switch (e.kind) {
    case ExprKind::Const:
      return {e.value, e.value};
    case ExprKind::Var:
      return env.at(static_cast<size_t>(p.var_index(e.var)));
    case ExprKind::Nondet:
      return e.type == lang::ExprType::Bool ? Interval{0, 1} : top;
    case ExprKind::Add: {
      Interval a = aeval(p, *e.lhs, env), b = aeval(p, *e.rhs, env);
      if (a.hi > mask - b.hi) return top;
      return {a.lo + b.lo, a.hi + b.hi};
    }
    case ExprKind::Sub: {
      Interval a = aeval(p, *e.lhs, env), b = aeval(p, *e.rhs, env);
      if (a.lo < b.hi) return top;
      return {a.lo - b.hi, a.hi - b.lo};
    }
    case ExprKind::Mul: {
      Interval a = aeval(p, *e.lhs, env), b = aeval(p, *e.rhs, env);
      if (b.hi != 0 && a.hi > mask / b.hi) return top;
      return {a.lo * b.lo, a.hi * b.hi};
    }
    case ExprKind::Div: {
      Interval a = aeval(p, *e.lhs, env), b = aeval(p, *e.rhs, env);
      if (b.lo == 0) return top;  // x/0 = 2^W-1 is possible
      return {a.lo / b.hi, a.hi / b.lo};
    }
    case ExprKind::Mod: {
      Interval a = aeval(p, *e.lhs, env), b = aeval(p, *e.rhs, env);
      if (b.lo == 0) return top;  // x%0 = x
      if (a.hi < b.lo) return a;
      return {0, std::min(a.hi, b.hi - 1)};
    }
    default:
      throw std::logic_error("aeval: boolean expression in term position");
  }
}

Tri teval(const lang::Program& p, const lang::Expr& e,
          const IntervalEnv& env) {
  using lang::ExprKind;
  switch (e.kind) {
    case ExprKind::Nondet:
      return Tri::Maybe;
    case ExprKind::Not:
      return tri_not(teval(p, *e.lhs, env));
    case ExprKind::And: {
      Tri a = teval(p, *e.lhs, env), b = teval(p, *e.rhs, env);
      if (a == Tri::False || b == Tri::False) return Tri::False;
      if (a == Tri::True && b == Tri::True) return Tri::True;
      return Tri::Maybe;
    }
    case ExprKind::Or: {
      Tri a = teval(p, *e.lhs, env), b = teval(p, *e.rhs, env);
      if (a == Tri::True || b == Tri::True) return Tri::True;
      if (a == Tri::False && b == Tri::False) return Tri::False;
      return Tri::Maybe;
    }
    case ExprKind::Eq: {
      Interval a = aeval(p, *e.lhs, env), b = aeval(p, *e.rhs, env);
      if (a.lo == a.hi && b.lo == b.hi && a.lo == b.lo) return Tri::True;
      if (a.hi < b.lo || b.hi < a.lo) return Tri::False;
      return Tri::Maybe;
    }
    case ExprKind::Ne: {
      Interval a = aeval(p, *e.lhs, env), b = aeval(p, *e.rhs, env);
      if (a.lo == a.hi && b.lo == b.hi && a.lo == b.lo) return Tri::False;
      if (a.hi < b.lo || b.hi < a.lo) return Tri::True;
      return Tri::Maybe;
    }
    case ExprKind::Lt: {
      Interval a = aeval(p, *e.lhs, env), b = aeval(p, *e.rhs, env);
      if (a.hi < b.lo) return Tri::True;
      if (a.lo >= b.hi) return Tri::False;
      return Tri::Maybe;
    }
    case ExprKind::Le: {
      Interval a = aeval(p, *e.lhs, env), b = aeval(p, *e.rhs, env);
      if (a.hi <= b.lo) return Tri::True;
      if (a.lo > b.hi) return Tri::False;
      return Tri::Maybe;
    }
    case ExprKind::Gt: {
      Interval a = aeval(p, *e.lhs, env), b = aeval(p, *e.rhs, env);
      if (a.lo > b.hi) return Tri::True;
      if (a.hi <= b.lo) return Tri::False;
      return Tri::Maybe;
    }
    case ExprKind::Ge: {
      Interval a = aeval(p, *e.lhs, env), b = aeval(p, *e.rhs, env);
      if (a.lo >= b.hi) return Tri::True;
      if (a.hi < b.lo) return Tri::False;
      return Tri::Maybe;
    }
    default:
      throw std::logic_error("teval: term in boolean position");
  }
}

// Narrow the interval of one variable with `v <op> c`; bottom on empty.
bool narrow_with_const(Interval& iv, lang::ExprKind op, uint64_t c,
                       uint64_t mask) {
  using lang::ExprKind;
  switch (op) {
    case ExprKind::Eq:
      iv.lo = std::max(iv.lo, c);
      iv.hi = std::min(iv.hi, c);
      break;
    case ExprKind::Ne:
      if (iv.lo == c && iv.hi == c) return false;
      if (iv.lo == c) iv.lo = c + 1;
      if (iv.hi == c) iv.hi = c - 1;
      break;
    case ExprKind::Lt:
      if (c == 0) return false;
      iv.hi = std::min(iv.hi, c - 1);
      break;
    case ExprKind::Le:
      iv.hi = std::min(iv.hi, c);
      break;
    case ExprKind::Gt:
      if (c == mask) return false;
      iv.lo = std::max(iv.lo, c + 1);
      break;
    case ExprKind::Ge:
      iv.lo = std::max(iv.lo, c);
      break;
    default:
      return true;
  }
  return iv.lo <= iv.hi;
}

lang::ExprKind negate_cmp(lang::ExprKind op) {
  using lang::ExprKind;
  switch (op) {
    case ExprKind::Eq: return ExprKind::Ne;
    case ExprKind::Ne: return ExprKind::Eq;
    case ExprKind::Lt: return ExprKind::Ge;
    case ExprKind::Le: return ExprKind::Gt;
    case ExprKind::Gt: return ExprKind::Le;
    case ExprKind::Ge: return ExprKind::Lt;
    default: return op;
  }
}

lang::ExprKind swap_cmp(lang::ExprKind op) {
  using lang::ExprKind;
  switch (op) {
    case ExprKind::Lt: return ExprKind::Gt;
    case ExprKind::Le: return ExprKind::Ge;
    case ExprKind::Gt: return ExprKind::Lt;
    case ExprKind::Ge: return ExprKind::Le;
    default: return op;
  }
}

bool is_cmp(lang::ExprKind k) {
  using lang::ExprKind;
  return k == ExprKind::Eq || k == ExprKind::Ne || k == ExprKind::Lt ||
         k == ExprKind::Le || k == ExprKind::Gt || k == ExprKind::Ge;
}

}  // namespace

IntervalEnv refine(const lang::Program& p, const IntervalEnv& env,
                   const lang::Expr& guard, bool guard_holds) {
  using lang::ExprKind;
  if (env.is_bottom()) return env;
  if (guard.kind == ExprKind::Not) {
    return refine(p, env, *guard.lhs, !guard_holds);
  }
  if (guard.kind == ExprKind::And && guard_holds) {
    return refine(p, refine(p, env, *guard.lhs, true), *guard.rhs, true);
  }
  if (guard.kind == ExprKind::Or && !guard_holds) {
    return refine(p, refine(p, env, *guard.lhs, false), *guard.rhs, false);
  }
  if (!is_cmp(guard.kind)) return env;

  ExprKind op = guard_holds ? guard.kind : negate_cmp(guard.kind);
  const lang::Expr* lhs = guard.lhs.get();
  const lang::Expr* rhs = guard.rhs.get();
  // canonicalize const ~ v to v ~ const
  if (lhs->kind == ExprKind::Const && rhs->kind == ExprKind::Var) {
    std::swap(lhs, rhs);
    op = swap_cmp(op);
  }
  IntervalEnv out = env;
  if (lhs->kind == ExprKind::Var && rhs->kind == ExprKind::Const) {
    size_t i = static_cast<size_t>(p.var_index(lhs->var));
    if (!narrow_with_const(out.at(i), op, rhs->value & p.mask(), p.mask())) {
      return IntervalEnv{};
    }
    return out;
  }
  if (lhs->kind == ExprKind::Var && rhs->kind == ExprKind::Var) {
    size_t i = static_cast<size_t>(p.var_index(lhs->var));
    size_t j = static_cast<size_t>(p.var_index(rhs->var));
    Interval& a = out.at(i);
    Interval& b = out.at(j);
    switch (op) {
      case ExprKind::Eq: {
        uint64_t lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
        if (lo > hi) return IntervalEnv{};
        a = b = Interval{lo, hi};
        return out;
      }
      case ExprKind::Ne:
        if (b.lo == b.hi && !narrow_with_const(a, ExprKind::Ne, b.lo, p.mask()))
          return IntervalEnv{};
        if (a.lo == a.hi && !narrow_with_const(b, ExprKind::Ne, a.lo, p.mask()))
          return IntervalEnv{};
        return out;
      case ExprKind::Lt:
        if (b.hi == 0 || a.lo == p.mask()) return IntervalEnv{};
        a.hi = std::min(a.hi, b.hi - 1);
        b.lo = std::max(b.lo, a.lo + 1);
        break;
      case ExprKind::Le:
        a.hi = std::min(a.hi, b.hi);
        b.lo = std::max(b.lo, a.lo);
        break;
      case ExprKind::Gt:
        if (a.hi == 0 || b.lo == p.mask()) return IntervalEnv{};
        b.hi = std::min(b.hi, a.hi - 1);
        a.lo = std::max(a.lo, b.lo + 1);
        break;
      case ExprKind::Ge:
        b.hi = std::min(b.hi, a.hi);
        a.lo = std::max(a.lo, b.lo);
        break;
      default:
        return env;
    }
    if (a.lo > a.hi || b.lo > b.hi) return IntervalEnv{};
    return out;
  }
  return env;
}

namespace {

IntervalEnv transfer_stmts(const lang::Program& p, IntervalEnv env,
                           const lang::StmtList& stmts) {
  for (const auto& st : stmts) {
    if (env.is_bottom()) return env;
    if (st->kind == lang::Stmt::Kind::Assign) {
      size_t i = static_cast<size_t>(p.var_index(st->target));
      env.at(i) = aeval(p, *st->expr, env);
    } else {
      Tri t = teval(p, *st->cond, env);
      IntervalEnv then_env;
      IntervalEnv else_env;
      if (t != Tri::False) {
        then_env = transfer_stmts(p, refine(p, env, *st->cond, true),
                                  st->then_branch);
      }
      if (t != Tri::True) {
        else_env = transfer_stmts(p, refine(p, env, *st->cond, false),
                                  st->else_branch);
      }
      env = then_env.joined(else_env);
    }
  }
  return env;
}

}  // namespace

IntervalEnv transfer(const lang::Program& p, const IntervalEnv& env,
                     const lang::StmtList& body) {
  return transfer_stmts(p, env, body);
}

int max_ascents(int level) { return 4 * level + 2; }

IntervalEnv analyze(const lang::Program& p, int level) {
  const int tolerate = 4 * level + 1;
  IntervalEnv env = IntervalEnv::from_values(lang::initial_state(p));
  std::vector<int> changes(p.vars.size(), 0);
  const int limit =
      2 * static_cast<int>(p.vars.size()) * (tolerate + 2) + 4;

  for (int iter = 0; iter < limit; ++iter) {
    IntervalEnv pre = refine(p, env, *p.loop_cond, true);
    IntervalEnv post =
        pre.is_bottom() ? IntervalEnv{} : transfer(p, pre, p.body);
    IntervalEnv next = env.joined(post);
    if (next == env) return env;
    for (size_t i = 0; i < p.vars.size(); ++i) {
      if (next.at(i) == env.at(i)) continue;
      if (++changes[i] > tolerate) {
        if (next.at(i).lo < env.at(i).lo) next.at(i).lo = 0;
        if (next.at(i).hi > env.at(i).hi) next.at(i).hi = p.mask();
      }
    }
    env = next;
  }
  throw std::logic_error("interval analysis failed to stabilize");
}

}  // namespace imcaug::df

