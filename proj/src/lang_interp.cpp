#include "imcaug/lang/interp.hpp"

#include <stdexcept>

namespace imcaug::lang {

uint64_t eval_expr(const Program& p, const Expr& e, const ConcreteState& s,
                   const NondetMap& nondets) {
  const uint64_t mask = p.mask();
  switch (e.kind) {
    case ExprKind::Const:
      return e.value & mask;
    case ExprKind::Var:
      return s[static_cast<size_t>(p.var_index(e.var))];
    case ExprKind::Nondet:
      return nondets.at(e.nondet_index) &
             (e.type == ExprType::Bool ? 1 : mask);
    case ExprKind::Add:
      return (eval_expr(p, *e.lhs, s, nondets) +
              eval_expr(p, *e.rhs, s, nondets)) & mask;
    case ExprKind::Sub:
      return (eval_expr(p, *e.lhs, s, nondets) -
              eval_expr(p, *e.rhs, s, nondets)) & mask;
    case ExprKind::Mul:
      return (eval_expr(p, *e.lhs, s, nondets) *
              eval_expr(p, *e.rhs, s, nondets)) & mask;
    case ExprKind::Div: {
      uint64_t a = eval_expr(p, *e.lhs, s, nondets);
      uint64_t b = eval_expr(p, *e.rhs, s, nondets);
      return b == 0 ? mask : a / b;
    }
    case ExprKind::Mod: {
      uint64_t a = eval_expr(p, *e.lhs, s, nondets);
      uint64_t b = eval_expr(p, *e.rhs, s, nondets);
      return b == 0 ? a : a % b;
    }
    case ExprKind::Eq:
      return eval_expr(p, *e.lhs, s, nondets) ==
             eval_expr(p, *e.rhs, s, nondets);
    case ExprKind::Ne:
      return eval_expr(p, *e.lhs, s, nondets) !=
             eval_expr(p, *e.rhs, s, nondets);
    case ExprKind::Lt:
      return eval_expr(p, *e.lhs, s, nondets) <
             eval_expr(p, *e.rhs, s, nondets);
    case ExprKind::Le:
      return eval_expr(p, *e.lhs, s, nondets) <=
             eval_expr(p, *e.rhs, s, nondets);
    case ExprKind::Gt:
      return eval_expr(p, *e.lhs, s, nondets) >
             eval_expr(p, *e.rhs, s, nondets);
    case ExprKind::Ge:
      return eval_expr(p, *e.lhs, s, nondets) >=
             eval_expr(p, *e.rhs, s, nondets);
    case ExprKind::And:
      return eval_expr(p, *e.lhs, s, nondets) != 0 &&
             eval_expr(p, *e.rhs, s, nondets) != 0;
    case ExprKind::Or:
      return eval_expr(p, *e.lhs, s, nondets) != 0 ||
             eval_expr(p, *e.rhs, s, nondets) != 0;
    case ExprKind::Not:
      return eval_expr(p, *e.lhs, s, nondets) == 0;
  }
  throw std::logic_error("eval_expr: unreachable");
}

namespace {

void run_stmts(const Program& p, const StmtList& stmts, ConcreteState& s,
               const NondetMap& nondets) {
  for (const auto& st : stmts) {
    if (st->kind == Stmt::Kind::Assign) {
      uint64_t v = eval_expr(p, *st->expr, s, nondets);
      s[static_cast<size_t>(p.var_index(st->target))] = v;
    } else {
      if (eval_expr(p, *st->cond, s, nondets) != 0) {
        run_stmts(p, st->then_branch, s, nondets);
      } else {
        run_stmts(p, st->else_branch, s, nondets);
      }
    }
  }
}

}  // namespace

ConcreteState step(const Program& p, const ConcreteState& s,
                   const NondetMap& nondets) {
  ConcreteState next = s;
  run_stmts(p, p.body, next, nondets);
  return next;
}

bool eval_cond(const Program& p, const ConcreteState& s,
               const NondetMap& nondets) {
  return eval_expr(p, *p.loop_cond, s, nondets) != 0;
}

bool check_post(const Program& p, const ConcreteState& s) {
  static const NondetMap empty;
  for (const auto& a : p.assertions) {
    if (eval_expr(p, *a, s, empty) == 0) return false;
  }
  return true;
}

ConcreteState initial_state(const Program& p) {
  ConcreteState s;
  s.reserve(p.vars.size());
  for (const auto& v : p.vars) s.push_back(v.init & p.mask());
  return s;
}

bool replay(const Program& p, const Trace& trace) {
  if (trace.empty()) return false;
  try {
    if (trace.front().state != initial_state(p)) return false;
    for (size_t i = 0; i + 1 < trace.size(); ++i) {
      if (!eval_cond(p, trace[i].state, trace[i].nondets)) return false;
      if (step(p, trace[i].state, trace[i].nondets) != trace[i + 1].state) {
        return false;
      }
    }
    const TraceStep& last = trace.back();
    if (eval_cond(p, last.state, last.nondets)) return false;
    return !check_post(p, last.state);
  } catch (const std::out_of_range&) {
    return false;  // missing nondet value on the taken path
  }
}

}  // namespace imcaug::lang
