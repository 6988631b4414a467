#include "imcaug/encoder/transition.hpp"

#include <map>
#include <stdexcept>

#include "imcaug/formula/bitblast.hpp"

namespace imcaug::enc {

namespace fml = imcaug::fml;

namespace {

using SymState = std::map<std::string, fml::Formula>;

fml::Formula sym_expr(const lang::Program& p, const lang::Expr& e,
                      const SymState& s) {
  using lang::ExprKind;
  switch (e.kind) {
    case ExprKind::Const:
      return fml::mk_bv_const(e.value, p.width);
    case ExprKind::Var:
      return s.at(e.var);
    case ExprKind::Nondet:
      if (e.type == lang::ExprType::Bool) {
        return fml::mk_bit(nondet_name(e.nondet_index), 0);
      }
      return fml::mk_bv_var(nondet_name(e.nondet_index), p.width);
    case ExprKind::Add:
      return fml::mk_add(sym_expr(p, *e.lhs, s), sym_expr(p, *e.rhs, s));
    case ExprKind::Sub:
      return fml::mk_sub(sym_expr(p, *e.lhs, s), sym_expr(p, *e.rhs, s));
    case ExprKind::Mul:
      return fml::mk_mul(sym_expr(p, *e.lhs, s), sym_expr(p, *e.rhs, s));
    case ExprKind::Div:
      return fml::mk_udiv(sym_expr(p, *e.lhs, s), sym_expr(p, *e.rhs, s));
    case ExprKind::Mod:
      return fml::mk_urem(sym_expr(p, *e.lhs, s), sym_expr(p, *e.rhs, s));
    case ExprKind::Eq:
      return fml::mk_cmp(fml::CmpOp::Eq, sym_expr(p, *e.lhs, s),
                         sym_expr(p, *e.rhs, s));
    case ExprKind::Ne:
      return fml::mk_cmp(fml::CmpOp::Ne, sym_expr(p, *e.lhs, s),
                         sym_expr(p, *e.rhs, s));
    case ExprKind::Lt:
      return fml::mk_cmp(fml::CmpOp::Ult, sym_expr(p, *e.lhs, s),
                         sym_expr(p, *e.rhs, s));
    case ExprKind::Le:
      return fml::mk_cmp(fml::CmpOp::Ule, sym_expr(p, *e.lhs, s),
                         sym_expr(p, *e.rhs, s));
    case ExprKind::Gt:
      return fml::mk_cmp(fml::CmpOp::Ugt, sym_expr(p, *e.lhs, s),
                         sym_expr(p, *e.rhs, s));
    case ExprKind::Ge:
      return fml::mk_cmp(fml::CmpOp::Uge, sym_expr(p, *e.lhs, s),
                         sym_expr(p, *e.rhs, s));
    case ExprKind::And:
      return fml::mk_and(sym_expr(p, *e.lhs, s), sym_expr(p, *e.rhs, s));
    case ExprKind::Or:
      return fml::mk_or(sym_expr(p, *e.lhs, s), sym_expr(p, *e.rhs, s));
    case ExprKind::Not:
      return fml::mk_not(sym_expr(p, *e.lhs, s));
  }
  throw std::logic_error("sym_expr: unreachable");
}

// Symbolic execution of the loop body: branches merge with ITE.
void sym_stmts(const lang::Program& p, const lang::StmtList& stmts,
               SymState& s) {
  for (const auto& st : stmts) {
    if (st->kind == lang::Stmt::Kind::Assign) {
      s[st->target] = sym_expr(p, *st->expr, s);
    } else {
      fml::Formula guard = sym_expr(p, *st->cond, s);
      SymState then_state = s;
      SymState else_state = s;
      sym_stmts(p, st->then_branch, then_state);
      sym_stmts(p, st->else_branch, else_state);
      for (auto& [name, _] : s) {
        s[name] = fml::mk_bv_ite(guard, then_state.at(name),
                                 else_state.at(name));
      }
    }
  }
}

std::vector<lang::NondetOcc> occs_of(const lang::Program& p,
                                     fml::Formula f) {
  std::vector<lang::NondetOcc> out;
  auto names = fml::free_names(f);
  for (const auto& occ : p.nondets) {
    if (names.count(nondet_name(occ.index))) out.push_back(occ);
  }
  return out;
}

}  // namespace

TransitionSystem build_ts(const lang::Program& p) {
  TransitionSystem ts;
  ts.width = p.width;
  for (const auto& v : p.vars) ts.state_vars.emplace_back(v.name, v.width);
  for (const auto& occ : p.nondets) {
    ts.nondet_widths.push_back(occ.is_bool ? 1u : p.width);
  }

  SymState pre;
  for (const auto& v : p.vars) pre[v.name] = fml::mk_bv_var(v.name, p.width);

  ts.init = fml::mk_true();
  for (const auto& v : p.vars) {
    ts.init = fml::mk_and(
        ts.init, fml::mk_cmp(fml::CmpOp::Eq, pre.at(v.name),
                             fml::mk_bv_const(v.init, p.width)));
  }

  fml::Formula cond = sym_expr(p, *p.loop_cond, pre);
  ts.exit_guard = fml::mk_not(cond);

  SymState post = pre;
  sym_stmts(p, p.body, post);
  // One loop iteration when the condition holds; exit states stutter.
  // Totality of T keeps every BMC suffix extensible, which is what makes
  // `itp /\ B unsatisfiable` imply that interpolants satisfy P.
  fml::Formula body_rel = fml::mk_true();
  fml::Formula stay = fml::mk_true();
  for (const auto& v : p.vars) {
    fml::Formula next = fml::mk_bv_var(primed(v.name), p.width);
    body_rel = fml::mk_and(
        body_rel, fml::mk_cmp(fml::CmpOp::Eq, next, post.at(v.name)));
    stay = fml::mk_and(
        stay, fml::mk_cmp(fml::CmpOp::Eq, next, pre.at(v.name)));
  }
  ts.trans = fml::mk_or(fml::mk_and(cond, body_rel),
                        fml::mk_and(fml::mk_not(cond), stay));

  fml::Formula post_ok = fml::mk_true();
  for (const auto& a : p.assertions) {
    post_ok = fml::mk_and(post_ok, sym_expr(p, *a, pre));
  }
  ts.safe = fml::mk_or(cond, post_ok);  // P(s) := -exit(s) \/ post(s)

  ts.init_bb = fml::bitblast(ts.init);
  ts.trans_bb = fml::bitblast(ts.trans);
  ts.safe_bb = fml::bitblast(ts.safe);

  ts.trans_nondets = occs_of(p, ts.trans_bb);
  ts.prop_nondets = occs_of(p, ts.safe_bb);
  return ts;
}

}  // namespace imcaug::enc
