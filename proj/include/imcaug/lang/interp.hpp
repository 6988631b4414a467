#ifndef IMCAUG_LANG_INTERP_HPP
#define IMCAUG_LANG_INTERP_HPP

#include "imcaug/lang/ast.hpp"

namespace imcaug::lang {

// Concrete semantics. Arithmetic wraps modulo 2^W; division and modulo by
// zero follow the bitvector convention x/0 = 2^W-1, x%0 = x, so there are
// no runtime error paths.

// Evaluates an expression at state `s`. Nondet occurrences read from
// `nondets`; a missing index throws std::out_of_range.
uint64_t eval_expr(const Program& p, const Expr& e, const ConcreteState& s,
                   const NondetMap& nondets);

// One full loop-body execution (the loop condition is the caller's
// business). Deterministic given the nondet values on the taken path.
ConcreteState step(const Program& p, const ConcreteState& s,
                   const NondetMap& nondets);

// Loop condition at state `s` under the given nondet values.
bool eval_cond(const Program& p, const ConcreteState& s,
               const NondetMap& nondets);

// True iff every post-assertion holds at `s`.
bool check_post(const Program& p, const ConcreteState& s);

// Validates a counterexample trace: the first state carries the declared
// initial values, each consecutive pair is one `step` under a satisfied
// loop condition, the loop condition is false at the last state under its
// nondet values, and some post-assertion fails there. Any mismatch,
// including missing nondet values, yields false.
bool replay(const Program& p, const Trace& trace);

ConcreteState initial_state(const Program& p);

}  // namespace imcaug::lang

#endif
