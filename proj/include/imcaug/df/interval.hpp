#ifndef IMCAUG_DF_INTERVAL_HPP
#define IMCAUG_DF_INTERVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "imcaug/formula/formula.hpp"
#include "imcaug/lang/ast.hpp"

namespace imcaug::df {

// Unsigned interval [lo, hi] within a bit width. Wrap-around is handled
// by widening to the full range whenever an abstract result might leave
// [0, 2^W - 1].
struct Interval {
  uint64_t lo = 0;
  uint64_t hi = 0;

  bool operator==(const Interval&) const = default;
};

// Per-variable intervals at the loop head, in declaration order. Bottom
// exists only as the pre-fixpoint value; published environments never
// carry it.
class IntervalEnv {
 public:
  IntervalEnv() = default;  // bottom
  static IntervalEnv top(const lang::Program& p);
  static IntervalEnv top_sized(size_t vars, uint64_t mask);
  static IntervalEnv from_values(const lang::ConcreteState& s);

  bool is_bottom() const { return bottom_; }
  size_t size() const { return ivs_.size(); }
  const Interval& at(size_t i) const { return ivs_[i]; }
  Interval& at(size_t i) { return ivs_[i]; }

  bool contains(const lang::ConcreteState& s) const;
  bool is_top(unsigned width) const;

  IntervalEnv joined(const IntervalEnv& other) const;
  IntervalEnv met(const IntervalEnv& other) const;  // meet; may go bottom

  // True iff `this` is contained in `other` (pointwise).
  bool implies(const IntervalEnv& other) const;

  // Conjunction of bound constraints over the state variables, omitting
  // trivial bounds; the whole-range environment renders as true.
  fml::Formula formula(const lang::Program& p) const;

  std::string to_string(const lang::Program& p) const;

  bool operator==(const IntervalEnv&) const = default;

 private:
  bool bottom_ = true;
  std::vector<Interval> ivs_;
};

// Abstract post-image of one loop-body execution: sound for every
// concrete state in `env` and every nondet choice.
IntervalEnv transfer(const lang::Program& p, const IntervalEnv& env,
                     const lang::StmtList& body);

// Narrows `env` with a branch guard. Only guards of the shapes
// v ~ const, const ~ v and v ~ v' refine anything; everything else is
// returned unchanged (sound).
IntervalEnv refine(const lang::Program& p, const IntervalEnv& env,
                   const lang::Expr& guard, bool guard_holds);

// Loop-head fixpoint: the least environment containing the initial state
// and closed under one loop iteration taken under the loop condition.
// Level l tolerates 4*l + 1 changes per variable before widening the
// unstable bounds to the full range, so every variable stabilizes within
// 4*l + 2 ascending iterations.
IntervalEnv analyze(const lang::Program& p, int level);

int max_ascents(int level);

}  // namespace imcaug::df

#endif
