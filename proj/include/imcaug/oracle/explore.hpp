#ifndef IMCAUG_ORACLE_EXPLORE_HPP
#define IMCAUG_ORACLE_EXPLORE_HPP

#include <optional>

#include "imcaug/df/interval.hpp"
#include "imcaug/lang/ast.hpp"

namespace imcaug::oracle {

// Explicit-state reachability over the concrete semantics: BFS over
// loop-head states, enumerating every nondet choice per iteration.
// Ground truth for differential testing at small widths.
struct ReachableSet {
  enum class Outcome : uint8_t { Done, TooLarge };
  Outcome outcome = Outcome::Done;

  std::vector<lang::ConcreteState> states;  // loop-head states, BFS order
  bool safe = true;
  // Minimal-length violating run when unsafe.
  std::optional<lang::Trace> counterexample;
};

struct ExploreLimits {
  // Refuse when 2^(W * |vars|) exceeds this.
  uint64_t state_space_cap = 1ULL << 24;
  // Refuse when the per-iteration nondet choice count exceeds this.
  uint64_t choice_cap = 1ULL << 16;
};

ReachableSet explore(const lang::Program& p, const ExploreLimits& limits = {});

// Per-variable min/max over the reachable states.
df::IntervalEnv hull(const ReachableSet& rs);

}  // namespace imcaug::oracle

#endif
