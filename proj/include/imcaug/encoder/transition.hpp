#ifndef IMCAUG_ENCODER_TRANSITION_HPP
#define IMCAUG_ENCODER_TRANSITION_HPP

#include <string>
#include <vector>

#include "imcaug/formula/formula.hpp"
#include "imcaug/lang/ast.hpp"

namespace imcaug::enc {

// Symbolic transition system built from a program with large-block
// encoding: one transition is one full loop iteration, executed under
// the loop condition. The safety predicate folds the exit guard in:
// P(s) = cond(s) \/ post(s), so a state is unsafe exactly when the loop
// can exit there with a failing assertion.
//
// Formula vocabulary: state variables by name, next-state variables with
// a prime suffix, nondet occurrences as "?<index>". The blasted variants
// are boolean-only DAGs over BitTest leaves.
struct TransitionSystem {
  std::vector<std::pair<std::string, unsigned>> state_vars;
  unsigned width = 8;

  fml::Formula init = nullptr;        // over s
  fml::Formula trans = nullptr;       // over s, s', nondets
  fml::Formula safe = nullptr;        // over s, cond-nondets
  fml::Formula exit_guard = nullptr;  // over s, cond-nondets

  fml::Formula init_bb = nullptr;
  fml::Formula trans_bb = nullptr;
  fml::Formula safe_bb = nullptr;

  // Nondet occurrences referenced by trans / safe, by occurrence index.
  std::vector<lang::NondetOcc> trans_nondets;
  std::vector<lang::NondetOcc> prop_nondets;
  // Width of occurrence i (1 for boolean choices).
  std::vector<unsigned> nondet_widths;
};

TransitionSystem build_ts(const lang::Program& p);

// Name of the next-state copy of a state variable.
inline std::string primed(const std::string& name) { return name + "'"; }

// Name of nondet occurrence `i` in formulas.
inline std::string nondet_name(int i) { return "?" + std::to_string(i); }

}  // namespace imcaug::enc

#endif
