#ifndef IMCAUG_FORMULA_BITBLAST_HPP
#define IMCAUG_FORMULA_BITBLAST_HPP

#include "imcaug/formula/formula.hpp"

namespace imcaug::fml {

// Lowers a mixed bitvector/boolean formula to a purely boolean DAG whose
// only leaves are BitTest nodes (and constants). Arithmetic becomes
// ripple-carry adders, shift-add multipliers and restoring dividers; the
// restoring divider gives x/0 = 2^W-1 and x%0 = x for free, matching the
// concrete semantics. Results are memoized globally.
Formula bitblast(Formula f);

}  // namespace imcaug::fml

#endif
