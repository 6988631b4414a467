#ifndef IMCAUG_ENCODER_CNF_HPP
#define IMCAUG_ENCODER_CNF_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace imcaug::enc {

// CNF literals: variable v (0-based) and sign packed as 2*v + neg.
using Var = int32_t;
using Lit = int32_t;

inline Lit mk_lit(Var v, bool neg) { return 2 * v + (neg ? 1 : 0); }
inline Var lit_var(Lit l) { return l >> 1; }
inline bool lit_neg(Lit l) { return (l & 1) != 0; }
inline Lit lit_flip(Lit l) { return l ^ 1; }

// DIMACS rendering of a literal (1-based, sign for negation).
inline int lit_dimacs(Lit l) {
  return lit_neg(l) ? -(lit_var(l) + 1) : (lit_var(l) + 1);
}

enum class Partition : uint8_t { A, B };

enum class ClauseOrigin : uint8_t {
  Init,
  Trans,       // step index in TaggedClause::step
  Property,
  Invariant,
  Interpolant,
  FixedPointCheck,
};

struct TaggedClause {
  std::vector<Lit> lits;  // normalized: sorted, no duplicates, no tautology
  Partition part = Partition::A;
  ClauseOrigin origin = ClauseOrigin::Init;
  int step = -1;
};

struct CnfInstance {
  std::vector<TaggedClause> clauses;
  int var_count = 0;   // all allocated variables, Tseitin included
  int base_vars = 0;   // variables owned by the TimedVariableMap

  // DIMACS text with `c partition A|B` comment lines per clause.
  std::string to_dimacs() const;
};

// A total assignment, 0/1 per variable.
using Model = std::vector<uint8_t>;

const char* origin_name(ClauseOrigin o);

}  // namespace imcaug::enc

#endif
