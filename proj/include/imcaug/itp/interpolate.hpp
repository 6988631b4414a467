#ifndef IMCAUG_ITP_INTERPOLATE_HPP
#define IMCAUG_ITP_INTERPOLATE_HPP

#include "imcaug/encoder/encode.hpp"
#include "imcaug/sat/solver.hpp"

namespace imcaug::itp {

// Craig interpolant of an A/B-partitioned refutation, lifted to a boolean
// formula over bare state-variable names (BitTest leaves), so it can be
// re-instantiated at any time index by pure renaming.
struct Interpolant {
  fml::Formula formula = nullptr;
  int source_k = 0;   // unrolling bound of the generating query
  int index = 0;      // position in the interpolation sequence
  bool strengthened = false;
};

struct CertifyStats {
  int sat_queries = 0;
  int64_t solver_time_ns = 0;
};

// McMillan's labeled-resolution construction: an A-leaf contributes the
// disjunction of its shared literals, a B-leaf contributes true, and a
// resolution joins partial interpolants with OR on an A-local pivot and
// AND otherwise. The result is certified against its own query before it
// is returned (both directions solved, vocabulary checked); an invalid
// proof or a failed certificate is a hard error.
Interpolant derive(const sat::ProofLog& proof, const enc::CnfInstance& cnf,
                   const enc::TimedVariableMap& tvm,
                   const sat::SolverOptions& solver_opts,
                   CertifyStats* stats = nullptr);

// Theorem 1 as an executable check: A => itp and itp /\ B unsatisfiable
// (re-encoded and solved from scratch), plus the syntactic vocabulary
// condition. Works for strengthened interpolants as well.
bool certify(const Interpolant& itp, const enc::CnfInstance& cnf,
             const enc::TimedVariableMap& tvm,
             const sat::SolverOptions& solver_opts,
             CertifyStats* stats = nullptr);

}  // namespace imcaug::itp

#endif
