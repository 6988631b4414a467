#ifndef IMCAUG_SAT_SOLVER_HPP
#define IMCAUG_SAT_SOLVER_HPP

#include <cstdint>
#include <string>

#include "imcaug/encoder/cnf.hpp"
#include "imcaug/sat/proof.hpp"

namespace imcaug::sat {

struct SolverOptions {
  uint64_t seed = 42;
  // Conflicts allowed per query; <= 0 means unlimited.
  int64_t conflict_budget = 10'000'000;
  bool log_proof = true;
  // When non-empty, learned clauses are appended in DRAT format.
  std::string drat_path;
};

enum class Status : uint8_t { Sat, Unsat, BudgetExhausted };

struct SolveStats {
  int64_t decisions = 0;
  int64_t conflicts = 0;
  int64_t propagations = 0;
  double time_s = 0.0;
};

struct SolveResult {
  Status status = Status::BudgetExhausted;
  enc::Model model;  // total over allocated variables when Sat
  ProofLog proof;    // refutation when Unsat and proof logging is on
  SolveStats stats;
};

// Complete CDCL decision procedure: two-watched-literal propagation,
// 1-UIP clause learning, VSIDS with seed-jittered tie-breaking, phase
// saving, Luby restarts. No preprocessing, no clause deletion, no
// learned-clause minimization; every learned clause is recorded with its
// resolution chain so an exact refutation can be reconstructed. The seed
// perturbs decision order and initial phases only, never the status.
// Each call uses a fresh solver; input clauses must be normalized
// (sorted, duplicate-free, non-tautological).
SolveResult solve(const enc::CnfInstance& cnf, const SolverOptions& opts = {});

}  // namespace imcaug::sat

#endif
