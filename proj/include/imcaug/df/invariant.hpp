#ifndef IMCAUG_DF_INVARIANT_HPP
#define IMCAUG_DF_INVARIANT_HPP

#include <atomic>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "imcaug/df/interval.hpp"
#include "imcaug/encoder/transition.hpp"
#include "imcaug/sat/solver.hpp"

namespace imcaug::df {

struct AuxiliaryInvariant {
  IntervalEnv env;                 // whole-range env for the trivial invariant
  fml::Formula formula = nullptr;  // conjunction of bounds; true when trivial
  int refinement_level = -1;
  bool certified_inductive = false;

  bool is_trivial() const { return formula != nullptr && fml::is_true(formula); }
};

struct GateStats {
  int sat_queries = 0;
  int64_t solver_time_ns = 0;
};

AuxiliaryInvariant trivial_invariant(const lang::Program& p);

// SAT-based inductiveness gate: certifies that I => inv and
// inv /\ T => inv' both hold (two UNSAT checks). On failure or an
// exhausted solver budget the trivial invariant is returned, which is
// vacuously inductive.
AuxiliaryInvariant gate_inductive(const AuxiliaryInvariant& inv,
                                  const enc::TransitionSystem& ts,
                                  const sat::SolverOptions& solver_opts,
                                  GateStats* stats = nullptr);

// Snapshot source for the engine (Alg. 1's get_auxiliary_invariant).
// Snapshots are monotone: each one implies all earlier ones.
class InvariantProvider {
 public:
  virtual ~InvariantProvider() = default;
  virtual AuxiliaryInvariant snapshot() = 0;
};

// Always the trivial invariant (plain IMC, and --inv-file with `true`).
class TopProvider final : public InvariantProvider {
 public:
  explicit TopProvider(const lang::Program& p);
  AuxiliaryInvariant snapshot() override { return inv_; }

 private:
  AuxiliaryInvariant inv_;
};

// Deterministic mode: runs the analysis to a fixed level up front
// (meeting the levels below it) and gates once.
class SyncProvider final : public InvariantProvider {
 public:
  SyncProvider(const lang::Program& p, const enc::TransitionSystem& ts,
               int level, const sat::SolverOptions& solver_opts,
               GateStats* stats = nullptr);
  AuxiliaryInvariant snapshot() override { return inv_; }

 private:
  AuxiliaryInvariant inv_;
};

// A fixed environment from --inv-file; it still passes through the gate.
class FileProvider final : public InvariantProvider {
 public:
  FileProvider(IntervalEnv env, const lang::Program& p,
               const enc::TransitionSystem& ts,
               const sat::SolverOptions& solver_opts,
               GateStats* stats = nullptr);
  AuxiliaryInvariant snapshot() override { return inv_; }

 private:
  AuxiliaryInvariant inv_;
};

// Continuous refinement in a background worker: levels 0..max_level are
// analyzed and published as a meet chain; snapshot() gates the newest
// candidate on the calling thread and keeps the strongest certified
// invariant seen so far. The worker touches no shared formula state.
class AsyncProvider final : public InvariantProvider {
 public:
  AsyncProvider(const lang::Program& p, const enc::TransitionSystem& ts,
                int max_level, double budget_seconds,
                const sat::SolverOptions& solver_opts);
  ~AsyncProvider() override;
  AuxiliaryInvariant snapshot() override;

 private:
  const lang::Program& program_;
  const enc::TransitionSystem& ts_;
  sat::SolverOptions solver_opts_;

  std::mutex mutex_;
  IntervalEnv candidate_;
  int candidate_level_ = -1;
  uint64_t generation_ = 0;

  uint64_t gated_generation_ = 0;
  AuxiliaryInvariant current_;

  std::atomic<bool> stop_{false};
  std::thread worker_;
};

// Text round-trip for --inv-file: `true` or one `<name> <lo> <hi>` line
// per variable; unmentioned variables get the full range.
std::string dump_invariant(const IntervalEnv& env, const lang::Program& p);
IntervalEnv parse_invariant_file(const std::string& text,
                                 const lang::Program& p);

}  // namespace imcaug::df

#endif
