#ifndef IMCAUG_ENGINE_ENGINE_HPP
#define IMCAUG_ENGINE_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "imcaug/df/invariant.hpp"
#include "imcaug/encoder/encode.hpp"
#include "imcaug/itp/interpolate.hpp"

namespace imcaug::engine {

enum class Algo : uint8_t { BMC, IMC, IMC_F, IMC_I };

const char* algo_name(Algo a);
std::optional<Algo> algo_from_name(const std::string& name);

struct EngineConfig {
  Algo algo = Algo::IMC;
  int k_max = 100;
  uint64_t seed = 42;
  int64_t conflict_budget = 10'000'000;
  double cpu_budget_s = 0;  // 0 = unlimited
  // Theorem 1/3 rechecks for strengthened interpolants and Eq. 2 checks
  // for TRUE verdicts, recorded in the report.
  bool check_certificates = true;
  bool dump_cnf = false;
  std::string dump_dir;
  bool dump_itp = false;

  bool strengthen_fpc() const { return algo == Algo::IMC_F; }
  bool strengthen_itp() const { return algo == Algo::IMC_I; }
};

enum class Verdict : uint8_t { True, False, Unknown };

const char* verdict_name(Verdict v);

struct EngineStats {
  int final_k = 0;
  int itp_queries = 0;  // number of derive calls
  int sat_queries = 0;
  double solver_time_s = 0;
  double itp_time_s = 0;  // derive + certify wall time
  double wall_time_s = 0;
};

// The (G, inv) pair accepted by a passed fixed-point check, kept as
// formulas over bare state-variable names.
struct Certificate {
  fml::Formula g = nullptr;    // I \/ itp_1 \/ ... \/ itp_n
  fml::Formula inv = nullptr;  // auxiliary invariant in force
  int itp_count = 0;
  bool checks_passed = false;  // set when check_certificates re-discharged
};

struct VerdictReport {
  Verdict verdict = Verdict::Unknown;
  std::optional<lang::Trace> counterexample;
  std::optional<Certificate> certificate;
  EngineStats stats;
  // Executable-theorem bookkeeping across the run.
  int itps_derived = 0;
  int itps_certified = 0;
  int strengthened_rechecked = 0;
  int strengthened_recheck_failures = 0;
  std::string note;  // set on UNKNOWN to say why
};

// Algorithm: zero-step check, then for each bound k <= k_max one BMC
// query; on UNSAT the interpolation stage re-forms A from each new
// (possibly strengthened) interpolant until a (possibly strengthened)
// fixed-point check passes or the query turns satisfiable. BMC mode
// skips the interpolation stage entirely.
VerdictReport run(const lang::Program& p, const enc::TransitionSystem& ts,
                  const EngineConfig& cfg, df::InvariantProvider& inv_source);

// not sat(inv /\ itp /\ not G) when strengthened, else not sat(itp /\ not G).
// An exhausted solver budget counts as a failed check.
bool fixed_point_check(const enc::TransitionSystem& ts,
                       const itp::Interpolant& itp, fml::Formula g,
                       const df::AuxiliaryInvariant& inv, bool strengthened,
                       const sat::SolverOptions& opts,
                       itp::CertifyStats* stats = nullptr);

itp::Interpolant strengthen_interpolant(const itp::Interpolant& itp,
                                        const df::AuxiliaryInvariant& inv);

// Re-discharges the three relative-induction conditions for the
// certificate of a TRUE verdict: I => G, inv /\ G /\ T => G', G => P.
bool certify_true_verdict(const VerdictReport& report,
                          const enc::TransitionSystem& ts,
                          const sat::SolverOptions& opts,
                          itp::CertifyStats* stats = nullptr);

}  // namespace imcaug::engine

#endif
