// Acceptance suite: runs every top-level criterion at its stated
// tolerance and prints one PASS/FAIL line each. Exits nonzero if any
// criterion fails. Soft criteria print their measurements and assert
// only what they pin down (median signs, zero-failure counts).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "imcaug/df/invariant.hpp"
#include "imcaug/engine/engine.hpp"
#include "imcaug/gen/generator.hpp"
#include "imcaug/lang/interp.hpp"
#include "imcaug/lang/parser.hpp"
#include "imcaug/oracle/explore.hpp"

using namespace imcaug;
using engine::Algo;
using engine::Verdict;

namespace {

int failures = 0;

void criterion(int n, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", n, name,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

engine::VerdictReport run_one(const lang::Program& p,
                              const enc::TransitionSystem& ts, Algo algo,
                              df::InvariantProvider& provider, int kmax,
                              uint64_t seed) {
  engine::EngineConfig cfg;
  cfg.algo = algo;
  cfg.k_max = kmax;
  cfg.seed = seed;
  cfg.conflict_budget = 200'000;
  return engine::run(p, ts, cfg, provider);
}

struct TaskData {
  std::string src;
  bool oracle_done = false;
  bool safe = false;
  bool df_nontrivial = false;
  std::map<Algo, engine::VerdictReport> runs;
};

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  size_t n = xs.size();
  return n == 0 ? 0.0
                : (n % 2 == 1 ? xs[n / 2]
                              : 0.5 * (xs[n / 2 - 1] + xs[n / 2]));
}

}  // namespace

int main() {
  const std::string source_dir = IMCAUG_SOURCE_DIR;
  const Algo all_algos[] = {Algo::BMC, Algo::IMC, Algo::IMC_F, Algo::IMC_I};

  // ---- criterion 1: golden run of the motivating example at W=8
  {
    double t0 = now_seconds();
    lang::Program p =
        lang::parse(read_file(source_dir + "/examples/even.slp"), 8);
    enc::TransitionSystem ts = enc::build_ts(p);

    df::SyncProvider df0(p, ts, 0, {});
    df::AuxiliaryInvariant inv = df0.snapshot();
    fml::Formula i_bound = fml::mk_cmp(
        fml::CmpOp::Ule, fml::mk_bv_var("i", 8), fml::mk_bv_const(1, 8));
    bool inv_implies_bound =
        sat::solve(enc::implication_check(ts, inv.formula, i_bound)).status ==
        sat::Status::Unsat;

    std::map<Algo, engine::VerdictReport> runs;
    for (Algo a : {Algo::IMC, Algo::IMC_F, Algo::IMC_I}) {
      df::SyncProvider prov(p, ts, 0, {});
      runs[a] = run_one(p, ts, a, prov, 100, 42);
    }
    double elapsed = now_seconds() - t0;

    bool all_true = runs[Algo::IMC].verdict == Verdict::True &&
                    runs[Algo::IMC_F].verdict == Verdict::True &&
                    runs[Algo::IMC_I].verdict == Verdict::True;
    bool effort = runs[Algo::IMC_I].stats.final_k <=
                      runs[Algo::IMC].stats.final_k &&
                  runs[Algo::IMC_I].stats.itp_queries <=
                      runs[Algo::IMC].stats.itp_queries;
    std::ostringstream d;
    d << "k/itp plain=" << runs[Algo::IMC].stats.final_k << "/"
      << runs[Algo::IMC].stats.itp_queries
      << " fpc=" << runs[Algo::IMC_F].stats.final_k << "/"
      << runs[Algo::IMC_F].stats.itp_queries
      << " inj=" << runs[Algo::IMC_I].stats.final_k << "/"
      << runs[Algo::IMC_I].stats.itp_queries
      << " (reference run 3/7 vs 1/2), " << std::fixed << elapsed << "s";
    criterion(1, "golden even.slp at W=8",
              inv_implies_bound && all_true && effort && elapsed < 10.0,
              d.str());
  }

  // ---- shared corpus for criteria 2 and 5-10
  gen::GenOptions gopts;
  gopts.seed = 42;
  gopts.count = 520;
  gopts.width = 4;
  std::vector<TaskData> tasks;
  for (const std::string& src : gen::generate_corpus(gopts)) {
    TaskData t;
    t.src = src;
    tasks.push_back(std::move(t));
  }

  // ---- criterion 2: differential soundness against the oracle
  {
    double t0 = now_seconds();
    int mismatches = 0, compared = 0, unknowns = 0;
    for (auto& t : tasks) {
      lang::Program p = lang::parse(t.src);
      oracle::ReachableSet rs = oracle::explore(p);
      t.oracle_done = rs.outcome == oracle::ReachableSet::Outcome::Done;
      if (!t.oracle_done) continue;
      t.safe = rs.safe;
      enc::TransitionSystem ts = enc::build_ts(p);
      df::SyncProvider df1(p, ts, 1, {});
      t.df_nontrivial = !df1.snapshot().is_trivial();
      for (Algo a : all_algos) {
        df::SyncProvider prov(p, ts, 1, {});
        engine::VerdictReport r = run_one(p, ts, a, prov, 16, 42);
        if (r.verdict == Verdict::Unknown) {
          ++unknowns;
        } else {
          ++compared;
          if ((r.verdict == Verdict::True) != rs.safe) ++mismatches;
        }
        t.runs[a] = std::move(r);
      }
    }
    double elapsed = now_seconds() - t0;
    std::ostringstream d;
    d << tasks.size() << " tasks, " << compared << " decided runs, "
      << unknowns << " UNKNOWN, " << mismatches << " mismatches, "
      << std::fixed << elapsed << "s";
    criterion(2, "differential soundness vs oracle (W=4 corpus)",
              tasks.size() >= 500 && mismatches == 0 && elapsed < 600.0,
              d.str());
  }

  // ---- criterion 3: Theorem 1 as executable contract
  {
    long derived = 0, certified = 0;
    for (const auto& t : tasks) {
      for (const auto& [a, r] : t.runs) {
        derived += r.itps_derived;
        certified += r.itps_certified;
      }
    }
    std::ostringstream d;
    d << derived << " interpolants derived, " << certified << " certified";
    criterion(3, "every derived interpolant passes certify",
              derived > 0 && derived == certified, d.str());
  }

  // ---- criterion 4: Theorem 3 as executable contract
  {
    long rechecked = 0, failed = 0;
    for (const auto& t : tasks) {
      auto it = t.runs.find(Algo::IMC_I);
      if (it == t.runs.end()) continue;
      rechecked += it->second.strengthened_rechecked;
      failed += it->second.strengthened_recheck_failures;
    }
    std::ostringstream d;
    d << rechecked << " strengthened interpolants rechecked, " << failed
      << " failures";
    criterion(4, "strengthened interpolants stay interpolants",
              rechecked > 0 && failed == 0, d.str());
  }

  // ---- criterion 5: Theorem 2 as executable contract
  {
    long true_verdicts = 0, cert_failures = 0;
    for (const auto& t : tasks) {
      for (const auto& [a, r] : t.runs) {
        if (r.verdict != Verdict::True) continue;
        ++true_verdicts;
        if (!r.certificate.has_value() || !r.certificate->checks_passed) {
          ++cert_failures;
        }
      }
    }
    std::ostringstream d;
    d << true_verdicts << " TRUE verdicts, " << cert_failures
      << " certificate failures";
    criterion(5, "every TRUE verdict passes certify_true_verdict",
              true_verdicts > 0 && cert_failures == 0, d.str());
  }

  // ---- criterion 6: plain-IMC reduction under a forced trivial invariant
  {
    int mismatches = 0, compared = 0;
    for (auto& t : tasks) {
      if (!t.oracle_done) continue;
      lang::Program p = lang::parse(t.src);
      enc::TransitionSystem ts = enc::build_ts(p);
      engine::VerdictReport base;
      {
        df::TopProvider prov(p);
        base = run_one(p, ts, Algo::IMC, prov, 16, 42);
      }
      for (Algo a : {Algo::IMC_F, Algo::IMC_I}) {
        df::TopProvider prov(p);
        engine::VerdictReport r = run_one(p, ts, a, prov, 16, 42);
        ++compared;
        if (r.verdict != base.verdict ||
            r.stats.final_k != base.stats.final_k ||
            r.stats.itp_queries != base.stats.itp_queries) {
          ++mismatches;
        }
      }
    }
    std::ostringstream d;
    d << compared << " paired runs, " << mismatches << " mismatches";
    criterion(6, "IMC_F/IMC_I with invariant true equal plain IMC",
              compared > 0 && mismatches == 0, d.str());
  }

  // ---- criterion 7: seed robustness on a 50-task safe sub-corpus
  {
    std::vector<const TaskData*> safe_tasks;
    for (const auto& t : tasks) {
      if (t.oracle_done && t.safe) safe_tasks.push_back(&t);
      if (safe_tasks.size() == 50) break;
    }
    const uint64_t seeds[] = {0, 1, 2, 3, 42};
    int verdict_mismatches = 0;
    std::map<uint64_t, int> proofs_per_seed;
    for (const TaskData* t : safe_tasks) {
      lang::Program p = lang::parse(t->src);
      enc::TransitionSystem ts = enc::build_ts(p);
      for (Algo a : {Algo::IMC, Algo::IMC_I}) {
        std::optional<Verdict> base;
        for (uint64_t seed : seeds) {
          df::SyncProvider prov(p, ts, 1, {});
          engine::VerdictReport r = run_one(p, ts, a, prov, 16, seed);
          if (a == Algo::IMC_I && r.verdict == Verdict::True) {
            proofs_per_seed[seed] += 1;
          }
          if (!base.has_value()) {
            base = r.verdict;
          } else if (*base != r.verdict) {
            ++verdict_mismatches;
          }
        }
      }
    }
    std::ostringstream d;
    d << safe_tasks.size() << " tasks, verdict mismatches "
      << verdict_mismatches << "; IMC_I proofs per seed:";
    for (uint64_t seed : seeds) d << " " << proofs_per_seed[seed];
    criterion(7, "verdicts identical across seeds {0,1,2,3,42}",
              safe_tasks.size() == 50 && verdict_mismatches == 0, d.str());
  }

  // ---- criterion 8: effort-reduction trend on DF-nontrivial safe tasks
  {
    std::vector<double> dk, ditp;
    std::ostringstream scatter;
    for (const auto& t : tasks) {
      if (!t.oracle_done || !t.safe || !t.df_nontrivial) continue;
      auto plain = t.runs.find(Algo::IMC);
      auto inj = t.runs.find(Algo::IMC_I);
      if (plain == t.runs.end() || inj == t.runs.end()) continue;
      if (plain->second.verdict != Verdict::True ||
          inj->second.verdict != Verdict::True) {
        continue;
      }
      dk.push_back(inj->second.stats.final_k - plain->second.stats.final_k);
      ditp.push_back(inj->second.stats.itp_queries -
                     plain->second.stats.itp_queries);
      scatter << " (" << plain->second.stats.final_k << ","
              << inj->second.stats.final_k << "/"
              << plain->second.stats.itp_queries << ","
              << inj->second.stats.itp_queries << ")";
    }
    std::ostringstream d;
    d << dk.size() << " pairs, median dk=" << median(dk)
      << " median ditp=" << median(ditp);
    std::printf("    scatter (k_plain,k_inj/itp_plain,itp_inj):%s\n",
                scatter.str().c_str());
    criterion(8, "paired medians: dk <= 0 and ditp <= 0 for IMC_I vs IMC",
              !dk.empty() && median(dk) <= 0 && median(ditp) <= 0, d.str());
  }

  // ---- criterion 9: DF soundness and inductiveness on the corpus
  {
    int unsound = 0, uncertified = 0, nontrivial = 0;
    for (const auto& t : tasks) {
      if (!t.oracle_done) continue;
      lang::Program p = lang::parse(t.src);
      enc::TransitionSystem ts = enc::build_ts(p);
      oracle::ReachableSet rs = oracle::explore(p);
      df::IntervalEnv reach = oracle::hull(rs);
      df::SyncProvider prov(p, ts, 1, {});
      df::AuxiliaryInvariant inv = prov.snapshot();
      if (!inv.certified_inductive) ++uncertified;
      if (!reach.implies(inv.env)) ++unsound;
      if (!inv.is_trivial()) {
        ++nontrivial;
        // re-discharge both inductiveness conditions independently
        bool initiation =
            sat::solve(enc::implication_check(ts, ts.init, inv.formula))
                .status == sat::Status::Unsat;
        enc::TimedVariableMap tvm(ts, 1);
        std::vector<enc::QueryItem> items;
        items.push_back({inv.formula, enc::Binding::at(0), enc::Partition::A,
                         enc::ClauseOrigin::Invariant, -1});
        items.push_back({ts.trans_bb, enc::Binding::step(0), enc::Partition::A,
                         enc::ClauseOrigin::Trans, 0});
        items.push_back({fml::mk_not(inv.formula), enc::Binding::at(1),
                         enc::Partition::B, enc::ClauseOrigin::Invariant, -1});
        bool consecution = sat::solve(enc::build_query(tvm, items)).status ==
                           sat::Status::Unsat;
        if (!initiation || !consecution) ++uncertified;
      }
    }
    std::ostringstream d;
    d << nontrivial << " non-trivial invariants, " << unsound << " unsound, "
      << uncertified << " uncertified";
    criterion(9, "published invariants contain the hull and are inductive",
              nontrivial > 0 && unsound == 0 && uncertified == 0, d.str());
  }

  // ---- criterion 10: every FALSE verdict replays
  {
    int false_verdicts = 0, replay_failures = 0;
    for (const auto& t : tasks) {
      lang::Program p = lang::parse(t.src);
      for (const auto& [a, r] : t.runs) {
        if (r.verdict != Verdict::False) continue;
        ++false_verdicts;
        if (!r.counterexample.has_value() ||
            !lang::replay(p, *r.counterexample)) {
          ++replay_failures;
        }
      }
    }
    std::ostringstream d;
    d << false_verdicts << " FALSE verdicts, " << replay_failures
      << " replay failures";
    criterion(10, "every counterexample replays on the concrete semantics",
              false_verdicts > 0 && replay_failures == 0, d.str());
  }

  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
