#include "imcaug/engine/engine.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "imcaug/lang/interp.hpp"
#include "imcaug/util/log.hpp"

namespace imcaug::engine {

namespace fml = imcaug::fml;

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::BMC: return "bmc";
    case Algo::IMC: return "imc";
    case Algo::IMC_F: return "imc-f";
    case Algo::IMC_I: return "imc-i";
  }
  return "?";
}

std::optional<Algo> algo_from_name(const std::string& name) {
  if (name == "bmc") return Algo::BMC;
  if (name == "imc") return Algo::IMC;
  if (name == "imc-f") return Algo::IMC_F;
  if (name == "imc-i") return Algo::IMC_I;
  return std::nullopt;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "TRUE";
    case Verdict::False: return "FALSE";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Serializes every solver call of one engine run and accumulates stats.
struct QueryRunner {
  const EngineConfig& cfg;
  EngineStats& stats;
  int dump_counter = 0;

  sat::SolverOptions options(bool proof) const {
    sat::SolverOptions o;
    o.seed = cfg.seed;
    o.conflict_budget = cfg.conflict_budget;
    o.log_proof = proof;
    return o;
  }

  sat::SolveResult solve(const enc::CnfInstance& cnf, bool proof,
                         const char* what) {
    if (cfg.dump_cnf) {
      std::string path = cfg.dump_dir + "/query_" +
                         std::to_string(dump_counter++) + "_" + what +
                         ".cnf";
      std::ofstream out(path);
      out << cnf.to_dimacs();
    }
    sat::SolveResult r = sat::solve(cnf, options(proof));
    stats.sat_queries += 1;
    stats.solver_time_s += r.stats.time_s;
    log::debug("solve %s: vars=%d clauses=%zu -> %s", what, cnf.var_count,
               cnf.clauses.size(),
               r.status == sat::Status::Sat
                   ? "SAT"
                   : (r.status == sat::Status::Unsat ? "UNSAT" : "BUDGET"));
    return r;
  }

  void absorb(const itp::CertifyStats& cs) {
    stats.sat_queries += cs.sat_queries;
    stats.solver_time_s += static_cast<double>(cs.solver_time_ns) * 1e-9;
  }
};

lang::NondetMap full_nondet_map(const lang::Program& p,
                                const lang::NondetMap& extracted) {
  lang::NondetMap out;
  for (const auto& occ : p.nondets) {
    auto it = extracted.find(occ.index);
    out[occ.index] = it == extracted.end() ? 0 : it->second;
  }
  return out;
}

// Decodes a satisfying BMC model into a violating run, truncated at the
// first time index whose property copy is violated.
lang::Trace extract_trace(const lang::Program& p,
                          const enc::TransitionSystem& ts,
                          const enc::TimedVariableMap& tvm,
                          const enc::Model& model, int k) {
  std::vector<lang::ConcreteState> states;
  for (int t = 0; t <= k; ++t) {
    states.push_back(enc::extract_state(model, tvm, t));
  }
  int violated = -1;
  lang::NondetMap exit_nd;
  int first = k == 0 ? 0 : 1;
  for (int i = first; i <= k; ++i) {
    lang::NondetMap pnd = full_nondet_map(
        p, enc::extract_prop_nondets(model, ts, tvm, i));
    if (!lang::eval_cond(p, states[static_cast<size_t>(i)], pnd) &&
        !lang::check_post(p, states[static_cast<size_t>(i)])) {
      violated = i;
      exit_nd = pnd;
      break;
    }
  }
  if (violated < 0) {
    throw std::logic_error("engine: satisfiable query has no violated copy");
  }
  lang::Trace trace;
  for (int t = 0; t < violated; ++t) {
    lang::NondetMap nd =
        full_nondet_map(p, enc::extract_trans_nondets(model, ts, tvm, t));
    // stutter copies (exit chosen, state held) are not program steps
    if (!lang::eval_cond(p, states[static_cast<size_t>(t)], nd)) {
      if (states[static_cast<size_t>(t)] != states[static_cast<size_t>(t + 1)]) {
        throw std::logic_error("engine: non-stuttering exit step in model");
      }
      continue;
    }
    trace.push_back({states[static_cast<size_t>(t)], std::move(nd)});
  }
  trace.push_back({states[static_cast<size_t>(violated)], exit_nd});
  if (!lang::replay(p, trace)) {
    throw std::logic_error("engine: extracted counterexample fails replay");
  }
  return trace;
}

void dump_interpolant(const itp::Interpolant& it, const char* tag) {
  std::fprintf(stderr, "[imcaug] interpolant #%d (k=%d)%s: %s\n", it.index,
               it.source_k, tag, fml::to_string(it.formula).c_str());
}

}  // namespace

bool fixed_point_check(const enc::TransitionSystem& ts,
                       const itp::Interpolant& it, fml::Formula g,
                       const df::AuxiliaryInvariant& inv, bool strengthened,
                       const sat::SolverOptions& opts,
                       itp::CertifyStats* stats) {
  fml::Formula lhs = strengthened ? fml::mk_and(inv.formula, it.formula)
                                  : it.formula;
  enc::CnfInstance q = enc::implication_check(ts, lhs, g);
  sat::SolverOptions o = opts;
  o.log_proof = false;
  auto t0 = Clock::now();
  sat::SolveResult r = sat::solve(q, o);
  if (stats != nullptr) {
    stats->sat_queries += 1;
    stats->solver_time_ns += static_cast<int64_t>(
        std::chrono::duration<double>(Clock::now() - t0).count() * 1e9);
  }
  return r.status == sat::Status::Unsat;  // budget counts as failed
}

itp::Interpolant strengthen_interpolant(const itp::Interpolant& it,
                                        const df::AuxiliaryInvariant& inv) {
  itp::Interpolant out = it;
  out.formula = fml::mk_and(inv.formula, it.formula);
  out.strengthened = true;
  return out;
}

bool certify_true_verdict(const VerdictReport& report,
                          const enc::TransitionSystem& ts,
                          const sat::SolverOptions& opts,
                          itp::CertifyStats* stats) {
  if (!report.certificate.has_value()) return false;
  const Certificate& cert = *report.certificate;
  sat::SolverOptions o = opts;
  o.log_proof = false;

  auto check_unsat = [&](const enc::CnfInstance& q) {
    auto t0 = Clock::now();
    sat::SolveResult r = sat::solve(q, o);
    if (stats != nullptr) {
      stats->sat_queries += 1;
      stats->solver_time_ns += static_cast<int64_t>(
          std::chrono::duration<double>(Clock::now() - t0).count() * 1e9);
    }
    return r.status == sat::Status::Unsat;
  };

  // initiation: I => G
  if (!check_unsat(enc::implication_check(ts, ts.init, cert.g))) return false;

  // relative consecution: inv /\ G /\ T => G'
  {
    enc::TimedVariableMap tvm(ts, 1);
    std::vector<enc::QueryItem> items;
    items.push_back({cert.inv, enc::Binding::at(0), enc::Partition::A,
                     enc::ClauseOrigin::Invariant, -1});
    items.push_back({cert.g, enc::Binding::at(0), enc::Partition::A,
                     enc::ClauseOrigin::Interpolant, -1});
    items.push_back({ts.trans_bb, enc::Binding::step(0), enc::Partition::A,
                     enc::ClauseOrigin::Trans, 0});
    items.push_back({fml::mk_not(cert.g), enc::Binding::at(1),
                     enc::Partition::B, enc::ClauseOrigin::Interpolant, -1});
    if (!check_unsat(enc::build_query(tvm, items))) return false;
  }

  // safety: G => P
  {
    enc::TimedVariableMap tvm(ts, 0);
    std::vector<enc::QueryItem> items;
    items.push_back({cert.g, enc::Binding::at(0), enc::Partition::A,
                     enc::ClauseOrigin::Interpolant, -1});
    items.push_back({fml::mk_not(ts.safe_bb), enc::Binding::property(0),
                     enc::Partition::B, enc::ClauseOrigin::Property, -1});
    if (!check_unsat(enc::build_query(tvm, items))) return false;
  }
  return true;
}

VerdictReport run(const lang::Program& p, const enc::TransitionSystem& ts,
                  const EngineConfig& cfg, df::InvariantProvider& inv_source) {
  auto t0 = Clock::now();
  VerdictReport report;
  QueryRunner runner{cfg, report.stats};

  auto finish = [&](Verdict v, const char* note = "") {
    report.verdict = v;
    report.note = note;
    report.stats.wall_time_s = seconds_since(t0);
    return report;
  };
  auto cpu_exhausted = [&] {
    return cfg.cpu_budget_s > 0 && seconds_since(t0) > cfg.cpu_budget_s;
  };

  // zero-step check: sat(I(s_0) /\ not P(s_0))
  {
    enc::TimedVariableMap tvm0(ts, 0);
    sat::SolveResult r =
        runner.solve(enc::zero_step_check(ts, tvm0), false, "zerostep");
    if (r.status == sat::Status::BudgetExhausted) {
      return finish(Verdict::Unknown, "solver budget exhausted (0-step)");
    }
    if (r.status == sat::Status::Sat) {
      report.counterexample = extract_trace(p, ts, tvm0, r.model, 0);
      return finish(Verdict::False);
    }
  }

  int k = 1;
  df::AuxiliaryInvariant inv = df::trivial_invariant(p);

  while (k <= cfg.k_max) {
    report.stats.final_k = k;
    if (cpu_exhausted()) {
      return finish(Verdict::Unknown, "cpu budget exhausted");
    }
    enc::TimedVariableMap tvm(ts, k);

    // BMC stage
    {
      enc::CnfInstance q = enc::bmc_formula(ts, ts.init_bb, k, tvm);
      sat::SolveResult r = runner.solve(q, false, "bmc");
      if (r.status == sat::Status::BudgetExhausted) {
        return finish(Verdict::Unknown, "solver budget exhausted (BMC)");
      }
      if (r.status == sat::Status::Sat) {
        report.counterexample = extract_trace(p, ts, tvm, r.model, k);
        return finish(Verdict::False);
      }
    }

    if (cfg.algo == Algo::BMC) {
      ++k;
      continue;
    }

    if (cfg.strengthen_fpc() || cfg.strengthen_itp()) {
      inv = inv_source.snapshot();
      log::debug("k=%d: auxiliary invariant: %s", k,
                 fml::to_string(inv.formula).c_str());
    }

    // interpolation stage: re-forms A from each new interpolant
    fml::Formula g = ts.init;
    fml::Formula start = ts.init_bb;
    enc::ClauseOrigin start_origin = enc::ClauseOrigin::Init;
    int itp_index = 0;

    while (true) {
      if (cpu_exhausted()) {
        return finish(Verdict::Unknown, "cpu budget exhausted");
      }
      enc::CnfInstance q = enc::bmc_formula(ts, start, k, tvm, start_origin);
      sat::SolveResult r = runner.solve(q, true, "itp-stage");
      if (r.status == sat::Status::BudgetExhausted) {
        return finish(Verdict::Unknown, "solver budget exhausted (query)");
      }
      if (r.status == sat::Status::Sat) break;  // unfold further

      itp::Interpolant it;
      {
        itp::CertifyStats cs;
        auto ti = Clock::now();
        try {
          it = itp::derive(r.proof, q, tvm, runner.options(false), &cs);
        } catch (const std::logic_error& e) {
          report.stats.itp_time_s += seconds_since(ti);
          report.stats.itp_queries += 1;
          runner.absorb(cs);
          return finish(Verdict::Unknown, e.what());
        }
        report.stats.itp_time_s += seconds_since(ti);
        report.stats.itp_queries += 1;
        runner.absorb(cs);
      }
      it.index = ++itp_index;
      report.itps_derived += 1;
      report.itps_certified += 1;  // derive throws on certificate failure
      if (cfg.dump_itp) dump_interpolant(it, "");

      if (cfg.strengthen_itp()) {
        itp::Interpolant st = strengthen_interpolant(it, inv);
        if (st.formula != it.formula) {
          if (cfg.check_certificates) {
            itp::CertifyStats cs;
            auto ti = Clock::now();
            bool ok = itp::certify(st, q, tvm, runner.options(false), &cs);
            report.stats.itp_time_s += seconds_since(ti);
            runner.absorb(cs);
            report.strengthened_rechecked += 1;
            if (!ok) {
              report.strengthened_recheck_failures += 1;
              return finish(Verdict::Unknown,
                            "strengthened interpolant failed recheck");
            }
          }
          it = st;
          if (cfg.dump_itp) dump_interpolant(it, " strengthened");
        }
      }

      itp::CertifyStats fps;
      bool fixed_point = fixed_point_check(ts, it, g, inv,
                                           cfg.strengthen_fpc(),
                                           runner.options(false), &fps);
      runner.absorb(fps);
      if (fixed_point) {
        Certificate cert;
        cert.g = fml::mk_or(g, it.formula);
        cert.inv = inv.formula;
        cert.itp_count = itp_index;
        report.certificate = cert;
        if (cfg.check_certificates) {
          itp::CertifyStats cs;
          report.certificate->checks_passed =
              certify_true_verdict(report, ts, runner.options(false), &cs);
          runner.absorb(cs);
          if (!report.certificate->checks_passed) {
            return finish(Verdict::Unknown, "TRUE certificate failed recheck");
          }
        }
        log::info("k=%d: fixed point after %d interpolants", k, itp_index);
        return finish(Verdict::True);
      }

      g = fml::mk_or(g, it.formula);
      start = it.formula;
      start_origin = enc::ClauseOrigin::Interpolant;
    }
    ++k;
  }
  return finish(Verdict::Unknown, "unrolling bound exhausted");
}

}  // namespace imcaug::engine
