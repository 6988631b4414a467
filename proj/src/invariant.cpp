#include "imcaug/df/invariant.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "imcaug/encoder/encode.hpp"
#include "imcaug/util/log.hpp"

namespace imcaug::df {

namespace {

sat::Status timed_solve(const enc::CnfInstance& cnf,
                        const sat::SolverOptions& opts, GateStats* stats) {
  sat::SolverOptions o = opts;
  o.log_proof = false;
  o.drat_path.clear();
  auto t0 = std::chrono::steady_clock::now();
  sat::SolveResult r = sat::solve(cnf, o);
  if (stats != nullptr) {
    stats->sat_queries += 1;
    stats->solver_time_ns +=
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now() - t0)
            .count();
  }
  return r.status;
}

AuxiliaryInvariant trivial_from_ts(const enc::TransitionSystem& ts) {
  AuxiliaryInvariant inv;
  inv.env = IntervalEnv::top_sized(ts.state_vars.size(),
                                   fml::width_mask(ts.width));
  inv.formula = fml::mk_true();
  inv.refinement_level = -1;
  inv.certified_inductive = true;
  return inv;
}

AuxiliaryInvariant make_candidate(const IntervalEnv& env,
                                  const lang::Program& p, int level) {
  AuxiliaryInvariant inv;
  inv.env = env;
  inv.formula = env.formula(p);
  inv.refinement_level = level;
  return inv;
}

}  // namespace

AuxiliaryInvariant trivial_invariant(const lang::Program& p) {
  AuxiliaryInvariant inv;
  inv.env = IntervalEnv::top(p);
  inv.formula = fml::mk_true();
  inv.refinement_level = -1;
  inv.certified_inductive = true;
  return inv;
}

AuxiliaryInvariant gate_inductive(const AuxiliaryInvariant& inv,
                                  const enc::TransitionSystem& ts,
                                  const sat::SolverOptions& solver_opts,
                                  GateStats* stats) {
  AuxiliaryInvariant out = inv;
  if (fml::is_true(inv.formula)) {
    out.certified_inductive = true;
    return out;
  }
  // initiation: I /\ not inv unsatisfiable
  enc::CnfInstance init_q = enc::implication_check(ts, ts.init, inv.formula);
  if (timed_solve(init_q, solver_opts, stats) != sat::Status::Unsat) {
    return trivial_from_ts(ts);
  }
  // consecution: inv /\ T /\ not inv' unsatisfiable
  enc::TimedVariableMap tvm(ts, 1);
  std::vector<enc::QueryItem> items;
  items.push_back({inv.formula, enc::Binding::at(0), enc::Partition::A,
                   enc::ClauseOrigin::Invariant, -1});
  items.push_back({ts.trans_bb, enc::Binding::step(0), enc::Partition::A,
                   enc::ClauseOrigin::Trans, 0});
  items.push_back({fml::mk_not(inv.formula), enc::Binding::at(1),
                   enc::Partition::B, enc::ClauseOrigin::Invariant, -1});
  enc::CnfInstance cons_q = enc::build_query(tvm, items);
  if (timed_solve(cons_q, solver_opts, stats) != sat::Status::Unsat) {
    return trivial_from_ts(ts);
  }
  out.certified_inductive = true;
  return out;
}

TopProvider::TopProvider(const lang::Program& p)
    : inv_(trivial_invariant(p)) {}

SyncProvider::SyncProvider(const lang::Program& p,
                           const enc::TransitionSystem& ts, int level,
                           const sat::SolverOptions& solver_opts,
                           GateStats* stats) {
  IntervalEnv env = IntervalEnv::top(p);
  for (int l = 0; l <= level; ++l) env = env.met(analyze(p, l));
  AuxiliaryInvariant cand = make_candidate(env, p, level);
  inv_ = gate_inductive(cand, ts, solver_opts, stats);
  log::info("df: level %d invariant %s%s", level, env.to_string(p).c_str(),
            inv_.is_trivial() ? " (trivial)" : "");
}

FileProvider::FileProvider(IntervalEnv env, const lang::Program& p,
                           const enc::TransitionSystem& ts,
                           const sat::SolverOptions& solver_opts,
                           GateStats* stats) {
  AuxiliaryInvariant cand = make_candidate(env, p, -1);
  inv_ = gate_inductive(cand, ts, solver_opts, stats);
}

AsyncProvider::AsyncProvider(const lang::Program& p,
                             const enc::TransitionSystem& ts, int max_level,
                             double budget_seconds,
                             const sat::SolverOptions& solver_opts)
    : program_(p), ts_(ts), solver_opts_(solver_opts) {
  candidate_ = IntervalEnv::top(p);
  current_ = trivial_invariant(p);
  worker_ = std::thread([this, max_level, budget_seconds] {
    auto t0 = std::chrono::steady_clock::now();
    IntervalEnv acc = IntervalEnv::top(program_);
    for (int l = 0; l <= max_level; ++l) {
      if (stop_.load()) return;
      if (budget_seconds > 0) {
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        if (elapsed > budget_seconds) return;
      }
      acc = acc.met(analyze(program_, l));
      std::lock_guard<std::mutex> guard(mutex_);
      candidate_ = acc;
      candidate_level_ = l;
      ++generation_;
    }
  });
}

AsyncProvider::~AsyncProvider() {
  stop_.store(true);
  if (worker_.joinable()) worker_.join();
}

AuxiliaryInvariant AsyncProvider::snapshot() {
  IntervalEnv cand;
  int level = -1;
  uint64_t gen = 0;
  {
    std::lock_guard<std::mutex> guard(mutex_);
    cand = candidate_;
    level = candidate_level_;
    gen = generation_;
  }
  if (gen == gated_generation_) return current_;
  AuxiliaryInvariant gated =
      gate_inductive(make_candidate(cand, program_, level), ts_, solver_opts_);
  gated_generation_ = gen;
  if (gated.certified_inductive && !gated.is_trivial()) {
    current_ = gated;  // worker publishes a meet chain, so this only tightens
  }
  return current_;
}

std::string dump_invariant(const IntervalEnv& env, const lang::Program& p) {
  std::ostringstream os;
  os << "# imcaug interval invariant\n";
  if (env.is_top(p.width)) {
    os << "true\n";
    return os.str();
  }
  for (size_t i = 0; i < p.vars.size(); ++i) {
    os << p.vars[i].name << " " << env.at(i).lo << " " << env.at(i).hi << "\n";
  }
  return os.str();
}

IntervalEnv parse_invariant_file(const std::string& text,
                                 const lang::Program& p) {
  IntervalEnv env = IntervalEnv::top(p);
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::istringstream ls(line);
    std::string name;
    ls >> name;
    if (name == "true") continue;
    uint64_t lo = 0, hi = 0;
    if (!(ls >> lo >> hi)) {
      throw std::runtime_error("invariant file: bad line: " + line);
    }
    int idx = p.var_index(name);
    if (idx < 0) {
      throw std::runtime_error("invariant file: unknown variable " + name);
    }
    if (lo > hi || hi > p.mask()) {
      throw std::runtime_error("invariant file: bad bounds for " + name);
    }
    env.at(static_cast<size_t>(idx)) = Interval{lo, hi};
  }
  return env;
}

}  // namespace imcaug::df
