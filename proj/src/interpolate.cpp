#include "imcaug/itp/interpolate.hpp"

#include <chrono>
#include <stdexcept>

namespace imcaug::itp {

namespace fml = imcaug::fml;
using enc::Lit;
using enc::Partition;
using enc::Var;

namespace {

enum : uint8_t { kInA = 1, kInB = 2 };

std::vector<uint8_t> classify_vars(const enc::CnfInstance& cnf) {
  std::vector<uint8_t> occ(static_cast<size_t>(cnf.var_count), 0);
  for (const auto& c : cnf.clauses) {
    uint8_t bit = c.part == Partition::A ? kInA : kInB;
    for (Lit l : c.lits) occ[static_cast<size_t>(enc::lit_var(l))] |= bit;
  }
  return occ;
}

fml::Formula lift_literal(Lit l, const enc::TimedVariableMap& tvm) {
  std::string name;
  int time = 0;
  unsigned bit = 0;
  if (!tvm.lookup_state_bit(enc::lit_var(l), name, time, bit) || time != 1) {
    throw std::logic_error(
        "interpolation: shared variable is not a frontier state bit");
  }
  fml::Formula f = fml::mk_bit(name, bit);
  return enc::lit_neg(l) ? fml::mk_not(f) : f;
}

sat::Status timed_solve(const enc::CnfInstance& cnf,
                        const sat::SolverOptions& opts, CertifyStats* stats) {
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

}  // namespace

Interpolant derive(const sat::ProofLog& proof, const enc::CnfInstance& cnf,
                   const enc::TimedVariableMap& tvm,
                   const sat::SolverOptions& solver_opts,
                   CertifyStats* stats) {
  if (!sat::check_proof(proof, cnf)) {
    throw std::logic_error("interpolation: malformed resolution proof");
  }
  std::vector<uint8_t> occ = classify_vars(cnf);

  std::vector<fml::Formula> partial(proof.nodes.size(), nullptr);
  for (size_t i = 0; i < proof.nodes.size(); ++i) {
    const auto& n = proof.nodes[i];
    if (n.is_leaf()) {
      const auto& input = cnf.clauses[static_cast<size_t>(n.input_index)];
      if (input.part == Partition::B) {
        partial[i] = fml::mk_true();
      } else {
        fml::Formula acc = fml::mk_false();
        for (Lit l : n.clause) {
          uint8_t cls = occ[static_cast<size_t>(enc::lit_var(l))];
          if (cls == (kInA | kInB)) {
            acc = fml::mk_or(acc, lift_literal(l, tvm));
          }
        }
        partial[i] = acc;
      }
    } else {
      fml::Formula l = partial[static_cast<size_t>(n.left)];
      fml::Formula r = partial[static_cast<size_t>(n.right)];
      bool a_local = occ[static_cast<size_t>(n.pivot)] == kInA;
      partial[i] = a_local ? fml::mk_or(l, r) : fml::mk_and(l, r);
    }
  }

  Interpolant itp;
  itp.formula = partial[static_cast<size_t>(proof.root)];
  itp.source_k = tvm.k();
  if (!certify(itp, cnf, tvm, solver_opts, stats)) {
    throw std::logic_error(
        "interpolation: derived interpolant failed its Craig certificate");
  }
  return itp;
}

bool certify(const Interpolant& itp, const enc::CnfInstance& cnf,
             const enc::TimedVariableMap& tvm,
             const sat::SolverOptions& solver_opts, CertifyStats* stats) {
  // vocabulary: only bare state-variable names
  for (const auto& name : fml::free_names(itp.formula)) {
    bool ok = false;
    for (const auto& sv : tvm.state_names()) {
      if (name == sv) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }

  // A /\ not itp
  {
    enc::CnfBuilder builder(tvm, cnf.var_count);
    for (const auto& c : cnf.clauses) {
      if (c.part == Partition::A) builder.add_raw_clause(c);
    }
    builder.assert_formula(fml::mk_not(itp.formula), enc::Binding::at(1),
                           Partition::B, enc::ClauseOrigin::Interpolant);
    if (timed_solve(builder.take(), solver_opts, stats) != sat::Status::Unsat) {
      return false;
    }
  }
  // itp /\ B
  {
    enc::CnfBuilder builder(tvm, cnf.var_count);
    for (const auto& c : cnf.clauses) {
      if (c.part == Partition::B) builder.add_raw_clause(c);
    }
    builder.assert_formula(itp.formula, enc::Binding::at(1), Partition::A,
                           enc::ClauseOrigin::Interpolant);
    if (timed_solve(builder.take(), solver_opts, stats) != sat::Status::Unsat) {
      return false;
    }
  }
  return true;
}

}  // namespace imcaug::itp
