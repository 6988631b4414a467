#include "imcaug/sat/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "imcaug/util/rng.hpp"

namespace imcaug::sat {

using enc::Lit;
using enc::Var;
using enc::lit_flip;
using enc::lit_neg;
using enc::lit_var;
using enc::mk_lit;

namespace {

enum : uint8_t { kUndef = 0, kTrue = 1, kFalse = 2 };

// Max-heap over (activity, jitter) with position tracking.
class VarHeap {
 public:
  VarHeap(const std::vector<double>& act, const std::vector<uint64_t>& jit)
      : act_(act), jit_(jit) {}

  void grow(size_t n) { pos_.resize(n, -1); }

  bool contains(Var v) const { return pos_[static_cast<size_t>(v)] >= 0; }
  bool empty() const { return heap_.empty(); }

  void insert(Var v) {
    if (contains(v)) return;
    pos_[static_cast<size_t>(v)] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    sift_up(static_cast<int>(heap_.size()) - 1);
  }

  void increased(Var v) {
    if (contains(v)) sift_up(pos_[static_cast<size_t>(v)]);
  }

  Var pop() {
    Var top = heap_.front();
    swap_at(0, static_cast<int>(heap_.size()) - 1);
    pos_[static_cast<size_t>(top)] = -1;
    heap_.pop_back();
    if (!heap_.empty()) sift_down(0);
    return top;
  }

 private:
  bool before(Var a, Var b) const {
    size_t ia = static_cast<size_t>(a), ib = static_cast<size_t>(b);
    if (act_[ia] != act_[ib]) return act_[ia] > act_[ib];
    return jit_[ia] > jit_[ib];
  }

  void swap_at(int i, int j) {
    std::swap(heap_[static_cast<size_t>(i)], heap_[static_cast<size_t>(j)]);
    pos_[static_cast<size_t>(heap_[static_cast<size_t>(i)])] = i;
    pos_[static_cast<size_t>(heap_[static_cast<size_t>(j)])] = j;
  }

  void sift_up(int i) {
    while (i > 0) {
      int parent = (i - 1) / 2;
      if (!before(heap_[static_cast<size_t>(i)],
                  heap_[static_cast<size_t>(parent)]))
        break;
      swap_at(i, parent);
      i = parent;
    }
  }

  void sift_down(int i) {
    const int n = static_cast<int>(heap_.size());
    while (true) {
      int l = 2 * i + 1, r = 2 * i + 2, best = i;
      if (l < n && before(heap_[static_cast<size_t>(l)],
                          heap_[static_cast<size_t>(best)]))
        best = l;
      if (r < n && before(heap_[static_cast<size_t>(r)],
                          heap_[static_cast<size_t>(best)]))
        best = r;
      if (best == i) break;
      swap_at(i, best);
      i = best;
    }
  }

  const std::vector<double>& act_;
  const std::vector<uint64_t>& jit_;
  std::vector<Var> heap_;
  std::vector<int> pos_;
};

int64_t luby(int64_t x) {
  // Luby sequence, 0-based: 1 1 2 1 1 2 4 ...
  int64_t size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return 1LL << seq;
}

struct Chain {
  int32_t start = -1;
  std::vector<std::pair<Var, int32_t>> steps;
};

class Solver {
 public:
  Solver(const enc::CnfInstance& cnf, const SolverOptions& opts)
      : cnf_(cnf), opts_(opts), rng_(opts.seed * 0x9e3779b97f4a7c15ULL + 1),
        heap_(activity_, jitter_) {
    nvars_ = cnf.var_count;
    assigns_.resize(static_cast<size_t>(nvars_), kUndef);
    level_.resize(static_cast<size_t>(nvars_), 0);
    reason_.resize(static_cast<size_t>(nvars_), -1);
    activity_.resize(static_cast<size_t>(nvars_), 0.0);
    jitter_.resize(static_cast<size_t>(nvars_));
    phase_.resize(static_cast<size_t>(nvars_), 0);
    seen_.resize(static_cast<size_t>(nvars_), 0);
    watches_.resize(2 * static_cast<size_t>(nvars_));
    heap_.grow(static_cast<size_t>(nvars_));
    for (Var v = 0; v < nvars_; ++v) {
      jitter_[static_cast<size_t>(v)] = rng_.next();
      phase_[static_cast<size_t>(v)] = static_cast<uint8_t>(rng_.next() & 1);
      heap_.insert(v);
    }
    if (!opts.drat_path.empty()) {
      drat_ = std::fopen(opts.drat_path.c_str(), "w");
    }
  }

  ~Solver() {
    if (drat_) std::fclose(drat_);
  }

  SolveResult run() {
    auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    res.status = search();
    if (res.status == Status::Sat) {
      res.model.assign(static_cast<size_t>(nvars_), 0);
      for (Var v = 0; v < nvars_; ++v) {
        res.model[static_cast<size_t>(v)] =
            assigns_[static_cast<size_t>(v)] == kTrue ? 1 : 0;
      }
    } else if (res.status == Status::Unsat && opts_.log_proof) {
      res.proof = build_proof();
    }
    res.stats = stats_;
    res.stats.time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return res;
  }

 private:
  uint8_t value(Lit l) const {
    uint8_t v = assigns_[static_cast<size_t>(lit_var(l))];
    if (v == kUndef) return kUndef;
    return (v == kTrue) != lit_neg(l) ? kTrue : kFalse;
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, int32_t reason) {
    Var v = lit_var(l);
    assigns_[static_cast<size_t>(v)] = lit_neg(l) ? kFalse : kTrue;
    level_[static_cast<size_t>(v)] = decision_level();
    reason_[static_cast<size_t>(v)] = reason;
    trail_.push_back(l);
    ++stats_.propagations;
  }

  // Loads input clauses; returns an input clause id on immediate
  // top-level conflict (empty clause or contradicting unit), else -1.
  int32_t load_input() {
    clauses_.reserve(cnf_.clauses.size());
    for (size_t i = 0; i < cnf_.clauses.size(); ++i) {
      const auto& lits = cnf_.clauses[i].lits;
      int32_t cid = static_cast<int32_t>(clauses_.size());
      clauses_.push_back(lits);
      if (lits.empty()) return cid;
      if (lits.size() == 1) {
        if (value(lits[0]) == kFalse) return cid;
        if (value(lits[0]) == kUndef) enqueue(lits[0], cid);
      } else {
        watch(cid);
      }
    }
    return -1;
  }

  void watch(int32_t cid) {
    const auto& c = clauses_[static_cast<size_t>(cid)];
    watches_[static_cast<size_t>(lit_flip(c[0]))].push_back(cid);
    watches_[static_cast<size_t>(lit_flip(c[1]))].push_back(cid);
  }

  // Standard two-watched-literal propagation; returns a conflicting
  // clause id or -1.
  int32_t propagate() {
    while (qhead_ < trail_.size()) {
      Lit p = trail_[qhead_++];
      auto& ws = watches_[static_cast<size_t>(p)];
      size_t keep = 0;
      for (size_t wi = 0; wi < ws.size(); ++wi) {
        int32_t cid = ws[wi];
        auto& c = clauses_[static_cast<size_t>(cid)];
        Lit false_lit = lit_flip(p);
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        // c[1] == false_lit now
        if (value(c[0]) == kTrue) {
          ws[keep++] = cid;
          continue;
        }
        bool moved = false;
        for (size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) != kFalse) {
            std::swap(c[1], c[k]);
            watches_[static_cast<size_t>(lit_flip(c[1]))].push_back(cid);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = cid;
        if (value(c[0]) == kFalse) {
          // conflict: keep remaining watchers, reset propagation queue
          for (size_t k = wi + 1; k < ws.size(); ++k) ws[keep++] = ws[k];
          ws.resize(keep);
          qhead_ = trail_.size();
          return cid;
        }
        enqueue(c[0], cid);
      }
      ws.resize(keep);
    }
    return -1;
  }

  void bump(Var v) {
    activity_[static_cast<size_t>(v)] += var_inc_;
    if (activity_[static_cast<size_t>(v)] > 1e100) {
      for (Var u = 0; u < nvars_; ++u) activity_[static_cast<size_t>(u)] *= 1e-100;
      var_inc_ *= 1e-100;
    }
    heap_.increased(v);
  }

  // 1-UIP conflict analysis. Level-0 literals are kept in the learned
  // clause so the recorded resolution chain reproduces it exactly.
  void analyze(int32_t confl, std::vector<Lit>& learnt, int& bt_level,
               Chain& chain) {
    learnt.clear();
    learnt.push_back(0);  // slot for the asserting literal
    chain.start = confl;
    chain.steps.clear();

    int counter = 0;
    Lit p = -1;
    size_t index = trail_.size();

    do {
      const auto& c = clauses_[static_cast<size_t>(confl)];
      for (Lit q : c) {
        if (p != -1 && q == p) continue;
        Var v = lit_var(q);
        if (!seen_[static_cast<size_t>(v)]) {
          seen_[static_cast<size_t>(v)] = 1;
          bump(v);
          if (level_[static_cast<size_t>(v)] == decision_level()) {
            ++counter;
          } else {
            learnt.push_back(q);
          }
        }
      }
      // pick the next current-level literal to resolve on
      while (!seen_[static_cast<size_t>(lit_var(trail_[index - 1]))]) --index;
      --index;
      Lit asserting = trail_[index];
      Var av = lit_var(asserting);
      seen_[static_cast<size_t>(av)] = 0;
      --counter;
      if (counter > 0) {
        confl = reason_[static_cast<size_t>(av)];
        assert(confl >= 0);
        p = asserting;
        chain.steps.emplace_back(av, confl);
      } else {
        learnt[0] = lit_flip(asserting);
      }
    } while (counter > 0);

    for (size_t i = 1; i < learnt.size(); ++i) {
      seen_[static_cast<size_t>(lit_var(learnt[i]))] = 0;
    }

    // backjump level: highest level among the non-asserting literals
    bt_level = 0;
    size_t max_i = 1;
    for (size_t i = 1; i < learnt.size(); ++i) {
      int lv = level_[static_cast<size_t>(lit_var(learnt[i]))];
      if (lv > bt_level) {
        bt_level = lv;
        max_i = i;
      }
    }
    if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  }

  void backtrack(int target_level) {
    if (decision_level() <= target_level) return;
    size_t lim = trail_lim_[static_cast<size_t>(target_level)];
    for (size_t i = trail_.size(); i-- > lim;) {
      Var v = lit_var(trail_[i]);
      phase_[static_cast<size_t>(v)] =
          assigns_[static_cast<size_t>(v)] == kTrue ? 1 : 0;
      assigns_[static_cast<size_t>(v)] = kUndef;
      reason_[static_cast<size_t>(v)] = -1;
      heap_.insert(v);
    }
    trail_.resize(lim);
    trail_lim_.resize(static_cast<size_t>(target_level));
    qhead_ = trail_.size();
  }

  int32_t add_learnt(const std::vector<Lit>& lits, Chain chain) {
    int32_t cid = static_cast<int32_t>(clauses_.size());
    clauses_.push_back(lits);
    chains_.emplace_back(std::move(chain));
    if (lits.size() >= 2) watch(cid);
    if (drat_) {
      for (Lit l : lits) std::fprintf(drat_, "%d ", enc::lit_dimacs(l));
      std::fprintf(drat_, "0\n");
    }
    return cid;
  }

  // Resolution chain deriving the empty clause from a conflict at
  // decision level 0: every literal of the working clause is falsified
  // at level 0 and gets resolved with its reason, in trail-reverse order.
  void build_final_chain(int32_t confl) {
    final_chain_.start = confl;
    final_chain_.steps.clear();
    int marked = 0;
    for (Lit q : clauses_[static_cast<size_t>(confl)]) {
      if (!seen_[static_cast<size_t>(lit_var(q))]) {
        seen_[static_cast<size_t>(lit_var(q))] = 1;
        ++marked;
      }
    }
    for (size_t i = trail_.size(); i-- > 0 && marked > 0;) {
      Var v = lit_var(trail_[i]);
      if (!seen_[static_cast<size_t>(v)]) continue;
      seen_[static_cast<size_t>(v)] = 0;
      --marked;
      int32_t r = reason_[static_cast<size_t>(v)];
      assert(r >= 0 && "level-0 assignment without reason");
      final_chain_.steps.emplace_back(v, r);
      for (Lit q : clauses_[static_cast<size_t>(r)]) {
        if (lit_var(q) == v) continue;
        if (!seen_[static_cast<size_t>(lit_var(q))]) {
          seen_[static_cast<size_t>(lit_var(q))] = 1;
          ++marked;
        }
      }
    }
    assert(marked == 0);
    have_final_chain_ = true;
    if (drat_) std::fprintf(drat_, "0\n");
  }

  Status search() {
    int32_t confl = load_input();
    if (confl >= 0) {
      final_chain_.start = confl;
      // a contradicted unit still needs its complement resolved away
      if (!clauses_[static_cast<size_t>(confl)].empty()) {
        build_final_chain(confl);
      } else {
        have_final_chain_ = true;
      }
      return Status::Unsat;
    }

    int64_t restart_count = 0;
    int64_t restart_limit = 64 * luby(restart_count++);
    int64_t conflicts_since_restart = 0;
    std::vector<Lit> learnt;
    Chain chain;

    while (true) {
      confl = propagate();
      if (confl >= 0) {
        ++stats_.conflicts;
        ++conflicts_since_restart;
        if (decision_level() == 0) {
          build_final_chain(confl);
          return Status::Unsat;
        }
        int bt_level = 0;
        analyze(confl, learnt, bt_level, chain);
        backtrack(bt_level);
        int32_t cid = add_learnt(learnt, std::move(chain));
        chain = Chain{};
        enqueue(learnt[0], cid);
        var_inc_ /= 0.95;
        if (opts_.conflict_budget > 0 &&
            stats_.conflicts >= opts_.conflict_budget) {
          return Status::BudgetExhausted;
        }
      } else {
        if (conflicts_since_restart >= restart_limit) {
          conflicts_since_restart = 0;
          restart_limit = 64 * luby(restart_count++);
          backtrack(0);
          continue;
        }
        // pick a branching variable
        Var next = -1;
        while (!heap_.empty()) {
          Var v = heap_.pop();
          if (assigns_[static_cast<size_t>(v)] == kUndef) {
            next = v;
            break;
          }
        }
        if (next < 0) return Status::Sat;
        ++stats_.decisions;
        trail_lim_.push_back(trail_.size());
        enqueue(mk_lit(next, phase_[static_cast<size_t>(next)] == 0), -1);
      }
    }
  }

  // --- proof reconstruction (trimming from the empty clause)

  static std::vector<Lit> resolve(const std::vector<Lit>& c1,
                                  const std::vector<Lit>& c2, Var pivot) {
    std::vector<Lit> out;
    out.reserve(c1.size() + c2.size());
    bool saw1 = false, saw2 = false;
    for (Lit l : c1) {
      if (lit_var(l) == pivot) { saw1 = true; continue; }
      out.push_back(l);
    }
    for (Lit l : c2) {
      if (lit_var(l) == pivot) { saw2 = true; continue; }
      out.push_back(l);
    }
    if (!saw1 || !saw2) {
      throw std::logic_error("proof: pivot missing from an antecedent");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (size_t i = 0; i + 1 < out.size(); ++i) {
      if (lit_var(out[i]) == lit_var(out[i + 1])) {
        throw std::logic_error("proof: tautological resolvent");
      }
    }
    return out;
  }

  ProofLog build_proof() {
    assert(have_final_chain_);
    const int32_t num_inputs = static_cast<int32_t>(cnf_.clauses.size());

    // collect the clause ids the refutation actually uses
    std::vector<uint8_t> needed(clauses_.size(), 0);
    std::vector<int32_t> work;
    auto need = [&](int32_t cid) {
      if (!needed[static_cast<size_t>(cid)]) {
        needed[static_cast<size_t>(cid)] = 1;
        if (cid >= num_inputs) work.push_back(cid);
      }
    };
    need(final_chain_.start);
    for (auto& [pv, cid] : final_chain_.steps) need(cid);
    while (!work.empty()) {
      int32_t cid = work.back();
      work.pop_back();
      const Chain& ch = chains_[static_cast<size_t>(cid - num_inputs)];
      need(ch.start);
      for (auto& [pv, rcid] : ch.steps) need(rcid);
    }

    ProofLog proof;
    std::vector<int32_t> node_of(clauses_.size(), -1);

    // Propagation swaps literals inside stored clauses, so leaves copy
    // the pristine input and learned clauses are compared as sets.
    auto add_leaf = [&](int32_t cid) {
      ProofLog::Node n;
      n.clause = cnf_.clauses[static_cast<size_t>(cid)].lits;
      n.input_index = cid;
      proof.nodes.push_back(std::move(n));
      node_of[static_cast<size_t>(cid)] =
          static_cast<int32_t>(proof.nodes.size()) - 1;
    };

    // expand a chain into binary resolution nodes; returns the final node
    auto expand = [&](const Chain& ch) -> int32_t {
      int32_t cur = node_of[static_cast<size_t>(ch.start)];
      for (auto& [pivot, rcid] : ch.steps) {
        int32_t rnode = node_of[static_cast<size_t>(rcid)];
        ProofLog::Node n;
        n.clause = resolve(proof.nodes[static_cast<size_t>(cur)].clause,
                           proof.nodes[static_cast<size_t>(rnode)].clause,
                           pivot);
        n.left = cur;
        n.right = rnode;
        n.pivot = pivot;
        proof.nodes.push_back(std::move(n));
        cur = static_cast<int32_t>(proof.nodes.size()) - 1;
      }
      return cur;
    };

    // materialize in ascending clause id order; chains only refer down
    for (int32_t cid = 0; cid < static_cast<int32_t>(clauses_.size()); ++cid) {
      if (!needed[static_cast<size_t>(cid)]) continue;
      if (cid < num_inputs) {
        add_leaf(cid);
      } else {
        const Chain& ch = chains_[static_cast<size_t>(cid - num_inputs)];
        int32_t node = expand(ch);
        std::vector<Lit> stored = clauses_[static_cast<size_t>(cid)];
        std::sort(stored.begin(), stored.end());
        if (proof.nodes[static_cast<size_t>(node)].clause != stored) {
          throw std::logic_error("proof: chain does not rebuild its clause");
        }
        node_of[static_cast<size_t>(cid)] = node;
      }
    }

    proof.root = expand(final_chain_);
    if (!proof.nodes[static_cast<size_t>(proof.root)].clause.empty()) {
      throw std::logic_error("proof: root clause is not empty");
    }
    return proof;
  }

  const enc::CnfInstance& cnf_;
  const SolverOptions& opts_;
  Rng rng_;

  Var nvars_ = 0;
  std::vector<std::vector<Lit>> clauses_;  // inputs first, then learned
  std::vector<Chain> chains_;              // aligned with learned clauses
  Chain final_chain_;
  bool have_final_chain_ = false;

  std::vector<uint8_t> assigns_;
  std::vector<int> level_;
  std::vector<int32_t> reason_;
  std::vector<Lit> trail_;
  std::vector<size_t> trail_lim_;
  size_t qhead_ = 0;

  std::vector<double> activity_;
  std::vector<uint64_t> jitter_;
  std::vector<uint8_t> phase_;
  std::vector<uint8_t> seen_;
  double var_inc_ = 1.0;
  VarHeap heap_;
  std::vector<std::vector<int32_t>> watches_;

  SolveStats stats_;
  std::FILE* drat_ = nullptr;
};

}  // namespace

SolveResult solve(const enc::CnfInstance& cnf, const SolverOptions& opts) {
  Solver solver(cnf, opts);
  return solver.run();
}

bool check_proof(const ProofLog& proof, const enc::CnfInstance& cnf) {
  if (proof.nodes.empty() || proof.root < 0 ||
      proof.root >= static_cast<int32_t>(proof.nodes.size())) {
    return false;
  }
  for (size_t i = 0; i < proof.nodes.size(); ++i) {
    const auto& n = proof.nodes[i];
    if (n.is_leaf()) {
      if (n.input_index < 0 ||
          n.input_index >= static_cast<int32_t>(cnf.clauses.size())) {
        return false;
      }
      if (n.clause != cnf.clauses[static_cast<size_t>(n.input_index)].lits) {
        return false;
      }
      continue;
    }
    if (n.left >= static_cast<int32_t>(i) ||
        n.right >= static_cast<int32_t>(i) || n.right < 0 || n.pivot < 0) {
      return false;
    }
    const auto& cl = proof.nodes[static_cast<size_t>(n.left)].clause;
    const auto& cr = proof.nodes[static_cast<size_t>(n.right)].clause;
    bool pos_l = std::binary_search(cl.begin(), cl.end(),
                                    enc::mk_lit(n.pivot, false));
    bool neg_l = std::binary_search(cl.begin(), cl.end(),
                                    enc::mk_lit(n.pivot, true));
    bool pos_r = std::binary_search(cr.begin(), cr.end(),
                                    enc::mk_lit(n.pivot, false));
    bool neg_r = std::binary_search(cr.begin(), cr.end(),
                                    enc::mk_lit(n.pivot, true));
    if (!((pos_l && neg_r) || (neg_l && pos_r))) return false;
    std::vector<Lit> expect;
    for (Lit l : cl) {
      if (lit_var(l) != n.pivot) expect.push_back(l);
    }
    for (Lit l : cr) {
      if (lit_var(l) != n.pivot) expect.push_back(l);
    }
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
    if (expect != n.clause) return false;
  }
  return proof.nodes[static_cast<size_t>(proof.root)].clause.empty();
}

}  // namespace imcaug::sat
