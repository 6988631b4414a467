#ifndef IMCAUG_ENCODER_ENCODE_HPP
#define IMCAUG_ENCODER_ENCODE_HPP

#include <vector>

#include "imcaug/encoder/cnf.hpp"
#include "imcaug/encoder/timed_map.hpp"
#include "imcaug/encoder/transition.hpp"
#include "imcaug/formula/formula.hpp"
#include "imcaug/lang/ast.hpp"

namespace imcaug::enc {

// How leaf names of a formula map to CNF blocks: plain state names bind
// at time `pre`, primed names at time `post`, and "?i" nondet names to
// the transition or property block at `nd_time`.
struct Binding {
  enum class NdScope : uint8_t { None, Trans, Prop };
  int pre = 0;
  int post = -1;
  NdScope scope = NdScope::None;
  int nd_time = -1;

  static Binding at(int time) { return Binding{time, -1, NdScope::None, -1}; }
  static Binding step(int time) {
    return Binding{time, time + 1, NdScope::Trans, time};
  }
  static Binding property(int time) {
    return Binding{time, -1, NdScope::Prop, time};
  }
};

struct QueryItem {
  fml::Formula f;  // boolean formula; bit-blasted on the fly if needed
  Binding binding;
  Partition part = Partition::A;
  ClauseOrigin origin = ClauseOrigin::Init;
  int step = -1;
};

// Tseitin-encodes formulas against a TimedVariableMap. Auxiliary
// variables are allocated above the map's base block (or above an
// explicit floor when extending an existing instance) and inherit the
// partition label of the formula they define; the label is part of the
// memo key, so A and B never share an auxiliary variable. Emitted
// clauses are sorted, duplicate-free and never tautological.
class CnfBuilder {
 public:
  explicit CnfBuilder(const TimedVariableMap& tvm);
  CnfBuilder(const TimedVariableMap& tvm, int first_free_var);

  void assert_formula(fml::Formula f, const Binding& b, Partition part,
                      ClauseOrigin origin, int step = -1);
  // One clause: disjunction of the given formulas, each under its own
  // binding (the property disjunct of a BMC query).
  void assert_disjunction(const std::vector<std::pair<fml::Formula, Binding>>& ds,
                          Partition part, ClauseOrigin origin);
  void add_raw_clause(TaggedClause c);

  CnfInstance take();

 private:
  Lit literal(fml::Formula f, const Binding& b, Partition part,
              ClauseOrigin origin, int step);
  Var resolve_leaf(const fml::Node& leaf, const Binding& b) const;
  void emit(std::vector<Lit> lits, Partition part, ClauseOrigin origin,
            int step);

  struct MemoKey {
    const void* node;
    int pre, post, nd_time;
    uint8_t scope, part;
    bool operator==(const MemoKey&) const = default;
  };
  struct MemoHash {
    size_t operator()(const MemoKey& k) const;
  };

  const TimedVariableMap& tvm_;
  CnfInstance out_;
  std::unordered_map<MemoKey, Lit, MemoHash> memo_;
};

CnfInstance build_query(const TimedVariableMap& tvm,
                        const std::vector<QueryItem>& items);

// BMC query at bound k (Eq. 1 shape): start(s_0) and the k transition
// copies, with the disjunction of negated property copies at times 1..k.
// start(s_0) and T(s_0,s_1) are labeled A, everything else B.
CnfInstance bmc_formula(const TransitionSystem& ts, fml::Formula start, int k,
                        const TimedVariableMap& tvm,
                        ClauseOrigin start_origin = ClauseOrigin::Init);

// I(s_0) and not P(s_0).
CnfInstance zero_step_check(const TransitionSystem& ts,
                            const TimedVariableMap& tvm);

// lhs(s) and not rhs(s) at one time index; unsatisfiable iff lhs => rhs.
CnfInstance implication_check(const TransitionSystem& ts, fml::Formula lhs,
                              fml::Formula rhs);

// --- model decoding

lang::ConcreteState extract_state(const Model& model,
                                  const TimedVariableMap& tvm, int time);

// Nondet values feeding the transition copy at `time`.
lang::NondetMap extract_trans_nondets(const Model& model,
                                      const TransitionSystem& ts,
                                      const TimedVariableMap& tvm, int time);

// Nondet values of the property copy at `time`.
lang::NondetMap extract_prop_nondets(const Model& model,
                                     const TransitionSystem& ts,
                                     const TimedVariableMap& tvm, int time);

}  // namespace imcaug::enc

#endif
