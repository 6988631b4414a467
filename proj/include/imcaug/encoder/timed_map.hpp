#ifndef IMCAUG_ENCODER_TIMED_MAP_HPP
#define IMCAUG_ENCODER_TIMED_MAP_HPP

#include <map>
#include <string>
#include <vector>

#include "imcaug/encoder/cnf.hpp"

namespace imcaug::enc {

struct TransitionSystem;

// CNF variable blocks for the timed copies of a transition system at a
// fixed unrolling bound k: state variables at times 0..k, the nondet
// inputs of each transition copy at times 0..k-1, and the nondet inputs
// of each property copy at times 0..k. Allocation is time-major and
// follows declaration order, so identical inputs produce identical maps.
// One map instance serves every query posed at its bound.
class TimedVariableMap {
 public:
  TimedVariableMap(const TransitionSystem& ts, int k);

  int k() const { return k_; }
  int base_vars() const { return next_var_; }

  // Bit `bit` of state variable `name` at time index `time`.
  Var state_bit(const std::string& name, int time, unsigned bit) const;

  // Bit of a nondet occurrence feeding the transition copy at `time`.
  Var trans_nondet_bit(int occ_index, int time, unsigned bit) const;

  // Bit of a nondet occurrence in the property copy at `time`.
  Var prop_nondet_bit(int occ_index, int time, unsigned bit) const;

  // Reverse lookup for interpolant lifting: if `v` is a state bit,
  // fills the out-parameters and returns true.
  bool lookup_state_bit(Var v, std::string& name, int& time,
                        unsigned& bit) const;

  const std::vector<std::string>& state_names() const { return names_; }
  unsigned width() const { return width_; }

 private:
  struct Block {
    Var first;
    unsigned width;
  };

  int k_;
  unsigned width_;
  std::vector<std::string> names_;
  std::map<std::pair<std::string, int>, Block> state_blocks_;
  std::map<std::pair<int, int>, Block> trans_nondet_blocks_;
  std::map<std::pair<int, int>, Block> prop_nondet_blocks_;
  std::vector<std::tuple<std::string, int, Var>> state_block_list_;
  Var next_var_ = 0;
};

}  // namespace imcaug::enc

#endif
