#include "imcaug/encoder/timed_map.hpp"

#include <stdexcept>

#include "imcaug/encoder/transition.hpp"

namespace imcaug::enc {

TimedVariableMap::TimedVariableMap(const TransitionSystem& ts, int k)
    : k_(k), width_(ts.width) {
  for (const auto& [name, _] : ts.state_vars) names_.push_back(name);

  auto alloc = [this](unsigned width) {
    Block b{next_var_, width};
    next_var_ += static_cast<Var>(width);
    return b;
  };

  for (int t = 0; t <= k; ++t) {
    for (const auto& [name, width] : ts.state_vars) {
      Block b = alloc(width);
      state_blocks_.emplace(std::make_pair(name, t), b);
      state_block_list_.emplace_back(name, t, b.first);
    }
  }
  for (int t = 0; t < k; ++t) {
    for (const auto& occ : ts.trans_nondets) {
      trans_nondet_blocks_.emplace(
          std::make_pair(occ.index, t),
          alloc(ts.nondet_widths[static_cast<size_t>(occ.index)]));
    }
  }
  for (int t = 0; t <= k; ++t) {
    for (const auto& occ : ts.prop_nondets) {
      prop_nondet_blocks_.emplace(
          std::make_pair(occ.index, t),
          alloc(ts.nondet_widths[static_cast<size_t>(occ.index)]));
    }
  }
}

Var TimedVariableMap::state_bit(const std::string& name, int time,
                                unsigned bit) const {
  const Block& b = state_blocks_.at({name, time});
  if (bit >= b.width) throw std::logic_error("state_bit: bit out of range");
  return b.first + static_cast<Var>(bit);
}

Var TimedVariableMap::trans_nondet_bit(int occ_index, int time,
                                       unsigned bit) const {
  const Block& b = trans_nondet_blocks_.at({occ_index, time});
  if (bit >= b.width) throw std::logic_error("nondet bit out of range");
  return b.first + static_cast<Var>(bit);
}

Var TimedVariableMap::prop_nondet_bit(int occ_index, int time,
                                      unsigned bit) const {
  const Block& b = prop_nondet_blocks_.at({occ_index, time});
  if (bit >= b.width) throw std::logic_error("nondet bit out of range");
  return b.first + static_cast<Var>(bit);
}

bool TimedVariableMap::lookup_state_bit(Var v, std::string& name, int& time,
                                        unsigned& bit) const {
  for (const auto& [n, t, first] : state_block_list_) {
    if (v >= first && v < first + static_cast<Var>(width_)) {
      name = n;
      time = t;
      bit = static_cast<unsigned>(v - first);
      return true;
    }
  }
  return false;
}

}  // namespace imcaug::enc
