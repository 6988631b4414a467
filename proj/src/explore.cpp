#include "imcaug/oracle/explore.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "imcaug/lang/interp.hpp"

namespace imcaug::oracle {

namespace {

uint64_t pack(const lang::ConcreteState& s, unsigned width) {
  uint64_t key = 0;
  for (uint64_t v : s) key = (key << width) | v;
  return key;
}

// Odometer over the value domains of a fixed occurrence list.
struct TupleIter {
  std::vector<int> indices;
  std::vector<uint64_t> domains;
  std::vector<uint64_t> values;
  bool first = true;

  void add(int index, uint64_t domain) {
    indices.push_back(index);
    domains.push_back(domain);
    values.push_back(0);
  }

  uint64_t count() const {
    uint64_t n = 1;
    for (uint64_t d : domains) n *= d;
    return n;
  }

  bool next() {
    if (first) {
      first = false;
      return true;
    }
    for (size_t i = 0; i < values.size(); ++i) {
      if (++values[i] < domains[i]) return true;
      values[i] = 0;
    }
    return false;
  }

  void fill(lang::NondetMap& m) const {
    for (size_t i = 0; i < values.size(); ++i) m[indices[i]] = values[i];
  }

  void reset() {
    first = true;
    std::fill(values.begin(), values.end(), 0);
  }
};

}  // namespace

ReachableSet explore(const lang::Program& p, const ExploreLimits& limits) {
  ReachableSet rs;
  const unsigned width = p.width;
  const uint64_t bits = static_cast<uint64_t>(width) * p.vars.size();
  if (bits > 63 || (1ULL << bits) > limits.state_space_cap) {
    rs.outcome = ReachableSet::Outcome::TooLarge;
    return rs;
  }

  TupleIter cond_iter;
  TupleIter body_iter;
  for (const auto& occ : p.nondets) {
    uint64_t domain = occ.is_bool ? 2 : (p.mask() + 1);
    (occ.in_loop_cond ? cond_iter : body_iter).add(occ.index, domain);
  }
  if (cond_iter.count() * body_iter.count() > limits.choice_cap) {
    rs.outcome = ReachableSet::Outcome::TooLarge;
    return rs;
  }

  struct Edge {
    uint64_t parent;
    lang::NondetMap nondets;
  };
  std::unordered_map<uint64_t, Edge> parent;
  std::unordered_map<uint64_t, lang::ConcreteState> decoded;
  std::deque<uint64_t> queue;

  lang::ConcreteState init = lang::initial_state(p);
  uint64_t init_key = pack(init, width);
  decoded.emplace(init_key, init);
  queue.push_back(init_key);

  auto build_trace = [&](uint64_t key, const lang::NondetMap& exit_nd) {
    lang::Trace trace;
    trace.push_back({decoded.at(key), exit_nd});
    while (key != init_key) {
      const Edge& e = parent.at(key);
      trace.insert(trace.begin(), {decoded.at(e.parent), e.nondets});
      key = e.parent;
    }
    return trace;
  };

  while (!queue.empty()) {
    uint64_t key = queue.front();
    queue.pop_front();
    const lang::ConcreteState s = decoded.at(key);

    // can the loop exit here, and does an assertion then fail?
    if (rs.safe && !lang::check_post(p, s)) {
      cond_iter.reset();
      while (cond_iter.next()) {
        lang::NondetMap cnd;
        cond_iter.fill(cnd);
        if (!lang::eval_cond(p, s, cnd)) {
          rs.safe = false;
          rs.counterexample = build_trace(key, cnd);
          break;
        }
      }
    }

    cond_iter.reset();
    while (cond_iter.next()) {
      lang::NondetMap cnd;
      cond_iter.fill(cnd);
      if (!lang::eval_cond(p, s, cnd)) continue;
      body_iter.reset();
      while (body_iter.next()) {
        lang::NondetMap nd = cnd;
        body_iter.fill(nd);
        lang::ConcreteState succ = lang::step(p, s, nd);
        uint64_t skey = pack(succ, width);
        if (decoded.count(skey)) continue;
        decoded.emplace(skey, succ);
        parent.emplace(skey, Edge{key, nd});
        queue.push_back(skey);
      }
    }
  }

  rs.states.reserve(decoded.size());
  // emit in packed-key order so the result is deterministic
  std::vector<uint64_t> order;
  order.reserve(decoded.size());
  for (const auto& [k, st] : decoded) order.push_back(k);
  std::sort(order.begin(), order.end());
  for (uint64_t k : order) rs.states.push_back(decoded.at(k));
  return rs;
}

df::IntervalEnv hull(const ReachableSet& rs) {
  if (rs.states.empty()) {
    throw std::logic_error("hull: empty reachable set");
  }
  df::IntervalEnv env = df::IntervalEnv::from_values(rs.states.front());
  for (const auto& s : rs.states) {
    env = env.joined(df::IntervalEnv::from_values(s));
  }
  return env;
}

}  // namespace imcaug::oracle
