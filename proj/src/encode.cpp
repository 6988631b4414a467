#include "imcaug/encoder/encode.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "imcaug/formula/bitblast.hpp"

namespace imcaug::enc {

namespace fml = imcaug::fml;

const char* origin_name(ClauseOrigin o) {
  switch (o) {
    case ClauseOrigin::Init: return "init";
    case ClauseOrigin::Trans: return "trans";
    case ClauseOrigin::Property: return "property";
    case ClauseOrigin::Invariant: return "invariant";
    case ClauseOrigin::Interpolant: return "interpolant";
    case ClauseOrigin::FixedPointCheck: return "fixed-point-check";
  }
  return "?";
}

std::string CnfInstance::to_dimacs() const {
  std::ostringstream os;
  os << "p cnf " << var_count << " " << clauses.size() << "\n";
  for (const auto& c : clauses) {
    os << "c partition " << (c.part == Partition::A ? "A" : "B") << " origin "
       << origin_name(c.origin);
    if (c.step >= 0) os << " step " << c.step;
    os << "\n";
    for (Lit l : c.lits) os << lit_dimacs(l) << " ";
    os << "0\n";
  }
  return os.str();
}

size_t CnfBuilder::MemoHash::operator()(const MemoKey& k) const {
  size_t h = std::hash<const void*>{}(k.node);
  auto mix = [&h](size_t v) { h ^= v + 0x9e3779b9 + (h << 6) + (h >> 2); };
  mix(static_cast<size_t>(k.pre));
  mix(static_cast<size_t>(k.post + 7));
  mix(static_cast<size_t>(k.nd_time + 13));
  mix(k.scope);
  mix(k.part);
  return h;
}

CnfBuilder::CnfBuilder(const TimedVariableMap& tvm) : tvm_(tvm) {
  out_.base_vars = tvm.base_vars();
  out_.var_count = tvm.base_vars();
}

CnfBuilder::CnfBuilder(const TimedVariableMap& tvm, int first_free_var)
    : tvm_(tvm) {
  out_.base_vars = tvm.base_vars();
  out_.var_count = first_free_var;
}

Var CnfBuilder::resolve_leaf(const fml::Node& leaf, const Binding& b) const {
  const std::string& name = leaf.name;
  unsigned bit = static_cast<unsigned>(leaf.value);
  if (!name.empty() && name[0] == '?') {
    int occ = std::stoi(name.substr(1));
    switch (b.scope) {
      case Binding::NdScope::Trans:
        return tvm_.trans_nondet_bit(occ, b.nd_time, bit);
      case Binding::NdScope::Prop:
        return tvm_.prop_nondet_bit(occ, b.nd_time, bit);
      case Binding::NdScope::None:
        throw std::logic_error("encode: nondet leaf without a scope");
    }
  }
  if (!name.empty() && name.back() == '\'') {
    if (b.post < 0) throw std::logic_error("encode: primed leaf unbound");
    return tvm_.state_bit(name.substr(0, name.size() - 1), b.post, bit);
  }
  return tvm_.state_bit(name, b.pre, bit);
}

void CnfBuilder::emit(std::vector<Lit> lits, Partition part,
                      ClauseOrigin origin, int step) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 0; i + 1 < lits.size(); ++i) {
    if (lit_var(lits[i]) == lit_var(lits[i + 1])) return;  // tautology
  }
  out_.clauses.push_back(TaggedClause{std::move(lits), part, origin, step});
}

Lit CnfBuilder::literal(fml::Formula f, const Binding& b, Partition part,
                        ClauseOrigin origin, int step) {
  using fml::Kind;
  switch (f->kind) {
    case Kind::BitTest:
      return mk_lit(resolve_leaf(*f, b), false);
    case Kind::Not:
      return lit_flip(literal(f->child[0], b, part, origin, step));
    case Kind::And:
    case Kind::Or:
    case Kind::Xor:
      break;
    case Kind::BoolConst:
      throw std::logic_error("encode: unexpected boolean constant");
    default:
      throw std::logic_error("encode: formula is not bit-blasted");
  }
  MemoKey key{f, b.pre, b.post, b.nd_time, static_cast<uint8_t>(b.scope),
              static_cast<uint8_t>(part)};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  Lit a = literal(f->child[0], b, part, origin, step);
  Lit bb = literal(f->child[1], b, part, origin, step);
  Var g = out_.var_count++;
  Lit gl = mk_lit(g, false);
  switch (f->kind) {
    case Kind::And:
      emit({lit_flip(gl), a}, part, origin, step);
      emit({lit_flip(gl), bb}, part, origin, step);
      emit({gl, lit_flip(a), lit_flip(bb)}, part, origin, step);
      break;
    case Kind::Or:
      emit({gl, lit_flip(a)}, part, origin, step);
      emit({gl, lit_flip(bb)}, part, origin, step);
      emit({lit_flip(gl), a, bb}, part, origin, step);
      break;
    case Kind::Xor:
      emit({lit_flip(gl), a, bb}, part, origin, step);
      emit({lit_flip(gl), lit_flip(a), lit_flip(bb)}, part, origin, step);
      emit({gl, a, lit_flip(bb)}, part, origin, step);
      emit({gl, lit_flip(a), bb}, part, origin, step);
      break;
    default:
      break;
  }
  memo_.emplace(key, gl);
  return gl;
}

namespace {

void collect_conjuncts(fml::Formula f, std::vector<fml::Formula>& out) {
  if (f->kind == fml::Kind::And) {
    collect_conjuncts(f->child[0], out);
    collect_conjuncts(f->child[1], out);
  } else {
    out.push_back(f);
  }
}

void collect_disjuncts(fml::Formula f, std::vector<fml::Formula>& out) {
  if (f->kind == fml::Kind::Or) {
    collect_disjuncts(f->child[0], out);
    collect_disjuncts(f->child[1], out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

void CnfBuilder::assert_formula(fml::Formula f, const Binding& b,
                                Partition part, ClauseOrigin origin,
                                int step) {
  f = fml::bitblast(f);
  std::vector<fml::Formula> conjuncts;
  collect_conjuncts(f, conjuncts);
  for (fml::Formula c : conjuncts) {
    if (fml::is_true(c)) continue;
    if (fml::is_false(c)) {
      emit({}, part, origin, step);
      continue;
    }
    std::vector<fml::Formula> disjuncts;
    collect_disjuncts(c, disjuncts);
    std::vector<Lit> lits;
    lits.reserve(disjuncts.size());
    for (fml::Formula d : disjuncts) {
      lits.push_back(literal(d, b, part, origin, step));
    }
    emit(std::move(lits), part, origin, step);
  }
}

void CnfBuilder::assert_disjunction(
    const std::vector<std::pair<fml::Formula, Binding>>& ds, Partition part,
    ClauseOrigin origin) {
  std::vector<Lit> lits;
  for (const auto& [f0, b] : ds) {
    fml::Formula f = fml::bitblast(f0);
    if (fml::is_false(f)) continue;
    if (fml::is_true(f)) return;  // clause trivially satisfied
    lits.push_back(literal(f, b, part, origin, -1));
  }
  emit(std::move(lits), part, origin, -1);
}

void CnfBuilder::add_raw_clause(TaggedClause c) {
  out_.clauses.push_back(std::move(c));
}

CnfInstance CnfBuilder::take() { return std::move(out_); }

CnfInstance build_query(const TimedVariableMap& tvm,
                        const std::vector<QueryItem>& items) {
  CnfBuilder builder(tvm);
  for (const auto& it : items) {
    builder.assert_formula(it.f, it.binding, it.part, it.origin, it.step);
  }
  return builder.take();
}

CnfInstance bmc_formula(const TransitionSystem& ts, fml::Formula start, int k,
                        const TimedVariableMap& tvm,
                        ClauseOrigin start_origin) {
  if (k < 1 || k > tvm.k()) throw std::logic_error("bmc_formula: bad bound");
  CnfBuilder builder(tvm);
  builder.assert_formula(start, Binding::at(0), Partition::A, start_origin);
  builder.assert_formula(ts.trans_bb, Binding::step(0), Partition::A,
                         ClauseOrigin::Trans, 0);
  for (int i = 1; i < k; ++i) {
    builder.assert_formula(ts.trans_bb, Binding::step(i), Partition::B,
                           ClauseOrigin::Trans, i);
  }
  std::vector<std::pair<fml::Formula, Binding>> bad;
  for (int i = 1; i <= k; ++i) {
    bad.emplace_back(fml::mk_not(ts.safe_bb), Binding::property(i));
  }
  builder.assert_disjunction(bad, Partition::B, ClauseOrigin::Property);
  return builder.take();
}

CnfInstance zero_step_check(const TransitionSystem& ts,
                            const TimedVariableMap& tvm) {
  CnfBuilder builder(tvm);
  builder.assert_formula(ts.init_bb, Binding::at(0), Partition::A,
                         ClauseOrigin::Init);
  builder.assert_formula(fml::mk_not(ts.safe_bb), Binding::property(0),
                         Partition::B, ClauseOrigin::Property);
  return builder.take();
}

CnfInstance implication_check(const TransitionSystem& ts, fml::Formula lhs,
                              fml::Formula rhs) {
  TimedVariableMap tvm(ts, 0);
  CnfBuilder builder(tvm);
  builder.assert_formula(lhs, Binding::at(0), Partition::A,
                         ClauseOrigin::FixedPointCheck);
  builder.assert_formula(fml::mk_not(rhs), Binding::at(0), Partition::B,
                         ClauseOrigin::FixedPointCheck);
  return builder.take();
}

lang::ConcreteState extract_state(const Model& model,
                                  const TimedVariableMap& tvm, int time) {
  lang::ConcreteState s;
  for (const auto& name : tvm.state_names()) {
    uint64_t v = 0;
    for (unsigned bit = 0; bit < tvm.width(); ++bit) {
      Var var = tvm.state_bit(name, time, bit);
      if (model[static_cast<size_t>(var)]) v |= (1ULL << bit);
    }
    s.push_back(v);
  }
  return s;
}

namespace {

lang::NondetMap extract_nondets(const Model& model, const TransitionSystem& ts,
                                const TimedVariableMap& tvm, int time,
                                const std::vector<lang::NondetOcc>& occs,
                                bool prop) {
  lang::NondetMap out;
  for (const auto& occ : occs) {
    unsigned width = ts.nondet_widths[static_cast<size_t>(occ.index)];
    uint64_t v = 0;
    for (unsigned bit = 0; bit < width; ++bit) {
      Var var = prop ? tvm.prop_nondet_bit(occ.index, time, bit)
                     : tvm.trans_nondet_bit(occ.index, time, bit);
      if (model[static_cast<size_t>(var)]) v |= (1ULL << bit);
    }
    out[occ.index] = v;
  }
  return out;
}

}  // namespace

lang::NondetMap extract_trans_nondets(const Model& model,
                                      const TransitionSystem& ts,
                                      const TimedVariableMap& tvm, int time) {
  return extract_nondets(model, ts, tvm, time, ts.trans_nondets, false);
}

lang::NondetMap extract_prop_nondets(const Model& model,
                                     const TransitionSystem& ts,
                                     const TimedVariableMap& tvm, int time) {
  return extract_nondets(model, ts, tvm, time, ts.prop_nondets, true);
}

}  // namespace imcaug::enc
