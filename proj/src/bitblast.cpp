#include "imcaug/formula/bitblast.hpp"

#include <cassert>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace imcaug::fml {

namespace {

using Bits = std::vector<Formula>;  // bits[0] = LSB

Formula mk_xnor(Formula a, Formula b) { return mk_not(mk_xor(a, b)); }

Formula mk_mux(Formula c, Formula a, Formula b) {
  // c ? a : b
  if (a == b) return a;
  return mk_or(mk_and(c, a), mk_and(mk_not(c), b));
}

// a + b + carry_in, result truncated to a.size() bits.
Bits ripple_add(const Bits& a, const Bits& b, Formula carry_in) {
  assert(a.size() == b.size());
  Bits out(a.size());
  Formula carry = carry_in;
  for (size_t i = 0; i < a.size(); ++i) {
    Formula axb = mk_xor(a[i], b[i]);
    out[i] = mk_xor(axb, carry);
    carry = mk_or(mk_and(a[i], b[i]), mk_and(carry, axb));
  }
  return out;
}

Bits ripple_sub(const Bits& a, const Bits& b) {
  Bits nb(b.size());
  for (size_t i = 0; i < b.size(); ++i) nb[i] = mk_not(b[i]);
  return ripple_add(a, nb, mk_true());
}

Formula bits_ult(const Bits& a, const Bits& b) {
  assert(a.size() == b.size());
  Formula lt = mk_false();
  for (size_t i = 0; i < a.size(); ++i) {
    lt = mk_or(mk_and(mk_not(a[i]), b[i]), mk_and(mk_xnor(a[i], b[i]), lt));
  }
  return lt;
}

Formula bits_eq(const Bits& a, const Bits& b) {
  assert(a.size() == b.size());
  Formula eq = mk_true();
  for (size_t i = 0; i < a.size(); ++i) eq = mk_and(eq, mk_xnor(a[i], b[i]));
  return eq;
}

Bits shift_add_mul(const Bits& a, const Bits& b) {
  const size_t w = a.size();
  Bits acc(w, mk_false());
  for (size_t j = 0; j < w; ++j) {
    Bits partial(w, mk_false());
    for (size_t i = j; i < w; ++i) partial[i] = mk_and(a[i - j], b[j]);
    acc = ripple_add(acc, partial, mk_false());
  }
  return acc;
}

// Restoring long division. Quotient and remainder together; divisor 0
// yields quotient all-ones and remainder = dividend.
void restoring_divrem(const Bits& a, const Bits& b, Bits& quot, Bits& rem) {
  const size_t w = a.size();
  Bits r(w + 1, mk_false());   // working remainder, one guard bit
  Bits d(w + 1);               // divisor, zero-extended
  for (size_t i = 0; i < w; ++i) d[i] = b[i];
  d[w] = mk_false();
  quot.assign(w, mk_false());
  for (size_t step = w; step-- > 0;) {
    Bits shifted(w + 1);
    shifted[0] = a[step];
    for (size_t i = 0; i < w; ++i) shifted[i + 1] = r[i];
    Formula ge = mk_not(bits_ult(shifted, d));
    Bits diff = ripple_sub(shifted, d);
    quot[step] = ge;
    for (size_t i = 0; i <= w; ++i) r[i] = mk_mux(ge, diff[i], shifted[i]);
  }
  rem.assign(w, mk_false());
  for (size_t i = 0; i < w; ++i) rem[i] = r[i];
}

class Blaster {
 public:
  static Blaster& instance() {
    static Blaster b;
    return b;
  }

  Formula blast(Formula f) {
    std::lock_guard<std::mutex> guard(mutex_);
    return blast_bool(f);
  }

 private:
  Formula blast_bool(Formula f) {
    auto it = bool_memo_.find(f);
    if (it != bool_memo_.end()) return it->second;
    Formula r = nullptr;
    switch (f->kind) {
      case Kind::BoolConst:
      case Kind::BitTest:
        r = f;
        break;
      case Kind::Not:
        r = mk_not(blast_bool(f->child[0]));
        break;
      case Kind::And:
        r = mk_and(blast_bool(f->child[0]), blast_bool(f->child[1]));
        break;
      case Kind::Or:
        r = mk_or(blast_bool(f->child[0]), blast_bool(f->child[1]));
        break;
      case Kind::Xor:
        r = mk_xor(blast_bool(f->child[0]), blast_bool(f->child[1]));
        break;
      case Kind::Cmp: {
        Bits a = blast_term(f->child[0]);
        Bits b = blast_term(f->child[1]);
        switch (f->cmp) {
          case CmpOp::Eq: r = bits_eq(a, b); break;
          case CmpOp::Ne: r = mk_not(bits_eq(a, b)); break;
          case CmpOp::Ult: r = bits_ult(a, b); break;
          case CmpOp::Ule: r = mk_not(bits_ult(b, a)); break;
          case CmpOp::Ugt: r = bits_ult(b, a); break;
          case CmpOp::Uge: r = mk_not(bits_ult(a, b)); break;
        }
        break;
      }
      default:
        throw std::logic_error("bitblast: bitvector term in boolean position");
    }
    bool_memo_.emplace(f, r);
    return r;
  }

  Bits blast_term(Formula f) {
    auto it = term_memo_.find(f);
    if (it != term_memo_.end()) return it->second;
    Bits r;
    const size_t w = f->width;
    switch (f->kind) {
      case Kind::BvConst:
        r.resize(w);
        for (size_t i = 0; i < w; ++i) r[i] = mk_bool((f->value >> i) & 1);
        break;
      case Kind::BvVar:
        r.resize(w);
        for (size_t i = 0; i < w; ++i) r[i] = mk_bit(f->name, i);
        break;
      case Kind::BvAdd:
        r = ripple_add(blast_term(f->child[0]), blast_term(f->child[1]),
                       mk_false());
        break;
      case Kind::BvSub:
        r = ripple_sub(blast_term(f->child[0]), blast_term(f->child[1]));
        break;
      case Kind::BvMul:
        r = shift_add_mul(blast_term(f->child[0]), blast_term(f->child[1]));
        break;
      case Kind::BvUDiv: {
        Bits rem;
        restoring_divrem(blast_term(f->child[0]), blast_term(f->child[1]), r,
                         rem);
        break;
      }
      case Kind::BvURem: {
        Bits quot;
        restoring_divrem(blast_term(f->child[0]), blast_term(f->child[1]),
                         quot, r);
        break;
      }
      case Kind::BvIte: {
        Formula c = blast_bool(f->child[0]);
        Bits a = blast_term(f->child[1]);
        Bits b = blast_term(f->child[2]);
        r.resize(w);
        for (size_t i = 0; i < w; ++i) r[i] = mk_mux(c, a[i], b[i]);
        break;
      }
      default:
        throw std::logic_error("bitblast: boolean node in term position");
    }
    assert(r.size() == w);
    term_memo_.emplace(f, r);
    return r;
  }

  std::mutex mutex_;
  std::unordered_map<Formula, Formula> bool_memo_;
  std::unordered_map<Formula, Bits> term_memo_;
};

}  // namespace

Formula bitblast(Formula f) { return Blaster::instance().blast(f); }

}  // namespace imcaug::fml
