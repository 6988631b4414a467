#ifndef IMCAUG_TESTS_TEST_UTIL_HPP
#define IMCAUG_TESTS_TEST_UTIL_HPP

#include <string>
#include <vector>

#include "imcaug/encoder/cnf.hpp"
#include "imcaug/lang/ast.hpp"
#include "imcaug/lang/interp.hpp"
#include "imcaug/lang/parser.hpp"
#include "imcaug/util/rng.hpp"

namespace testutil {

// The motivating even-accumulator program (W chosen by the caller).
inline std::string fig1_source(unsigned width) {
  std::string w = std::to_string(width);
  return "var x:" + w + " = 0;\n"
         "var i:" + w + " = 0;\n"
         "while (nondet()) {\n"
         "  x = x + 2;\n"
         "  if (i == 3) {\n"
         "    x = x + 1;\n"
         "  }\n"
         "  i = i + 1;\n"
         "  if (i == 2) {\n"
         "    i = 0;\n"
         "  }\n"
         "}\n"
         "assert (x % 2 == 0);\n";
}

inline imcaug::lang::Program fig1(unsigned width) {
  return imcaug::lang::parse(fig1_source(width));
}

// Brute-force satisfiability by bit-parallel enumeration: variables
// 0..5 are swept inside a 64-bit word, the rest by an outer counter.
// Usable up to ~24 variables.
inline bool enumerate_sat(const imcaug::enc::CnfInstance& cnf) {
  using imcaug::enc::Lit;
  const int n = cnf.var_count;
  const int inner = n < 6 ? n : 6;
  const uint64_t outer_count = 1ULL << (n - inner);

  // truth pattern of inner variable v across the 64 inner assignments
  uint64_t pattern[6];
  for (int v = 0; v < 6; ++v) {
    uint64_t p = 0;
    for (int a = 0; a < 64; ++a) {
      if ((a >> v) & 1) p |= (1ULL << a);
    }
    pattern[v] = p;
  }
  const uint64_t inner_mask =
      inner >= 6 ? ~0ULL : ((1ULL << (1 << inner)) - 1);

  for (uint64_t outer = 0; outer < outer_count; ++outer) {
    uint64_t all = inner_mask;
    for (const auto& c : cnf.clauses) {
      uint64_t clause_word = 0;
      for (Lit l : c.lits) {
        int v = imcaug::enc::lit_var(l);
        bool neg = imcaug::enc::lit_neg(l);
        if (v < inner) {
          clause_word |= neg ? ~pattern[v] : pattern[v];
        } else {
          bool outer_true = (outer >> (v - inner)) & 1;
          if (outer_true != neg) clause_word = ~0ULL;
        }
        if (clause_word == ~0ULL) break;
      }
      all &= clause_word;
      if (all == 0) break;
    }
    if (all != 0) return true;
  }
  return false;
}

// Random k-CNF instance; all clauses labeled A/B by a coin flip so the
// instance is usable for interpolation tests too.
inline imcaug::enc::CnfInstance random_cnf(imcaug::Rng& rng, int nvars,
                                           int nclauses, int width = 3) {
  using namespace imcaug::enc;
  CnfInstance cnf;
  cnf.var_count = nvars;
  cnf.base_vars = nvars;
  for (int i = 0; i < nclauses; ++i) {
    std::vector<Lit> lits;
    while (static_cast<int>(lits.size()) < width) {
      Var v = static_cast<Var>(rng.below(static_cast<uint64_t>(nvars)));
      Lit l = mk_lit(v, rng.next() & 1);
      bool dup = false;
      for (Lit e : lits) {
        if (lit_var(e) == v) dup = true;
      }
      if (!dup) lits.push_back(l);
    }
    std::sort(lits.begin(), lits.end());
    TaggedClause c;
    c.lits = lits;
    c.part = (rng.next() & 1) ? Partition::A : Partition::B;
    cnf.clauses.push_back(std::move(c));
  }
  return cnf;
}

// Every nondet choice tuple of a program, for oracle-style enumeration.
inline std::vector<imcaug::lang::NondetMap> all_nondet_tuples(
    const imcaug::lang::Program& p) {
  std::vector<imcaug::lang::NondetMap> out{{}};
  for (const auto& occ : p.nondets) {
    uint64_t domain = occ.is_bool ? 2 : (p.mask() + 1);
    std::vector<imcaug::lang::NondetMap> next;
    for (const auto& m : out) {
      for (uint64_t v = 0; v < domain; ++v) {
        imcaug::lang::NondetMap m2 = m;
        m2[occ.index] = v;
        next.push_back(std::move(m2));
      }
    }
    out = std::move(next);
  }
  return out;
}

// All states of a small-width program, in lexicographic order.
inline std::vector<imcaug::lang::ConcreteState> all_states(
    const imcaug::lang::Program& p) {
  std::vector<imcaug::lang::ConcreteState> out;
  const uint64_t domain = p.mask() + 1;
  uint64_t total = 1;
  for (size_t i = 0; i < p.vars.size(); ++i) total *= domain;
  for (uint64_t idx = 0; idx < total; ++idx) {
    imcaug::lang::ConcreteState s;
    uint64_t rest = idx;
    for (size_t i = 0; i < p.vars.size(); ++i) {
      s.push_back(rest % domain);
      rest /= domain;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace testutil

#endif
