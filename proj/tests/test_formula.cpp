#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "imcaug/formula/bitblast.hpp"
#include "imcaug/formula/formula.hpp"
#include "imcaug/util/rng.hpp"

using namespace imcaug;
using namespace imcaug::fml;

TEST_CASE("smart constructors fold constants and units") {
  Formula t = mk_true();
  Formula f = mk_false();
  Formula a = mk_bit("a", 0);

  CHECK(mk_and(t, a) == a);
  CHECK(mk_and(a, f) == f);
  CHECK(mk_or(f, a) == a);
  CHECK(mk_or(a, t) == t);
  CHECK(mk_and(a, a) == a);
  CHECK(mk_and(a, mk_not(a)) == f);
  CHECK(mk_or(a, mk_not(a)) == t);
  CHECK(mk_not(mk_not(a)) == a);
  CHECK(mk_xor(a, f) == a);
  CHECK(mk_xor(a, a) == f);

  Formula c3 = mk_bv_const(3, 8);
  Formula c5 = mk_bv_const(5, 8);
  CHECK(mk_add(c3, c5) == mk_bv_const(8, 8));
  CHECK(mk_mul(c3, c5) == mk_bv_const(15, 8));
  CHECK(mk_sub(c3, c5) == mk_bv_const(254, 8));  // wraps
  CHECK(mk_udiv(c3, mk_bv_const(0, 8)) == mk_bv_const(255, 8));
  CHECK(mk_urem(c3, mk_bv_const(0, 8)) == c3);
  CHECK(is_true(mk_cmp(CmpOp::Ult, c3, c5)));
  CHECK(is_false(mk_cmp(CmpOp::Eq, c3, c5)));
}

TEST_CASE("hash consing gives pointer equality for equal structure") {
  Formula x1 = mk_bv_var("x", 8);
  Formula x2 = mk_bv_var("x", 8);
  CHECK(x1 == x2);
  Formula e1 = mk_add(x1, mk_bv_const(1, 8));
  Formula e2 = mk_add(x2, mk_bv_const(1, 8));
  CHECK(e1 == e2);
}

TEST_CASE("eval matches wrap-around semantics") {
  Formula x = mk_bv_var("x", 8);
  Formula y = mk_bv_var("y", 8);
  Env env;
  env.set("x", 200);
  env.set("y", 100);
  CHECK(eval(mk_add(x, y), env) == 44);   // 300 mod 256
  CHECK(eval(mk_sub(y, x), env) == 156);  // -100 mod 256
  CHECK(eval(mk_mul(x, y), env) == (200 * 100) % 256);
  CHECK(eval(mk_udiv(x, y), env) == 2);
  CHECK(eval(mk_urem(x, y), env) == 0);
  env.set("y", 0);
  CHECK(eval(mk_udiv(x, y), env) == 255);
  CHECK(eval(mk_urem(x, y), env) == 200);
  CHECK(eval_bool(mk_cmp(CmpOp::Ugt, x, y), env));
}

namespace {

// Random term over two variables, depth-bounded.
Formula random_term(Rng& rng, unsigned width, int depth) {
  if (depth == 0 || rng.chance(30)) {
    switch (rng.below(3)) {
      case 0: return mk_bv_var("x", width);
      case 1: return mk_bv_var("y", width);
      default: return mk_bv_const(rng.below(1ULL << width), width);
    }
  }
  Formula a = random_term(rng, width, depth - 1);
  Formula b = random_term(rng, width, depth - 1);
  switch (rng.below(6)) {
    case 0: return mk_add(a, b);
    case 1: return mk_sub(a, b);
    case 2: return mk_mul(a, b);
    case 3: return mk_udiv(a, b);
    case 4: return mk_urem(a, b);
    default:
      return mk_bv_ite(mk_cmp(CmpOp::Ult, a, b), a, b);
  }
}

}  // namespace

TEST_CASE("bitblast agrees with eval on random terms (exhaustive at W=4)") {
  const unsigned width = 4;
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    Formula term = random_term(rng, width, 3);
    Formula cmp = mk_cmp(static_cast<CmpOp>(rng.below(6)), term,
                         random_term(rng, width, 2));
    Formula blasted = bitblast(cmp);
    for (uint64_t xv = 0; xv < 16; ++xv) {
      for (uint64_t yv = 0; yv < 16; ++yv) {
        Env env;
        env.set("x", xv);
        env.set("y", yv);
        CAPTURE(trial);
        CAPTURE(xv);
        CAPTURE(yv);
        REQUIRE(eval_bool(cmp, env) == eval_bool(blasted, env));
      }
    }
  }
}

TEST_CASE("bitblast output is boolean-only over BitTest leaves") {
  Formula x = mk_bv_var("x", 8);
  Formula f = bitblast(mk_cmp(CmpOp::Eq, mk_urem(x, mk_bv_const(2, 8)),
                              mk_bv_const(0, 8)));
  // x % 2 == 0 collapses to a single negated bit test
  CHECK(f == mk_not(mk_bit("x", 0)));
}

TEST_CASE("free_names walks both term and boolean leaves") {
  Formula f = mk_and(mk_bit("a", 1),
                     mk_cmp(CmpOp::Ule, mk_bv_var("x", 4), mk_bv_var("y", 4)));
  auto names = free_names(f);
  CHECK(names == std::set<std::string>{"a", "x", "y"});
}
