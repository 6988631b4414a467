#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "imcaug/lang/interp.hpp"
#include "imcaug/lang/parser.hpp"
#include "imcaug/oracle/explore.hpp"
#include "../tests/test_util.hpp"

using namespace imcaug;
using lang::ConcreteState;
using lang::NondetMap;

TEST_CASE("parsing the even-accumulator program") {
  lang::Program p = testutil::fig1(8);
  CHECK(p.vars.size() == 2);
  CHECK(p.width == 8);
  CHECK(p.assertions.size() == 1);
  CHECK(p.nondets.size() == 1);
  CHECK(p.nondets[0].is_bool);
  CHECK(p.nondets[0].in_loop_cond);
}

TEST_CASE("identity loop parses") {
  lang::Program p =
      lang::parse("var x:8 = 0; while (nondet()) { x = x; } assert (x == 0);");
  CHECK(p.vars.size() == 1);
  CHECK(p.body.size() == 1);
}

TEST_CASE("parse diagnostics") {
  CHECK_THROWS_AS(lang::parse("var x:8 = 0; while (nondet()) { y = 1; }"),
                  lang::ParseError);
  CHECK_THROWS_AS(
      lang::parse("var x:8 = 0; while (nondet()) { while (nondet()) {} }"),
      lang::ParseError);
  CHECK_THROWS_AS(lang::parse("var x:8 = 0; while (nondet()) {} "
                              "while (nondet()) {}"),
                  lang::ParseError);
  CHECK_THROWS_AS(lang::parse("var x:8 = 300; while (nondet()) {}"),
                  lang::ParseError);
  CHECK_THROWS_AS(lang::parse("var x:8 = 0; while (nondet()) { x = 999; }"),
                  lang::ParseError);
  CHECK_THROWS_AS(lang::parse("var x:7 = 0; while (nondet()) {}"),
                  lang::ParseError);
  CHECK_THROWS_AS(lang::parse("var x:8 = 0; var x:8 = 1; while (nondet()) {}"),
                  lang::ParseError);
  // nondet is a free input, not a checkable post-state expression
  CHECK_THROWS_AS(
      lang::parse("var x:8 = 0; while (nondet()) {} assert (nondet());"),
      lang::ParseError);

  try {
    lang::parse("var x:8 = 0;\nwhile (nondet()) {\n  y = 1;\n}");
    CHECK(false);
  } catch (const lang::ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("width override rewrites declarations") {
  lang::Program p = lang::parse(testutil::fig1_source(32), 8);
  CHECK(p.width == 8);
  CHECK(p.vars[0].width == 8);
}

TEST_CASE("step on the even-accumulator program") {
  lang::Program p = testutil::fig1(8);
  NondetMap nd;  // body consumes no nondets

  ConcreteState s0{0, 0};
  CHECK(lang::step(p, s0, nd) == ConcreteState{2, 1});

  // from (x=0, i=3): the i==3 branch fires, then i+1 = 4 misses the reset
  ConcreteState s1{0, 3};
  ConcreteState next = lang::step(p, s1, nd);
  CHECK(next == ConcreteState{3, 4});

  // cross-check that successor against the one-step enumeration
  bool found = false;
  for (const auto& tuple : testutil::all_nondet_tuples(p)) {
    if (lang::step(p, s1, tuple) == next) found = true;
  }
  CHECK(found);
}

TEST_CASE("step is deterministic and wraps") {
  lang::Program p = lang::parse(
      "var x:4 = 0; while (nondet()) { x = x * 3 + 7; } assert (x >= 0);");
  for (const auto& s : testutil::all_states(p)) {
    for (const auto& nd : testutil::all_nondet_tuples(p)) {
      ConcreteState a = lang::step(p, s, nd);
      ConcreteState b = lang::step(p, s, nd);
      REQUIRE(a == b);
      for (uint64_t v : a) REQUIRE(v <= p.mask());
    }
  }
}

TEST_CASE("identity body maps every state to itself") {
  lang::Program p =
      lang::parse("var x:8 = 3; while (nondet()) { x = x; } assert (x == 3);");
  NondetMap nd;
  for (uint64_t v = 0; v < 256; v += 17) {
    CHECK(lang::step(p, {v}, nd) == ConcreteState{v});
  }
}

TEST_CASE("check_post") {
  lang::Program p = testutil::fig1(8);
  CHECK(lang::check_post(p, {2, 1}));
  CHECK_FALSE(lang::check_post(p, {3, 0}));

  lang::Program taut =
      lang::parse("var x:8 = 0; while (nondet()) {} assert (0 == 0);");
  CHECK(lang::check_post(taut, {77}));
}

TEST_CASE("replay accepts a zero-iteration violation") {
  std::string bad = testutil::fig1_source(8);
  bad.replace(bad.find("x % 2 == 0"), 10, "x % 2 == 1");
  lang::Program p = lang::parse(bad);
  lang::Trace t;
  t.push_back({{0, 0}, {{0, 0}}});  // exit immediately: nondet#0 = 0
  CHECK(lang::replay(p, t));
}

TEST_CASE("replay rejects traces that end safe") {
  lang::Program p = testutil::fig1(8);
  lang::Trace t;
  t.push_back({{0, 0}, {{0, 1}}});
  t.push_back({{2, 1}, {{0, 0}}});
  CHECK_FALSE(lang::replay(p, t));  // (2,1) satisfies the assertion
}

TEST_CASE("replay rejects a broken step or a still-running exit") {
  std::string bad = testutil::fig1_source(8);
  bad.replace(bad.find("x % 2 == 0"), 10, "x % 2 == 1");
  lang::Program p = lang::parse(bad);

  lang::Trace wrong_step;
  wrong_step.push_back({{0, 0}, {{0, 1}}});
  wrong_step.push_back({{5, 5}, {{0, 0}}});  // not step((0,0))
  CHECK_FALSE(lang::replay(p, wrong_step));

  lang::Trace still_running;
  still_running.push_back({{0, 0}, {{0, 1}}});  // claims exit but continues
  CHECK_FALSE(lang::replay(p, still_running));

  CHECK_FALSE(lang::replay(p, {}));
}

TEST_CASE("replay agrees with the oracle's path enumeration at W=4") {
  // exhaustively: every single-iteration trace the oracle's transition
  // enumeration admits is accepted, everything else rejected
  lang::Program p = lang::parse(
      "var a:4 = 1; var b:4 = 0;\n"
      "while (nondet()) { a = a + b; if (a > 5) { a = 0; } b = b + 1; }\n"
      "assert (a <= 9);");
  auto tuples = testutil::all_nondet_tuples(p);
  ConcreteState init = lang::initial_state(p);
  for (const auto& nd0 : tuples) {
    if (!lang::eval_cond(p, init, nd0)) continue;
    ConcreteState mid = lang::step(p, init, nd0);
    for (const auto& nd1 : tuples) {
      lang::Trace t;
      t.push_back({init, nd0});
      t.push_back({mid, nd1});
      bool expect = !lang::eval_cond(p, mid, nd1) && !lang::check_post(p, mid);
      REQUIRE(lang::replay(p, t) == expect);
    }
  }
}

TEST_CASE("pretty print round-trips") {
  for (const char* src :
       {"var x:8 = 0; while (nondet()) { x = x + 1; } assert (x != 3);",
        "var a:4 = 1; var b:4 = 2;\n"
        "while (a < b || nondet()) { if (a == 1) { a = b * 2; } else { b = "
        "a / b; } }\n"
        "assert (a % 2 == 0); assert (!(b == 3));"}) {
    lang::Program p1 = lang::parse(src);
    std::string printed = lang::pretty_print(p1);
    lang::Program p2 = lang::parse(printed);
    CHECK(lang::pretty_print(p2) == printed);
  }
}
