#include "imcaug/gen/generator.hpp"

#include <sstream>

#include "imcaug/util/rng.hpp"

namespace imcaug::gen {

namespace {

const char* kVarNames[3] = {"x", "y", "z"};

struct Budget {
  int nondets_left;
  int int_nondets_left;
};

std::string rand_rhs(Rng& rng, const std::vector<std::string>& vars,
                     uint64_t mask, Budget& budget) {
  auto var = [&] { return vars[rng.below(vars.size())]; };
  auto small_const = [&] { return std::to_string(rng.range(0, std::min<uint64_t>(mask, 5))); };
  if (budget.nondets_left > 0 && budget.int_nondets_left > 0 &&
      rng.chance(12)) {
    --budget.nondets_left;
    --budget.int_nondets_left;
    return "nondet()";
  }
  switch (rng.below(4)) {
    case 0: return small_const();
    case 1: return var();
    case 2: {
      const char* ops[] = {"+", "+", "+", "-", "*", "/", "%"};
      return var() + " " + ops[rng.below(7)] + " " + small_const();
    }
    default: {
      const char* ops[] = {"+", "-", "*"};
      return var() + " " + ops[rng.below(3)] + " " + var();
    }
  }
}

std::string rand_guard(Rng& rng, const std::vector<std::string>& vars,
                       uint64_t mask) {
  const char* cmps[] = {"==", "!=", "<", "<=", ">", ">="};
  std::string lhs = vars[rng.below(vars.size())];
  std::string rhs = rng.chance(70)
                        ? std::to_string(rng.range(0, std::min<uint64_t>(mask, 6)))
                        : vars[rng.below(vars.size())];
  return lhs + " " + cmps[rng.below(6)] + " " + rhs;
}

}  // namespace

std::string generate_program(uint64_t seed, const GenOptions& opts) {
  Rng rng(seed);
  const uint64_t mask = opts.width >= 64 ? ~0ULL : ((1ULL << opts.width) - 1);

  int nvars = static_cast<int>(rng.range(1, static_cast<uint64_t>(opts.max_vars)));
  std::vector<std::string> vars;
  for (int i = 0; i < nvars; ++i) vars.push_back(kVarNames[i]);

  Budget budget{opts.max_nondets, nvars >= 3 ? 1 : 2};

  std::ostringstream body;
  std::ostringstream asserts;
  std::vector<uint64_t> inits(static_cast<size_t>(nvars), 0);

  enum class Shape { Counter, Bounded, Free };
  Shape shape = rng.chance(40) ? Shape::Counter
                : rng.chance(50) ? Shape::Bounded
                                 : Shape::Free;

  if (shape == Shape::Counter) {
    // modular counter plus an even accumulator; the +1 branch is
    // unreachable, so the accumulator keeps its parity
    uint64_t m = rng.range(2, std::min<uint64_t>(4, mask - 1));
    const std::string& c = vars[0];
    body << "  " << c << " = " << c << " + 1;\n";
    body << "  if (" << c << " == " << m << ") {\n";
    body << "    " << c << " = 0;\n";
    body << "  }\n";
    if (nvars >= 2) {
      const std::string& x = vars[1];
      body.str("");
      body << "  " << x << " = " << x << " + 2;\n";
      body << "  if (" << c << " == " << (m + 1) << ") {\n";
      body << "    " << x << " = " << x << " + 1;\n";
      body << "  }\n";
      body << "  " << c << " = " << c << " + 1;\n";
      body << "  if (" << c << " == " << m << ") {\n";
      body << "    " << c << " = 0;\n";
      body << "  }\n";
      if (rng.chance(75)) {
        asserts << "assert (" << x << " % 2 == 0);\n";
      } else {
        // violated once the accumulator wraps or reaches the constant
        asserts << "assert (" << x << " != " << 2 * rng.range(1, 4) << ");\n";
      }
    }
    asserts << "assert (" << c << " <= " << (m - 1) << ");\n";
  } else if (shape == Shape::Bounded) {
    const std::string& i = vars[0];
    uint64_t c = rng.range(2, std::min<uint64_t>(6, mask - 1));
    body << "  if (" << i << " < " << c << ") {\n";
    body << "    " << i << " = " << i << " + 1;\n";
    body << "  }\n";
    for (int extra = 1; extra < nvars; ++extra) {
      body << "  " << vars[static_cast<size_t>(extra)] << " = "
           << rand_rhs(rng, vars, mask, budget) << ";\n";
    }
    if (rng.chance(70)) {
      asserts << "assert (" << i << " <= " << c << ");\n";
    } else {
      asserts << "assert (" << i << " < " << c << ");\n";  // fails at i == c
    }
  } else {
    int stmts = static_cast<int>(rng.range(1, static_cast<uint64_t>(opts.max_stmts)));
    int emitted = 0;
    while (emitted < stmts) {
      if (emitted + 2 <= stmts && rng.chance(35)) {
        body << "  if (" << rand_guard(rng, vars, mask) << ") {\n";
        body << "    " << vars[rng.below(vars.size())] << " = "
             << rand_rhs(rng, vars, mask, budget) << ";\n";
        if (rng.chance(50)) {
          body << "  } else {\n";
          body << "    " << vars[rng.below(vars.size())] << " = "
               << rand_rhs(rng, vars, mask, budget) << ";\n";
        }
        body << "  }\n";
        emitted += 2;
      } else {
        body << "  " << vars[rng.below(vars.size())] << " = "
             << rand_rhs(rng, vars, mask, budget) << ";\n";
        emitted += 1;
      }
    }
    int nasserts = rng.chance(70) ? 1 : 2;
    for (int a = 0; a < nasserts; ++a) {
      asserts << "assert (" << rand_guard(rng, vars, mask) << ");\n";
    }
  }

  std::ostringstream cond;
  if (budget.nondets_left > 0 && rng.chance(85)) {
    --budget.nondets_left;
    cond << "nondet()";
  } else {
    cond << rand_guard(rng, vars, mask);
  }

  for (size_t i = 0; i < inits.size(); ++i) {
    inits[i] = rng.chance(70) ? 0 : rng.range(0, std::min<uint64_t>(mask, 3));
  }

  std::ostringstream out;
  for (int i = 0; i < nvars; ++i) {
    out << "var " << vars[static_cast<size_t>(i)] << ":" << opts.width
        << " = " << inits[static_cast<size_t>(i)] << ";\n";
  }
  out << "while (" << cond.str() << ") {\n" << body.str() << "}\n"
      << asserts.str();
  return out.str();
}

std::vector<std::string> generate_corpus(const GenOptions& opts) {
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(opts.count));
  for (int i = 0; i < opts.count; ++i) {
    uint64_t task_seed =
        opts.seed * 0x9e3779b97f4a7c15ULL + static_cast<uint64_t>(i) + 1;
    out.push_back(generate_program(task_seed, opts));
  }
  return out;
}

}  // namespace imcaug::gen
