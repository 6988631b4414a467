#ifndef IMCAUG_GEN_GENERATOR_HPP
#define IMCAUG_GEN_GENERATOR_HPP

#include <string>
#include <vector>

#include "imcaug/lang/ast.hpp"

namespace imcaug::gen {

struct GenOptions {
  uint64_t seed = 42;
  int count = 10;
  unsigned width = 4;
  int max_vars = 3;
  int max_stmts = 6;
  int max_nondets = 2;
};

// Seed-deterministic single-loop programs: a mix of bounded-counter
// templates (which give the interval analysis something to find) and
// free-form bodies. Every emitted program parses and stays within the
// oracle's enumeration limits. Same options, same bytes.
std::vector<std::string> generate_corpus(const GenOptions& opts);

std::string generate_program(uint64_t seed, const GenOptions& opts);

}  // namespace imcaug::gen

#endif
