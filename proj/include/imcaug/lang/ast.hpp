#ifndef IMCAUG_LANG_AST_HPP
#define IMCAUG_LANG_AST_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace imcaug::lang {

// AST for the single-loop input language (.slp). A program is a list of
// variable declarations, exactly one while loop, and post-loop assertions.
// All variables share one bit width; arithmetic wraps modulo 2^W.

enum class ExprKind : uint8_t {
  Const,   // number
  Var,     // name
  Nondet,  // free input; nondet_index assigned during validation
  Add, Sub, Mul, Div, Mod,
  Eq, Ne, Lt, Le, Gt, Ge,
  And, Or, Not,
};

enum class ExprType : uint8_t { Int, Bool };

struct Expr {
  ExprKind kind;
  ExprType type = ExprType::Int;  // resolved during validation
  uint64_t value = 0;             // Const
  std::string var;                // Var
  int nondet_index = -1;          // Nondet
  std::unique_ptr<Expr> lhs, rhs;
  int line = 0, col = 0;
};

using ExprPtr = std::unique_ptr<Expr>;

struct Stmt;
using StmtList = std::vector<std::unique_ptr<Stmt>>;

struct Stmt {
  enum class Kind : uint8_t { Assign, IfElse } kind;
  // Assign
  std::string target;
  ExprPtr expr;
  // IfElse
  ExprPtr cond;
  StmtList then_branch;
  StmtList else_branch;
  int line = 0, col = 0;
};

struct VarDecl {
  std::string name;
  unsigned width = 8;
  uint64_t init = 0;
};

// One syntactic nondet() occurrence. Bool occurrences range over {0,1},
// int occurrences over [0, 2^W).
struct NondetOcc {
  int index;
  bool is_bool;
  bool in_loop_cond;
};

struct Program {
  std::vector<VarDecl> vars;
  unsigned width = 8;  // shared by all variables
  ExprPtr loop_cond;
  StmtList body;
  std::vector<ExprPtr> assertions;
  std::vector<NondetOcc> nondets;

  int var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i].name == name) return static_cast<int>(i);
    return -1;
  }
  uint64_t mask() const {
    return width >= 64 ? ~0ULL : ((1ULL << width) - 1);
  }
};

// Values of the declared variables in declaration order.
using ConcreteState = std::vector<uint64_t>;

// Values for nondet occurrences, keyed by occurrence index.
using NondetMap = std::map<int, uint64_t>;

struct TraceStep {
  ConcreteState state;
  NondetMap nondets;
};
using Trace = std::vector<TraceStep>;

struct ParseError : std::runtime_error {
  ParseError(std::string msg, int line, int col)
      : std::runtime_error(std::move(msg)), line(line), col(col) {}
  int line, col;
};

}  // namespace imcaug::lang

#endif
