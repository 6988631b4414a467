#include "imcaug/lang/parser.hpp"

#include <cctype>
#include <sstream>

namespace imcaug::lang {

namespace {

enum class Tok : uint8_t {
  Ident, Number, KwVar, KwWhile, KwIf, KwElse, KwAssert, KwNondet,
  Semi, Colon, Assign, LParen, RParen, LBrace, RBrace,
  EqEq, Ne, Lt, Le, Gt, Ge, Plus, Minus, Star, Slash, Percent,
  AndAnd, OrOr, Bang, End,
};

struct Token {
  Tok kind;
  std::string text;
  uint64_t number = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= src_.size()) {
      cur_.kind = Tok::End;
      cur_.text = "<end of input>";
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        id += src_[pos_];
        bump();
      }
      cur_.text = id;
      if (id == "var") cur_.kind = Tok::KwVar;
      else if (id == "while") cur_.kind = Tok::KwWhile;
      else if (id == "if") cur_.kind = Tok::KwIf;
      else if (id == "else") cur_.kind = Tok::KwElse;
      else if (id == "assert") cur_.kind = Tok::KwAssert;
      else if (id == "nondet") cur_.kind = Tok::KwNondet;
      else cur_.kind = Tok::Ident;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      uint64_t v = 0;
      std::string text;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        unsigned digit = static_cast<unsigned>(src_[pos_] - '0');
        if (v > (UINT64_MAX - digit) / 10) {
          throw ParseError("integer literal too large", line_, col_);
        }
        v = v * 10 + digit;
        text += src_[pos_];
        bump();
      }
      cur_.kind = Tok::Number;
      cur_.number = v;
      cur_.text = text;
      return;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    if (two('=', '=')) { bump(); bump(); cur_.kind = Tok::EqEq; cur_.text = "=="; return; }
    if (two('!', '=')) { bump(); bump(); cur_.kind = Tok::Ne; cur_.text = "!="; return; }
    if (two('<', '=')) { bump(); bump(); cur_.kind = Tok::Le; cur_.text = "<="; return; }
    if (two('>', '=')) { bump(); bump(); cur_.kind = Tok::Ge; cur_.text = ">="; return; }
    if (two('&', '&')) { bump(); bump(); cur_.kind = Tok::AndAnd; cur_.text = "&&"; return; }
    if (two('|', '|')) { bump(); bump(); cur_.kind = Tok::OrOr; cur_.text = "||"; return; }
    bump();
    cur_.text = std::string(1, c);
    switch (c) {
      case ';': cur_.kind = Tok::Semi; return;
      case ':': cur_.kind = Tok::Colon; return;
      case '=': cur_.kind = Tok::Assign; return;
      case '(': cur_.kind = Tok::LParen; return;
      case ')': cur_.kind = Tok::RParen; return;
      case '{': cur_.kind = Tok::LBrace; return;
      case '}': cur_.kind = Tok::RBrace; return;
      case '<': cur_.kind = Tok::Lt; return;
      case '>': cur_.kind = Tok::Gt; return;
      case '+': cur_.kind = Tok::Plus; return;
      case '-': cur_.kind = Tok::Minus; return;
      case '*': cur_.kind = Tok::Star; return;
      case '/': cur_.kind = Tok::Slash; return;
      case '%': cur_.kind = Tok::Percent; return;
      case '!': cur_.kind = Tok::Bang; return;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "'",
                         cur_.line, cur_.col);
    }
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_;
};

class Parser {
 public:
  Parser(const std::string& src, std::optional<unsigned> width_override)
      : lex_(src), width_override_(width_override) {}

  Program run() {
    Program p;
    while (lex_.peek().kind == Tok::KwVar) parse_decl(p);
    if (p.vars.empty()) {
      fail("program declares no variables", lex_.peek());
    }
    p.width = p.vars.front().width;
    expect(Tok::KwWhile, "expected 'while'");
    expect(Tok::LParen, "expected '('");
    p.loop_cond = parse_expr();
    expect(Tok::RParen, "expected ')'");
    p.body = parse_block();
    while (lex_.peek().kind == Tok::KwAssert) {
      lex_.take();
      expect(Tok::LParen, "expected '(' after assert");
      p.assertions.push_back(parse_expr());
      expect(Tok::RParen, "expected ')'");
      expect(Tok::Semi, "expected ';'");
    }
    if (lex_.peek().kind == Tok::KwWhile) {
      fail("multiple loops are not allowed", lex_.peek());
    }
    if (lex_.peek().kind != Tok::End) {
      fail("unexpected trailing input", lex_.peek());
    }
    validate(p);
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& at) {
    throw ParseError(msg, at.line, at.col);
  }
  [[noreturn]] void fail(const std::string& msg, const Expr& at) {
    throw ParseError(msg, at.line, at.col);
  }

  Token expect(Tok kind, const std::string& msg) {
    if (lex_.peek().kind != kind) {
      fail(msg + ", got '" + lex_.peek().text + "'", lex_.peek());
    }
    return lex_.take();
  }

  void parse_decl(Program& p) {
    lex_.take();  // var
    Token name = expect(Tok::Ident, "expected variable name");
    expect(Tok::Colon, "expected ':'");
    Token w = expect(Tok::Number, "expected bit width");
    expect(Tok::Assign, "expected '='");
    Token init = expect(Tok::Number, "expected initial constant");
    expect(Tok::Semi, "expected ';'");
    VarDecl d;
    d.name = name.text;
    unsigned width = static_cast<unsigned>(w.number);
    if (width_override_) width = *width_override_;
    if (width != 4 && width != 8 && width != 16 && width != 32) {
      fail("bit width must be 4, 8, 16 or 32", w);
    }
    d.width = width;
    d.init = init.number;
    if (init.number > ((width >= 64) ? ~0ULL : ((1ULL << width) - 1))) {
      fail("initial constant does not fit in " + std::to_string(width) +
               " bits",
           init);
    }
    p.vars.push_back(std::move(d));
  }

  StmtList parse_block() {
    expect(Tok::LBrace, "expected '{'");
    StmtList stmts;
    while (lex_.peek().kind != Tok::RBrace) {
      stmts.push_back(parse_stmt());
    }
    lex_.take();
    return stmts;
  }

  std::unique_ptr<Stmt> parse_stmt() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::KwWhile) {
      fail("nested loops are not allowed", t);
    }
    auto s = std::make_unique<Stmt>();
    s->line = t.line;
    s->col = t.col;
    if (t.kind == Tok::KwIf) {
      lex_.take();
      s->kind = Stmt::Kind::IfElse;
      expect(Tok::LParen, "expected '(' after if");
      s->cond = parse_expr();
      expect(Tok::RParen, "expected ')'");
      s->then_branch = parse_block();
      if (lex_.peek().kind == Tok::KwElse) {
        lex_.take();
        s->else_branch = parse_block();
      }
      return s;
    }
    Token name = expect(Tok::Ident, "expected statement");
    s->kind = Stmt::Kind::Assign;
    s->target = name.text;
    expect(Tok::Assign, "expected '='");
    s->expr = parse_expr();
    expect(Tok::Semi, "expected ';'");
    return s;
  }

  ExprPtr mk(ExprKind kind, const Token& at) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->line = at.line;
    e->col = at.col;
    return e;
  }

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (lex_.peek().kind == Tok::OrOr) {
      Token op = lex_.take();
      ExprPtr e = mk(ExprKind::Or, op);
      e->lhs = std::move(lhs);
      e->rhs = parse_and();
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_unary();
    while (lex_.peek().kind == Tok::AndAnd) {
      Token op = lex_.take();
      ExprPtr e = mk(ExprKind::And, op);
      e->lhs = std::move(lhs);
      e->rhs = parse_unary();
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (lex_.peek().kind == Tok::Bang) {
      Token op = lex_.take();
      ExprPtr e = mk(ExprKind::Not, op);
      e->lhs = parse_unary();
      return e;
    }
    return parse_cmp();
  }

  ExprPtr parse_cmp() {
    ExprPtr lhs = parse_sum();
    ExprKind kind;
    switch (lex_.peek().kind) {
      case Tok::EqEq: kind = ExprKind::Eq; break;
      case Tok::Ne: kind = ExprKind::Ne; break;
      case Tok::Lt: kind = ExprKind::Lt; break;
      case Tok::Le: kind = ExprKind::Le; break;
      case Tok::Gt: kind = ExprKind::Gt; break;
      case Tok::Ge: kind = ExprKind::Ge; break;
      default: return lhs;
    }
    Token op = lex_.take();
    ExprPtr e = mk(kind, op);
    e->lhs = std::move(lhs);
    e->rhs = parse_sum();
    return e;
  }

  ExprPtr parse_sum() {
    ExprPtr lhs = parse_term();
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      Token op = lex_.take();
      ExprPtr e = mk(op.kind == Tok::Plus ? ExprKind::Add : ExprKind::Sub, op);
      e->lhs = std::move(lhs);
      e->rhs = parse_term();
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash ||
           lex_.peek().kind == Tok::Percent) {
      Token op = lex_.take();
      ExprKind kind = op.kind == Tok::Star    ? ExprKind::Mul
                      : op.kind == Tok::Slash ? ExprKind::Div
                                              : ExprKind::Mod;
      ExprPtr e = mk(kind, op);
      e->lhs = std::move(lhs);
      e->rhs = parse_factor();
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_factor() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Tok::Number: {
        lex_.take();
        ExprPtr e = mk(ExprKind::Const, t);
        e->value = t.number;
        return e;
      }
      case Tok::Ident: {
        lex_.take();
        ExprPtr e = mk(ExprKind::Var, t);
        e->var = t.text;
        return e;
      }
      case Tok::KwNondet: {
        lex_.take();
        expect(Tok::LParen, "expected '(' after nondet");
        expect(Tok::RParen, "expected ')'");
        return mk(ExprKind::Nondet, t);
      }
      case Tok::LParen: {
        lex_.take();
        ExprPtr e = parse_expr();
        expect(Tok::RParen, "expected ')'");
        return e;
      }
      default:
        fail("expected expression, got '" + t.text + "'", t);
    }
  }

  // --- validation: declarations, types, constant widths, nondet indexing

  void validate(Program& p) {
    for (size_t i = 0; i < p.vars.size(); ++i) {
      if (p.vars[i].width != p.width) {
        throw ParseError("all variables must share one bit width", 1, 1);
      }
      for (size_t j = i + 1; j < p.vars.size(); ++j) {
        if (p.vars[i].name == p.vars[j].name) {
          throw ParseError("variable '" + p.vars[i].name + "' declared twice",
                           1, 1);
        }
      }
    }
    check_expr(p, *p.loop_cond, ExprType::Bool, /*allow_nondet=*/true,
               /*in_cond=*/true);
    check_stmts(p, p.body);
    for (auto& a : p.assertions) {
      check_expr(p, *a, ExprType::Bool, /*allow_nondet=*/false,
                 /*in_cond=*/false);
    }
  }

  void check_stmts(Program& p, const StmtList& stmts) {
    for (auto& s : stmts) {
      if (s->kind == Stmt::Kind::Assign) {
        if (p.var_index(s->target) < 0) {
          throw ParseError("undeclared variable '" + s->target + "'", s->line,
                           s->col);
        }
        check_expr(p, *s->expr, ExprType::Int, true, false);
      } else {
        check_expr(p, *s->cond, ExprType::Bool, true, false);
        check_stmts(p, s->then_branch);
        check_stmts(p, s->else_branch);
      }
    }
  }

  void check_expr(Program& p, Expr& e, ExprType expected, bool allow_nondet,
                  bool in_cond) {
    switch (e.kind) {
      case ExprKind::Const:
        e.type = ExprType::Int;
        if (e.value > p.mask()) {
          fail("constant does not fit in " + std::to_string(p.width) + " bits",
               e);
        }
        break;
      case ExprKind::Var:
        e.type = ExprType::Int;
        if (p.var_index(e.var) < 0) {
          fail("undeclared variable '" + e.var + "'", e);
        }
        break;
      case ExprKind::Nondet:
        if (!allow_nondet) {
          fail("nondet() is not allowed in post-assertions", e);
        }
        e.type = expected;
        e.nondet_index = static_cast<int>(p.nondets.size());
        p.nondets.push_back(
            {e.nondet_index, expected == ExprType::Bool, in_cond});
        break;
      case ExprKind::Add:
      case ExprKind::Sub:
      case ExprKind::Mul:
      case ExprKind::Div:
      case ExprKind::Mod:
        e.type = ExprType::Int;
        check_expr(p, *e.lhs, ExprType::Int, allow_nondet, in_cond);
        check_expr(p, *e.rhs, ExprType::Int, allow_nondet, in_cond);
        break;
      case ExprKind::Eq:
      case ExprKind::Ne:
      case ExprKind::Lt:
      case ExprKind::Le:
      case ExprKind::Gt:
      case ExprKind::Ge:
        e.type = ExprType::Bool;
        check_expr(p, *e.lhs, ExprType::Int, allow_nondet, in_cond);
        check_expr(p, *e.rhs, ExprType::Int, allow_nondet, in_cond);
        break;
      case ExprKind::And:
      case ExprKind::Or:
        e.type = ExprType::Bool;
        check_expr(p, *e.lhs, ExprType::Bool, allow_nondet, in_cond);
        check_expr(p, *e.rhs, ExprType::Bool, allow_nondet, in_cond);
        break;
      case ExprKind::Not:
        e.type = ExprType::Bool;
        check_expr(p, *e.lhs, ExprType::Bool, allow_nondet, in_cond);
        break;
    }
    if (e.type != expected) {
      fail(expected == ExprType::Bool
               ? "expected a boolean expression"
               : "expected an integer expression",
           e);
    }
  }

  Lexer lex_;
  std::optional<unsigned> width_override_;
};

// --- pretty printer

void print_expr(std::ostringstream& os, const Expr& e);

void print_binop(std::ostringstream& os, const Expr& e, const char* op) {
  os << "(";
  print_expr(os, *e.lhs);
  os << " " << op << " ";
  print_expr(os, *e.rhs);
  os << ")";
}

void print_expr(std::ostringstream& os, const Expr& e) {
  switch (e.kind) {
    case ExprKind::Const: os << e.value; break;
    case ExprKind::Var: os << e.var; break;
    case ExprKind::Nondet: os << "nondet()"; break;
    case ExprKind::Add: print_binop(os, e, "+"); break;
    case ExprKind::Sub: print_binop(os, e, "-"); break;
    case ExprKind::Mul: print_binop(os, e, "*"); break;
    case ExprKind::Div: print_binop(os, e, "/"); break;
    case ExprKind::Mod: print_binop(os, e, "%"); break;
    case ExprKind::Eq: print_binop(os, e, "=="); break;
    case ExprKind::Ne: print_binop(os, e, "!="); break;
    case ExprKind::Lt: print_binop(os, e, "<"); break;
    case ExprKind::Le: print_binop(os, e, "<="); break;
    case ExprKind::Gt: print_binop(os, e, ">"); break;
    case ExprKind::Ge: print_binop(os, e, ">="); break;
    case ExprKind::And: print_binop(os, e, "&&"); break;
    case ExprKind::Or: print_binop(os, e, "||"); break;
    case ExprKind::Not:
      os << "!";
      print_expr(os, *e.lhs);
      break;
  }
}

void print_stmts(std::ostringstream& os, const StmtList& stmts, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  for (auto& s : stmts) {
    if (s->kind == Stmt::Kind::Assign) {
      os << pad << s->target << " = ";
      print_expr(os, *s->expr);
      os << ";\n";
    } else {
      os << pad << "if (";
      print_expr(os, *s->cond);
      os << ") {\n";
      print_stmts(os, s->then_branch, indent + 1);
      os << pad << "}";
      if (!s->else_branch.empty()) {
        os << " else {\n";
        print_stmts(os, s->else_branch, indent + 1);
        os << pad << "}";
      }
      os << "\n";
    }
  }
}

}  // namespace

Program parse(const std::string& source,
              std::optional<unsigned> width_override) {
  return Parser(source, width_override).run();
}

std::string pretty_print(const Program& p) {
  std::ostringstream os;
  for (const auto& v : p.vars) {
    os << "var " << v.name << ":" << v.width << " = " << v.init << ";\n";
  }
  os << "while (";
  print_expr(os, *p.loop_cond);
  os << ") {\n";
  print_stmts(os, p.body, 1);
  os << "}\n";
  for (const auto& a : p.assertions) {
    os << "assert (";
    print_expr(os, *a);
    os << ");\n";
  }
  return os.str();
}

}  // namespace imcaug::lang
