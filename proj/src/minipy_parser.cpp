#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "minipy_lexer.hpp"
#include "suitegen/minipy.hpp"

namespace suitegen::minipy {

namespace {

using detail::Token;
using detail::TokenKind;

const std::unordered_set<std::string_view>& unsupported_statements() {
  static const std::unordered_set<std::string_view> kw = {
      "while", "for", "import", "from", "try", "with", "class", "def", "lambda",
      "global", "nonlocal", "del", "assert", "break", "continue", "yield", "async",
      "await", "except", "finally"};
  return kw;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Program parse() {
    if (peek().kind == TokenKind::End) throw error(peek(), "expected a class definition");
    if (!is_keyword("class")) {
      if (peek().kind == TokenKind::Keyword && unsupported_statements().count(peek().text)) {
        throw unsupported(peek());
      }
      throw error(peek(), "expected a class definition");
    }
    parse_class();
    if (peek().kind != TokenKind::End) {
      if (is_keyword("class")) throw error(peek(), "only one class per program is supported");
      if (peek().kind == TokenKind::Keyword && unsupported_statements().count(peek().text)) {
        throw unsupported(peek());
      }
      throw error(peek(), "unexpected statement after the class definition");
    }
    resolve_calls();
    return std::move(program_);
  }

 private:
  // -- token helpers -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool is_op(std::string_view op, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::Op && peek(ahead).text == op;
  }
  bool is_keyword(std::string_view kw) const {
    return peek().kind == TokenKind::Keyword && peek().text == kw;
  }

  static ParseError error(const Token& at, const std::string& message) {
    return ParseError(at.line, at.column, message);
  }
  static ParseError unsupported(const Token& at) {
    return ParseError(at.line, at.column,
                      "unsupported construct '" + at.text + "' at line " + std::to_string(at.line));
  }

  const Token& expect_op(std::string_view op) {
    if (!is_op(op)) throw error(peek(), "expected '" + std::string(op) + "'");
    return advance();
  }
  void expect_keyword(std::string_view kw) {
    if (!is_keyword(kw)) throw error(peek(), "expected '" + std::string(kw) + "'");
    advance();
  }
  const Token& expect_name() {
    if (peek().kind != TokenKind::Name) throw error(peek(), "expected an identifier");
    return advance();
  }
  void expect_newline() {
    if (peek().kind != TokenKind::Newline) {
      if (is_op(";")) throw error(peek(), "unsupported construct ';'");
      throw error(peek(), "expected end of line");
    }
    advance();
  }

  // Compound statement bodies must start on their own indented line.
  void expect_block_start() {
    expect_op(":");
    if (peek().kind != TokenKind::Newline) {
      throw error(peek(), "block body must start on a new line");
    }
    advance();
    if (peek().kind != TokenKind::Indent) throw error(peek(), "expected an indented block");
    advance();
  }

  // -- class / method ------------------------------------------------------

  void parse_class() {
    expect_keyword("class");
    program_.class_name = expect_name().text;
    if (is_op("(")) {
      advance();
      if (peek().kind == TokenKind::Name) {
        const Token& base = advance();
        if (base.text != "object") throw error(base, "inheritance is not supported");
      }
      expect_op(")");
    }
    expect_block_start();
    while (peek().kind != TokenKind::Dedent && peek().kind != TokenKind::End) {
      if (is_keyword("def")) {
        parse_method();
      } else if (is_keyword("pass")) {
        advance();
        expect_newline();
      } else if (peek().kind == TokenKind::Keyword && unsupported_statements().count(peek().text)) {
        throw unsupported(peek());
      } else {
        throw error(peek(), "only method definitions are allowed in the class body");
      }
    }
    if (peek().kind == TokenKind::Dedent) advance();
    if (program_.methods.empty()) throw error(peek(), "class defines no methods");
  }

  void parse_method() {
    const Token& def = advance();
    Method method;
    method.line = def.line;
    method.name = expect_name().text;
    if (program_.find_method(method.name) >= 0) {
      throw error(def, "duplicate method '" + method.name + "'");
    }
    expect_op("(");
    const Token& self = expect_name();
    if (self.text != "self") throw error(self, "first parameter must be 'self'");
    while (is_op(",")) {
      advance();
      if (is_op(")")) break;
      const Token& param = expect_name();
      if (param.text == "self" ||
          std::find(method.params.begin(), method.params.end(), param.text) != method.params.end()) {
        throw error(param, "duplicate parameter '" + param.text + "'");
      }
      method.params.push_back(param.text);
    }
    expect_op(")");
    method.locals = method.params;
    current_ = &method;
    expect_block_start();
    method.body = parse_block_body();
    current_ = nullptr;
    resolve_locals(method);
    program_.methods.push_back(std::move(method));
  }

  // Parses statements until the matching dedent.
  Block parse_block_body() {
    Block block;
    while (peek().kind != TokenKind::Dedent && peek().kind != TokenKind::End) {
      block.push_back(parse_statement());
    }
    if (peek().kind == TokenKind::Dedent) advance();
    if (block.empty()) throw error(peek(), "empty block");
    return block;
  }

  // -- statements ----------------------------------------------------------

  void note_line(int line, const Token& at) {
    if (!program_.statement_lines.empty() && program_.statement_lines.back() >= line) {
      throw error(at, "each statement must start on its own line");
    }
    program_.statement_lines.push_back(line);
  }

  Stmt parse_statement() {
    const Token& start = peek();
    if (start.kind == TokenKind::Keyword) {
      if (unsupported_statements().count(start.text)) throw unsupported(start);
      if (start.text == "if") return parse_if();
      if (start.text == "return") return parse_return();
      if (start.text == "raise") return parse_raise();
      if (start.text == "pass") {
        advance();
        note_line(start.line, start);
        expect_newline();
        Stmt s;
        s.kind = Stmt::Kind::Pass;
        s.line = start.line;
        return s;
      }
    }
    note_line(start.line, start);
    ExprPtr target = parse_expression();
    Stmt s;
    s.line = start.line;
    if (is_op("=")) {
      const Token& eq = advance();
      if (target->kind == Expr::Kind::Name) {
        s.kind = Stmt::Kind::AssignLocal;
        s.name = target->text;
        if (std::find(current_->locals.begin(), current_->locals.end(), s.name) ==
            current_->locals.end()) {
          current_->locals.push_back(s.name);
        }
      } else if (target->kind == Expr::Kind::SelfAttr) {
        s.kind = Stmt::Kind::AssignAttr;
        s.name = target->text;
        s.slot = target->slot;
      } else {
        throw error(eq, "invalid assignment target");
      }
      s.value = parse_expression();
      if (is_op("=")) throw error(peek(), "chained assignment is not supported");
    } else if (peek().kind == TokenKind::Op &&
               (peek().text == "+=" || peek().text == "-=" || peek().text == "*=" ||
                peek().text == "/=")) {
      throw error(peek(), "unsupported construct '" + peek().text + "'");
    } else {
      s.kind = Stmt::Kind::ExprStmt;
      s.value = std::move(target);
    }
    expect_newline();
    return s;
  }

  Stmt parse_if() {
    Stmt s;
    s.kind = Stmt::Kind::If;
    s.line = peek().line;
    do {
      const Token& head = advance();  // if / elif
      note_line(head.line, head);
      IfBranch branch;
      branch.line = head.line;
      branch.predicate_id = static_cast<int>(program_.predicates.size());
      program_.predicates.push_back({branch.predicate_id, head.line, current_->name});
      branch.condition = parse_expression();
      expect_block_start();
      branch.body = parse_block_body();
      s.branches.push_back(std::move(branch));
    } while (is_keyword("elif"));
    if (is_keyword("else")) {
      advance();
      expect_block_start();
      s.else_body = parse_block_body();
    }
    return s;
  }

  Stmt parse_return() {
    const Token& kw = advance();
    note_line(kw.line, kw);
    Stmt s;
    s.kind = Stmt::Kind::Return;
    s.line = kw.line;
    if (peek().kind != TokenKind::Newline) s.value = parse_expression();
    expect_newline();
    return s;
  }

  Stmt parse_raise() {
    const Token& kw = advance();
    note_line(kw.line, kw);
    Stmt s;
    s.kind = Stmt::Kind::Raise;
    s.line = kw.line;
    s.name = expect_name().text;
    if (is_op("(")) {
      advance();
      if (!is_op(")")) s.value = parse_expression();
      expect_op(")");
    }
    expect_newline();
    return s;
  }

  // -- expressions ---------------------------------------------------------

  ExprPtr make(Expr::Kind kind, const Token& at) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->line = at.line;
    e->column = at.column;
    return e;
  }

  ExprPtr parse_expression() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr left = parse_and();
    if (!is_keyword("or")) return left;
    auto node = make(Expr::Kind::Or, peek());
    node->operands.push_back(std::move(left));
    while (is_keyword("or")) {
      advance();
      node->operands.push_back(parse_and());
    }
    return node;
  }

  ExprPtr parse_and() {
    ExprPtr left = parse_not();
    if (!is_keyword("and")) return left;
    auto node = make(Expr::Kind::And, peek());
    node->operands.push_back(std::move(left));
    while (is_keyword("and")) {
      advance();
      node->operands.push_back(parse_not());
    }
    return node;
  }

  ExprPtr parse_not() {
    if (is_keyword("not")) {
      auto node = make(Expr::Kind::Not, advance());
      node->operands.push_back(parse_not());
      return node;
    }
    return parse_comparison();
  }

  std::optional<CompareOp> comparison_op() const {
    if (peek().kind == TokenKind::Keyword && (peek().text == "in" || peek().text == "is")) {
      throw error(peek(), "unsupported construct '" + peek().text + "'");
    }
    if (peek().kind != TokenKind::Op) return std::nullopt;
    const std::string& t = peek().text;
    if (t == "==") return CompareOp::Eq;
    if (t == "!=") return CompareOp::Ne;
    if (t == "<") return CompareOp::Lt;
    if (t == "<=") return CompareOp::Le;
    if (t == ">") return CompareOp::Gt;
    if (t == ">=") return CompareOp::Ge;
    return std::nullopt;
  }

  ExprPtr parse_comparison() {
    ExprPtr left = parse_additive();
    auto op = comparison_op();
    if (!op) return left;
    auto node = make(Expr::Kind::Compare, advance());
    node->compare_op = *op;
    node->operands.push_back(std::move(left));
    node->operands.push_back(parse_additive());
    if (comparison_op()) throw error(peek(), "chained comparisons are not supported");
    return node;
  }

  ExprPtr binary(BinaryOp op, const Token& at, ExprPtr lhs, ExprPtr rhs) {
    auto node = make(Expr::Kind::Binary, at);
    node->binary_op = op;
    node->operands.push_back(std::move(lhs));
    node->operands.push_back(std::move(rhs));
    return node;
  }

  ExprPtr parse_additive() {
    ExprPtr left = parse_multiplicative();
    while (is_op("+") || is_op("-")) {
      const Token& op = advance();
      left = binary(op.text == "+" ? BinaryOp::Add : BinaryOp::Sub, op, std::move(left),
                    parse_multiplicative());
    }
    return left;
  }

  ExprPtr parse_multiplicative() {
    ExprPtr left = parse_unary();
    while (true) {
      if (is_op("*") || is_op("/")) {
        const Token& op = advance();
        left = binary(op.text == "*" ? BinaryOp::Mul : BinaryOp::Div, op, std::move(left),
                      parse_unary());
      } else if (is_op("//") || is_op("%") || is_op("@")) {
        throw error(peek(), "unsupported construct '" + peek().text + "'");
      } else {
        return left;
      }
    }
  }

  ExprPtr parse_unary() {
    if (is_op("-")) {
      auto node = make(Expr::Kind::Neg, advance());
      node->operands.push_back(parse_unary());
      return node;
    }
    if (is_op("+")) {
      advance();
      return parse_unary();
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (is_op("**")) {
      const Token& op = advance();
      return binary(BinaryOp::Pow, op, std::move(base), parse_unary());
    }
    return base;
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Int: {
        auto e = make(Expr::Kind::Int, advance());
        e->int_value = t.int_value;
        return e;
      }
      case TokenKind::Real: {
        auto e = make(Expr::Kind::Real, advance());
        e->real_value = t.real_value;
        return e;
      }
      case TokenKind::String: {
        auto e = make(Expr::Kind::Str, advance());
        e->text = t.text;
        while (peek().kind == TokenKind::String) e->text += advance().text;
        return e;
      }
      case TokenKind::Keyword: {
        if (t.text == "None") return make(Expr::Kind::None, advance());
        if (t.text == "True" || t.text == "False") {
          auto e = make(Expr::Kind::Int, advance());
          e->int_value = t.text == "True" ? 1 : 0;
          return e;
        }
        if (unsupported_statements().count(t.text) || t.text == "in" || t.text == "is") {
          throw unsupported(t);
        }
        throw error(t, "unexpected keyword '" + t.text + "'");
      }
      case TokenKind::Name:
        return parse_name();
      case TokenKind::Op:
        if (t.text == "(") {
          advance();
          ExprPtr inner = parse_expression();
          if (is_op(",")) throw error(peek(), "tuples are not supported");
          expect_op(")");
          return inner;
        }
        if (t.text == "[" || t.text == "{") {
          throw error(t, "unsupported construct '" + t.text + "'");
        }
        throw error(t, "unexpected '" + t.text + "'");
      default:
        throw error(t, "unexpected end of expression");
    }
  }

  ExprPtr parse_name() {
    const Token& name = advance();
    if (name.text != "self") {
      if (is_op("(")) throw error(name, "unsupported call to '" + name.text + "'");
      if (is_op(".")) throw error(name, "attribute access is only supported on self");
      auto e = make(Expr::Kind::Name, name);
      e->text = name.text;
      return e;
    }
    if (!is_op(".")) throw error(name, "bare 'self' is not supported");
    advance();
    const Token& attr = expect_name();
    if (is_op("(")) {
      auto call = make(Expr::Kind::SelfCall, attr);
      call->text = attr.text;
      advance();
      while (!is_op(")")) {
        call->operands.push_back(parse_expression());
        if (!is_op(",")) break;
        advance();
      }
      expect_op(")");
      return call;
    }
    if (is_op(".")) throw error(peek(), "nested attribute access is not supported");
    auto e = make(Expr::Kind::SelfAttr, attr);
    e->text = attr.text;
    e->slot = attribute_slot(attr.text);
    return e;
  }

  int attribute_slot(const std::string& name) {
    int slot = program_.find_attribute(name);
    if (slot >= 0) return slot;
    program_.attributes.push_back(name);
    return static_cast<int>(program_.attributes.size()) - 1;
  }

  // -- resolution passes ---------------------------------------------------

  template <typename F>
  static void walk_expr(Expr& e, F&& f) {
    f(e);
    for (auto& child : e.operands) walk_expr(*child, f);
  }

  template <typename F>
  static void walk_block(Block& block, F&& f) {
    for (auto& s : block) {
      if (s.value) walk_expr(*s.value, f);
      for (auto& b : s.branches) {
        walk_expr(*b.condition, f);
        walk_block(b.body, f);
      }
      if (s.else_body) walk_block(*s.else_body, f);
    }
  }

  static int local_slot(const Method& m, const std::string& name) {
    auto it = std::find(m.locals.begin(), m.locals.end(), name);
    return it == m.locals.end() ? -1 : static_cast<int>(it - m.locals.begin());
  }

  static void resolve_assign_slots(Block& block, const Method& m) {
    for (auto& s : block) {
      if (s.kind == Stmt::Kind::AssignLocal) s.slot = local_slot(m, s.name);
      for (auto& b : s.branches) resolve_assign_slots(b.body, m);
      if (s.else_body) resolve_assign_slots(*s.else_body, m);
    }
  }

  static void resolve_locals(Method& m) {
    resolve_assign_slots(m.body, m);
    walk_block(m.body, [&m](Expr& e) {
      if (e.kind != Expr::Kind::Name) return;
      const int slot = local_slot(m, e.text);
      if (slot >= 0) {
        e.kind = Expr::Kind::Local;
        e.slot = slot;
      }
    });
  }

  void resolve_calls() {
    for (auto& m : program_.methods) {
      walk_block(m.body, [this](Expr& e) {
        if (e.kind == Expr::Kind::SelfCall) e.slot = program_.find_method(e.text);
      });
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Program program_;
  Method* current_ = nullptr;
};

}  // namespace

int Program::find_method(std::string_view name) const {
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (methods[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int Program::find_attribute(std::string_view name) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i] == name) return static_cast<int>(i);
  }
  return -1;
}

const Method* Program::constructor() const {
  const int idx = find_method("__init__");
  return idx < 0 ? nullptr : &methods[static_cast<std::size_t>(idx)];
}

Program parse_program(std::string_view source) {
  return Parser(detail::tokenize(source)).parse();
}

Program load_program(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read program source " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_program(buffer.str());
}

GoalSet enumerate_goals(const Program& program) {
  GoalSet out;
  out.executable_lines.insert(program.statement_lines.begin(), program.statement_lines.end());
  for (const auto& p : program.predicates) {
    out.goals.push_back({p.id, true});
    out.goals.push_back({p.id, false});
  }
  return out;
}

}  // namespace suitegen::minipy
