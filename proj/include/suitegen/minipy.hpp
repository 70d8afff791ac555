#pragma once

// A small class-based language with Python syntax, interpreted with
// statement and predicate instrumentation. It is the built-in coverage
// backend: suites run against it deterministically and in-process.
//
// Supported: one class; methods taking an explicit `self`; assignment to
// locals and `self.attr`; if/elif/else; return; raise Name(expr); pass;
// expression statements; int/real/string literals, None/True/False, locals,
// `self.attr`, `self.m(args)`, + - * / **, comparisons, and/or/not, unary -.
// Loops, imports and anything else are rejected at parse time.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "suitegen/fitness.hpp"
#include "suitegen/genotype.hpp"
#include "suitegen/metadata.hpp"

namespace suitegen::minipy {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Metadata and program disagree (unknown action, wrong arity). This is a
/// setup problem, never a test outcome.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// AST

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class Kind {
    Int, Real, Str, None, Local, Name, SelfAttr, SelfCall,
    Binary, Compare, And, Or, Not, Neg
  };

  Kind kind = Kind::None;
  int line = 0;
  int column = 0;
  std::int64_t int_value = 0;
  double real_value = 0.0;
  std::string text;  // string literal, or the referenced name
  int slot = -1;     // resolved local, attribute or method index
  BinaryOp binary_op = BinaryOp::Add;
  CompareOp compare_op = CompareOp::Eq;
  std::vector<ExprPtr> operands;
};

struct Stmt;
using Block = std::vector<Stmt>;

struct IfBranch {
  int line = 0;
  int predicate_id = 0;
  ExprPtr condition;
  Block body;
};

struct Stmt {
  enum class Kind { AssignLocal, AssignAttr, If, Return, Raise, ExprStmt, Pass };

  Kind kind = Kind::Pass;
  int line = 0;
  std::string name;  // assigned local/attribute, or raised exception type
  int slot = -1;
  ExprPtr value;     // may be null for bare return / raise
  std::vector<IfBranch> branches;  // if + elifs
  std::optional<Block> else_body;
};

struct Method {
  std::string name;
  int line = 0;
  std::vector<std::string> params;  // excluding self
  std::vector<std::string> locals;  // params first, then assigned names
  Block body;
};

struct PredicateInfo {
  int id = 0;
  int line = 0;
  std::string method;
};

/// A parsed class. Immutable once built; move-only because it owns its AST.
struct Program {
  std::string class_name;
  std::vector<Method> methods;
  std::vector<std::string> attributes;  // every `self.x` name in the class
  std::vector<PredicateInfo> predicates;
  std::vector<int> statement_lines;     // ascending source order

  int find_method(std::string_view name) const;
  int find_attribute(std::string_view name) const;
  const Method* constructor() const;
  int max_line() const { return statement_lines.empty() ? 0 : statement_lines.back(); }
};

Program parse_program(std::string_view source);
Program load_program(const std::string& path);

struct GoalSet {
  std::set<int> executable_lines;
  std::vector<BranchGoal> goals;
};

GoalSet enumerate_goals(const Program& program);

// ---------------------------------------------------------------------------
// Runtime

struct Value {
  std::variant<std::monostate, std::int64_t, double, std::string> data;

  static Value none() { return {}; }
  static Value integer(std::int64_t v) { return Value{v}; }
  static Value real(double v) { return Value{v}; }
  static Value text(std::string v) { return Value{std::move(v)}; }

  bool is_none() const { return std::holds_alternative<std::monostate>(data); }
  bool is_number() const {
    return std::holds_alternative<std::int64_t>(data) || std::holds_alternative<double>(data);
  }
  double as_double() const;

  /// Python-style rendering: 7, 18.2, 25.0, text verbatim, None.
  std::string repr() const;

  bool operator==(const Value&) const = default;
};

/// What one call produced: a value, or an error raised out of it.
struct CallOutcome {
  bool raised = false;
  Value value;
  std::string error_type;
  std::string message;

  /// The value's rendering, or the error message for a raised call.
  std::string text() const;
};

struct PredicateEvaluation {
  int predicate_id = 0;
  Condition condition;
  bool outcome = false;
};

struct ExecutionTrace {
  std::set<int> covered_lines;
  std::vector<PredicateEvaluation> predicates;  // only when recording
  std::vector<CallOutcome> outcomes;            // one per executed call
};

/// One step of a scripted run, independent of any metadata file.
struct ScriptCall {
  enum class Kind { Construct, Method, Assign };
  Kind kind = Kind::Method;
  std::string name;  // method or attribute; unused for Construct
  std::vector<Value> args;
};

/// Binds a program to metadata once and then runs genotypes against it.
/// Thread-compatible: const members may be called concurrently.
class Executor {
 public:
  /// Throws ConfigurationError if an action cannot be resolved.
  Executor(const Program& program, const UutMetadata& meta);

  /// Runs each test on a fresh instance and merges coverage over the suite.
  CoverageReport execute(const TestSuite& suite) const;

  /// Runs a single test; a raised error ends the test.
  ExecutionTrace run_test(const TestCase& test, bool record_predicates = false) const;

  const Program& program() const { return *program_; }
  const GoalSet& goals() const { return goals_; }

 private:
  struct Binding {
    ScriptCall::Kind kind;
    int method = -1;     // method to invoke (or setter for assigns)
    int attribute = -1;  // direct attribute slot for plain assigns
    std::string name;
  };

  const Program* program_;
  std::vector<Binding> bindings_;  // indexed by action id
  Binding constructor_;
  GoalSet goals_;
};

CoverageReport execute_suite(const Program& program, const TestSuite& suite,
                             const UutMetadata& meta);

/// Runs a metadata-free script (construct, then calls); a raised error ends
/// it. Unknown methods or wrong constructor arity raise ConfigurationError.
ExecutionTrace run_script(const Program& program, const std::vector<ScriptCall>& script,
                          bool record_predicates = false);

}  // namespace suitegen::minipy
