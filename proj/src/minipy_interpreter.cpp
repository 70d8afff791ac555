#include <charconv>
#include <cmath>
#include <limits>

#include "suitegen/minipy.hpp"

namespace suitegen::minipy {

namespace {

constexpr int kMaxCallDepth = 100;

/// An error raised by the interpreted program (not by the interpreter).
struct RaisedError {
  std::string type;
  std::string message;
};

[[noreturn]] void raise(std::string type, std::string message) {
  throw RaisedError{std::move(type), std::move(message)};
}

std::string python_float_repr(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return std::signbit(v) ? "-0.0" : "0.0";

  // Shortest round-trip digits, then laid out with Python's repr rule:
  // scientific when the decimal exponent is < -4 or >= 16.
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  std::string sci(buf, res.ptr);
  const bool negative = sci[0] == '-';
  if (negative) sci.erase(0, 1);
  const auto epos = sci.find('e');
  const int exponent = std::stoi(sci.substr(epos + 1));
  std::string digits;
  for (char c : sci.substr(0, epos)) {
    if (c != '.') digits.push_back(c);
  }

  std::string out;
  if (exponent < -4 || exponent >= 16) {
    out = digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    char exp_buf[16];
    std::snprintf(exp_buf, sizeof exp_buf, "e%c%02d", exponent < 0 ? '-' : '+', std::abs(exponent));
    out += exp_buf;
  } else if (exponent < 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
  } else {
    const auto int_len = static_cast<std::size_t>(exponent) + 1;
    if (digits.size() <= int_len) {
      out = digits + std::string(int_len - digits.size(), '0') + ".0";
    } else {
      out = digits.substr(0, int_len) + "." + digits.substr(int_len);
    }
  }
  return negative ? "-" + out : out;
}

const char* type_name(const Value& v) {
  switch (v.data.index()) {
    case 0: return "NoneType";
    case 1: return "int";
    case 2: return "float";
    default: return "str";
  }
}

bool truthy(const Value& v) {
  switch (v.data.index()) {
    case 0: return false;
    case 1: return std::get<std::int64_t>(v.data) != 0;
    case 2: return std::get<double>(v.data) != 0.0;
    default: return !std::get<std::string>(v.data).empty();
  }
}

Scalar to_scalar(const Value& v) {
  switch (v.data.index()) {
    case 0: return std::monostate{};
    case 1: return std::get<std::int64_t>(v.data);
    case 2: return std::get<double>(v.data);
    default: return std::get<std::string>(v.data);
  }
}

const char* op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Pow: return "**";
  }
  return "?";
}

void check_overflow(bool overflowed) {
  if (overflowed) raise("OverflowError", "integer result out of range");
}

Value int_pow(std::int64_t base, std::int64_t exp) {
  std::int64_t result = 1;
  while (exp > 0) {
    if (exp & 1) check_overflow(__builtin_mul_overflow(result, base, &result));
    exp >>= 1;
    if (exp > 0) check_overflow(__builtin_mul_overflow(base, base, &base));
  }
  return Value::integer(result);
}

Value arithmetic(BinaryOp op, const Value& a, const Value& b) {
  const auto* ia = std::get_if<std::int64_t>(&a.data);
  const auto* ib = std::get_if<std::int64_t>(&b.data);
  if (op == BinaryOp::Add) {
    const auto* sa = std::get_if<std::string>(&a.data);
    const auto* sb = std::get_if<std::string>(&b.data);
    if (sa && sb) return Value::text(*sa + *sb);
  }
  if (!a.is_number() || !b.is_number()) {
    raise("TypeError", std::string("unsupported operand type(s) for ") + op_symbol(op) + ": '" +
                           type_name(a) + "' and '" + type_name(b) + "'");
  }
  std::int64_t r = 0;
  if (ia && ib) {
    switch (op) {
      case BinaryOp::Add:
        check_overflow(__builtin_add_overflow(*ia, *ib, &r));
        return Value::integer(r);
      case BinaryOp::Sub:
        check_overflow(__builtin_sub_overflow(*ia, *ib, &r));
        return Value::integer(r);
      case BinaryOp::Mul:
        check_overflow(__builtin_mul_overflow(*ia, *ib, &r));
        return Value::integer(r);
      case BinaryOp::Div:
        if (*ib == 0) raise("ZeroDivisionError", "division by zero");
        return Value::real(static_cast<double>(*ia) / static_cast<double>(*ib));
      case BinaryOp::Pow:
        if (*ib >= 0) return int_pow(*ia, *ib);
        if (*ia == 0) raise("ZeroDivisionError", "0.0 cannot be raised to a negative power");
        return Value::real(std::pow(static_cast<double>(*ia), static_cast<double>(*ib)));
    }
  }
  const double x = a.as_double();
  const double y = b.as_double();
  switch (op) {
    case BinaryOp::Add: return Value::real(x + y);
    case BinaryOp::Sub: return Value::real(x - y);
    case BinaryOp::Mul: return Value::real(x * y);
    case BinaryOp::Div:
      if (y == 0.0) raise("ZeroDivisionError", "float division by zero");
      return Value::real(x / y);
    case BinaryOp::Pow: {
      if (x == 0.0 && y < 0.0) raise("ZeroDivisionError", "0.0 cannot be raised to a negative power");
      const double p = std::pow(x, y);
      if (std::isnan(p) && !std::isnan(x) && !std::isnan(y)) {
        raise("ValueError", "complex results are not supported");
      }
      if (std::isinf(p) && std::isfinite(x) && std::isfinite(y)) {
        raise("OverflowError", "numerical result out of range");
      }
      return Value::real(p);
    }
  }
  return Value::none();
}

bool compare(CompareOp op, const Value& a, const Value& b) {
  if (a.is_number() && b.is_number()) {
    const auto* ia = std::get_if<std::int64_t>(&a.data);
    const auto* ib = std::get_if<std::int64_t>(&b.data);
    if (ia && ib) {
      switch (op) {
        case CompareOp::Eq: return *ia == *ib;
        case CompareOp::Ne: return *ia != *ib;
        case CompareOp::Lt: return *ia < *ib;
        case CompareOp::Le: return *ia <= *ib;
        case CompareOp::Gt: return *ia > *ib;
        case CompareOp::Ge: return *ia >= *ib;
      }
    }
    const double x = a.as_double();
    const double y = b.as_double();
    switch (op) {
      case CompareOp::Eq: return x == y;
      case CompareOp::Ne: return x != y;
      case CompareOp::Lt: return x < y;
      case CompareOp::Le: return x <= y;
      case CompareOp::Gt: return x > y;
      case CompareOp::Ge: return x >= y;
    }
  }
  if (op == CompareOp::Eq) return a == b;
  if (op == CompareOp::Ne) return !(a == b);
  const auto* sa = std::get_if<std::string>(&a.data);
  const auto* sb = std::get_if<std::string>(&b.data);
  if (!sa || !sb) {
    raise("TypeError", std::string("'") + to_string(op) + "' not supported between instances of '" +
                           type_name(a) + "' and '" + type_name(b) + "'");
  }
  const int c = sa->compare(*sb);
  switch (op) {
    case CompareOp::Lt: return c < 0;
    case CompareOp::Le: return c <= 0;
    case CompareOp::Gt: return c > 0;
    default: return c >= 0;
  }
}

struct Object {
  std::vector<std::optional<Value>> attrs;
};

struct Frame {
  Object& self;
  const Method& method;
  std::vector<std::optional<Value>> locals;
  Value result;
};

enum class Flow { Next, Return };

/// Executes code against shared instrumentation buffers.
class Machine {
 public:
  Machine(const Program& program, std::vector<char>& covered, std::vector<GoalRecord>& goals,
          std::vector<PredicateEvaluation>* recorded)
      : program_(program), covered_(covered), goals_(goals), recorded_(recorded) {}

  /// Runs one top-level step and converts raised errors into an outcome.
  template <typename F>
  CallOutcome guarded(F&& step) {
    CallOutcome out;
    try {
      out.value = step();
    } catch (const RaisedError& e) {
      out.raised = true;
      out.error_type = e.type;
      out.message = e.message;
    }
    depth_ = 0;
    return out;
  }

  Value invoke(Object& self, int method_index, std::vector<Value> args) {
    const Method& m = program_.methods[static_cast<std::size_t>(method_index)];
    if (args.size() != m.params.size()) {
      raise("TypeError", m.name + "() takes " + std::to_string(m.params.size() + 1) +
                             " positional arguments but " + std::to_string(args.size() + 1) +
                             " were given");
    }
    if (++depth_ > kMaxCallDepth) raise("RecursionError", "maximum recursion depth exceeded");
    Frame frame{self, m, std::vector<std::optional<Value>>(m.locals.size()), Value::none()};
    for (std::size_t i = 0; i < args.size(); ++i) frame.locals[i] = std::move(args[i]);
    exec_block(m.body, frame);
    --depth_;
    return std::move(frame.result);
  }

 private:
  void cover(int line) {
    if (line >= 0 && static_cast<std::size_t>(line) < covered_.size()) covered_[line] = 1;
  }

  Flow exec_block(const Block& block, Frame& frame) {
    for (const Stmt& s : block) {
      if (exec(s, frame) == Flow::Return) return Flow::Return;
    }
    return Flow::Next;
  }

  Flow exec(const Stmt& s, Frame& frame) {
    switch (s.kind) {
      case Stmt::Kind::Pass:
        cover(s.line);
        return Flow::Next;
      case Stmt::Kind::ExprStmt:
        cover(s.line);
        eval(*s.value, frame);
        return Flow::Next;
      case Stmt::Kind::AssignLocal:
        cover(s.line);
        frame.locals[static_cast<std::size_t>(s.slot)] = eval(*s.value, frame);
        return Flow::Next;
      case Stmt::Kind::AssignAttr:
        cover(s.line);
        frame.self.attrs[static_cast<std::size_t>(s.slot)] = eval(*s.value, frame);
        return Flow::Next;
      case Stmt::Kind::Return:
        cover(s.line);
        frame.result = s.value ? eval(*s.value, frame) : Value::none();
        return Flow::Return;
      case Stmt::Kind::Raise: {
        cover(s.line);
        std::string message;
        if (s.value) {
          Value v = eval(*s.value, frame);
          message = v.repr();
        }
        raise(s.name, std::move(message));
      }
      case Stmt::Kind::If:
        for (const IfBranch& branch : s.branches) {
          cover(branch.line);
          if (eval_predicate(branch, frame)) return exec_block(branch.body, frame);
        }
        if (s.else_body) return exec_block(*s.else_body, frame);
        return Flow::Next;
    }
    return Flow::Next;
  }

  bool eval_predicate(const IfBranch& branch, Frame& frame) {
    Condition cond = eval_condition(*branch.condition, frame);
    const bool outcome = cond.outcome();
    for (bool desired : {true, false}) {
      GoalRecord& rec = goals_[static_cast<std::size_t>(branch.predicate_id) * 2 + (desired ? 0 : 1)];
      rec.reached = true;
      if (rec.attained) continue;
      const double d = raw_branch_distance(cond, desired);
      if (d == 0.0) {
        rec.attained = true;
        rec.min_raw_distance.reset();
      } else if (!rec.min_raw_distance || d < *rec.min_raw_distance) {
        rec.min_raw_distance = d;
      }
    }
    if (recorded_) recorded_->push_back({branch.predicate_id, std::move(cond), outcome});
    return outcome;
  }

  // Evaluates a predicate expression, keeping the operand values that the
  // branch-distance rules need. Short-circuited operands stay Unevaluated.
  Condition eval_condition(const Expr& e, Frame& frame) {
    switch (e.kind) {
      case Expr::Kind::Compare: {
        Value lhs = eval(*e.operands[0], frame);
        Value rhs = eval(*e.operands[1], frame);
        compare(e.compare_op, lhs, rhs);  // raises on unorderable operands
        return Condition::compare(e.compare_op, to_scalar(lhs), to_scalar(rhs));
      }
      case Expr::Kind::Not:
        return Condition::negation(eval_condition(*e.operands[0], frame));
      case Expr::Kind::And:
      case Expr::Kind::Or: {
        const bool is_and = e.kind == Expr::Kind::And;
        std::vector<Condition> children;
        bool done = false;
        for (const auto& operand : e.operands) {
          if (done) {
            children.push_back(Condition::unevaluated());
            continue;
          }
          children.push_back(eval_condition(*operand, frame));
          done = children.back().outcome() != is_and;
        }
        return is_and ? Condition::conjunction(std::move(children))
                      : Condition::disjunction(std::move(children));
      }
      default:
        return Condition::truth(to_scalar(eval(e, frame)));
    }
  }

  Value eval(const Expr& e, Frame& frame) {
    switch (e.kind) {
      case Expr::Kind::Int: return Value::integer(e.int_value);
      case Expr::Kind::Real: return Value::real(e.real_value);
      case Expr::Kind::Str: return Value::text(e.text);
      case Expr::Kind::None: return Value::none();
      case Expr::Kind::Local: {
        const auto& slot = frame.locals[static_cast<std::size_t>(e.slot)];
        if (!slot) {
          raise("UnboundLocalError",
                "local variable '" + e.text + "' referenced before assignment");
        }
        return *slot;
      }
      case Expr::Kind::Name:
        raise("NameError", "name '" + e.text + "' is not defined");
      case Expr::Kind::SelfAttr: {
        const auto& slot = frame.self.attrs[static_cast<std::size_t>(e.slot)];
        if (!slot) {
          raise("AttributeError",
                "'" + program_.class_name + "' object has no attribute '" + e.text + "'");
        }
        return *slot;
      }
      case Expr::Kind::SelfCall: {
        if (e.slot < 0) {
          raise("AttributeError",
                "'" + program_.class_name + "' object has no attribute '" + e.text + "'");
        }
        std::vector<Value> args;
        args.reserve(e.operands.size());
        for (const auto& a : e.operands) args.push_back(eval(*a, frame));
        return invoke(frame.self, e.slot, std::move(args));
      }
      case Expr::Kind::Binary:
        return arithmetic(e.binary_op, eval(*e.operands[0], frame), eval(*e.operands[1], frame));
      case Expr::Kind::Compare: {
        Value lhs = eval(*e.operands[0], frame);
        Value rhs = eval(*e.operands[1], frame);
        return Value::integer(compare(e.compare_op, lhs, rhs) ? 1 : 0);
      }
      case Expr::Kind::And:
      case Expr::Kind::Or: {
        const bool is_and = e.kind == Expr::Kind::And;
        Value v;
        for (const auto& operand : e.operands) {
          v = eval(*operand, frame);
          if (truthy(v) != is_and) break;
        }
        return v;
      }
      case Expr::Kind::Not:
        return Value::integer(truthy(eval(*e.operands[0], frame)) ? 0 : 1);
      case Expr::Kind::Neg: {
        Value v = eval(*e.operands[0], frame);
        if (const auto* i = std::get_if<std::int64_t>(&v.data)) {
          if (*i == std::numeric_limits<std::int64_t>::min()) {
            raise("OverflowError", "integer result out of range");
          }
          return Value::integer(-*i);
        }
        if (const auto* d = std::get_if<double>(&v.data)) return Value::real(-*d);
        raise("TypeError", std::string("bad operand type for unary -: '") + type_name(v) + "'");
      }
    }
    return Value::none();
  }

  const Program& program_;
  std::vector<char>& covered_;
  std::vector<GoalRecord>& goals_;
  std::vector<PredicateEvaluation>* recorded_;
  int depth_ = 0;
};

std::vector<Value> to_values(const std::vector<std::int64_t>& args) {
  std::vector<Value> out;
  out.reserve(args.size());
  for (auto a : args) out.push_back(Value::integer(a));
  return out;
}

// Instrumentation buffers for one run (a test, a script, or a whole suite).
struct Buffers {
  explicit Buffers(const Program& program)
      : covered(static_cast<std::size_t>(program.max_line()) + 1, 0),
        goals(program.predicates.size() * 2) {}

  std::vector<char> covered;
  std::vector<GoalRecord> goals;

  std::set<int> covered_lines() const {
    std::set<int> out;
    for (std::size_t i = 0; i < covered.size(); ++i) {
      if (covered[i]) out.insert(static_cast<int>(i));
    }
    return out;
  }
};

}  // namespace

double Value::as_double() const {
  if (const auto* i = std::get_if<std::int64_t>(&data)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&data)) return *d;
  return std::numeric_limits<double>::quiet_NaN();
}

std::string Value::repr() const {
  switch (data.index()) {
    case 0: return "None";
    case 1: return std::to_string(std::get<std::int64_t>(data));
    case 2: return python_float_repr(std::get<double>(data));
    default: return std::get<std::string>(data);
  }
}

std::string CallOutcome::text() const { return raised ? message : value.repr(); }

Executor::Executor(const Program& program, const UutMetadata& meta)
    : program_(&program), goals_(enumerate_goals(program)) {
  const Method* ctor = program.constructor();
  const std::size_t ctor_arity = ctor ? ctor->params.size() : 0;
  if (ctor_arity != meta.constructor.size()) {
    throw ConfigurationError("constructor of " + program.class_name + " takes " +
                             std::to_string(ctor_arity) + " parameter(s), metadata declares " +
                             std::to_string(meta.constructor.size()));
  }
  constructor_.kind = ScriptCall::Kind::Construct;
  constructor_.method = ctor ? program.find_method("__init__") : -1;

  for (const auto& action : meta.actions) {
    Binding b;
    b.name = action.name;
    if (action.kind == ActionKind::Method) {
      b.kind = ScriptCall::Kind::Method;
      b.method = program.find_method(action.name);
      if (b.method < 0) {
        throw ConfigurationError("action \"" + action.name + "\" is not a method of " +
                                 program.class_name);
      }
      const auto arity = program.methods[static_cast<std::size_t>(b.method)].params.size();
      if (arity != action.params.size()) {
        throw ConfigurationError("method \"" + action.name + "\" takes " +
                                 std::to_string(arity) + " parameter(s), metadata declares " +
                                 std::to_string(action.params.size()));
      }
    } else {
      b.kind = ScriptCall::Kind::Assign;
      b.method = program.find_method("set_" + action.name);
      if (b.method >= 0 && program.methods[static_cast<std::size_t>(b.method)].params.size() != 1) {
        throw ConfigurationError("validator set_" + action.name + " must take one parameter");
      }
      b.attribute = program.find_attribute(action.name);
      if (b.method < 0 && b.attribute < 0) {
        throw ConfigurationError("action \"" + action.name + "\" is not an attribute of " +
                                 program.class_name);
      }
    }
    bindings_.push_back(std::move(b));
  }
}

namespace {

// Runs a bound call sequence on a fresh object, stopping at the first raise.
template <typename Step>
void run_steps(Machine& machine, const Program& program, std::size_t count, Step&& step,
               std::vector<CallOutcome>& outcomes) {
  Object self{std::vector<std::optional<Value>>(program.attributes.size())};
  for (std::size_t i = 0; i < count; ++i) {
    CallOutcome out = machine.guarded([&] { return step(i, self); });
    const bool stop = out.raised;
    outcomes.push_back(std::move(out));
    if (stop) break;
  }
}

}  // namespace

ExecutionTrace Executor::run_test(const TestCase& test, bool record_predicates) const {
  Buffers buffers(*program_);
  ExecutionTrace trace;
  Machine machine(*program_, buffers.covered, buffers.goals,
                  record_predicates ? &trace.predicates : nullptr);
  run_steps(
      machine, *program_, test.calls.size(),
      [&](std::size_t i, Object& self) -> Value {
        const ActionCall& call = test.calls[i];
        if (call.action_id == kConstructorId) {
          if (constructor_.method >= 0) machine.invoke(self, constructor_.method, to_values(call.args));
          return Value::none();
        }
        const Binding& b = bindings_[static_cast<std::size_t>(call.action_id)];
        if (b.kind == ScriptCall::Kind::Method) {
          return machine.invoke(self, b.method, to_values(call.args));
        }
        if (b.method >= 0) {
          machine.invoke(self, b.method, to_values(call.args));
        } else {
          self.attrs[static_cast<std::size_t>(b.attribute)] = Value::integer(call.args.at(0));
        }
        return Value::none();
      },
      trace.outcomes);
  trace.covered_lines = buffers.covered_lines();
  return trace;
}

CoverageReport Executor::execute(const TestSuite& suite) const {
  Buffers buffers(*program_);
  Machine machine(*program_, buffers.covered, buffers.goals, nullptr);
  std::vector<CallOutcome> discard;
  for (const TestCase& test : suite.tests) {
    discard.clear();
    run_steps(
        machine, *program_, test.calls.size(),
        [&](std::size_t i, Object& self) -> Value {
          const ActionCall& call = test.calls[i];
          if (call.action_id == kConstructorId) {
            if (constructor_.method >= 0) {
              machine.invoke(self, constructor_.method, to_values(call.args));
            }
            return Value::none();
          }
          const Binding& b = bindings_[static_cast<std::size_t>(call.action_id)];
          if (b.kind == ScriptCall::Kind::Method) {
            machine.invoke(self, b.method, to_values(call.args));
          } else if (b.method >= 0) {
            machine.invoke(self, b.method, to_values(call.args));
          } else {
            self.attrs[static_cast<std::size_t>(b.attribute)] = Value::integer(call.args.at(0));
          }
          return Value::none();
        },
        discard);
  }

  CoverageReport report;
  report.executable_lines = goals_.executable_lines;
  report.covered_lines = buffers.covered_lines();
  for (const auto& goal : goals_.goals) {
    report.goals[goal] =
        buffers.goals[static_cast<std::size_t>(goal.predicate_id) * 2 + (goal.desired_outcome ? 0 : 1)];
  }
  return report;
}

CoverageReport execute_suite(const Program& program, const TestSuite& suite,
                             const UutMetadata& meta) {
  return Executor(program, meta).execute(suite);
}

ExecutionTrace run_script(const Program& program, const std::vector<ScriptCall>& script,
                          bool record_predicates) {
  // Resolve everything up front so configuration errors surface before any
  // code runs.
  struct Resolved {
    int method = -1;
    int attribute = -1;
  };
  std::vector<Resolved> resolved;
  for (const ScriptCall& call : script) {
    Resolved r;
    switch (call.kind) {
      case ScriptCall::Kind::Construct: {
        const Method* ctor = program.constructor();
        const std::size_t arity = ctor ? ctor->params.size() : 0;
        if (arity != call.args.size()) {
          throw ConfigurationError("constructor of " + program.class_name + " takes " +
                                   std::to_string(arity) + " parameter(s), got " +
                                   std::to_string(call.args.size()));
        }
        r.method = ctor ? program.find_method("__init__") : -1;
        break;
      }
      case ScriptCall::Kind::Method:
        r.method = program.find_method(call.name);
        if (r.method < 0) {
          throw ConfigurationError("\"" + call.name + "\" is not a method of " + program.class_name);
        }
        break;
      case ScriptCall::Kind::Assign:
        if (call.args.size() != 1) throw ConfigurationError("assignment takes one value");
        r.method = program.find_method("set_" + call.name);
        r.attribute = program.find_attribute(call.name);
        if (r.method < 0 && r.attribute < 0) {
          throw ConfigurationError("\"" + call.name + "\" is not an attribute of " +
                                   program.class_name);
        }
        break;
    }
    resolved.push_back(r);
  }

  Buffers buffers(program);
  ExecutionTrace trace;
  Machine machine(program, buffers.covered, buffers.goals,
                  record_predicates ? &trace.predicates : nullptr);
  run_steps(
      machine, program, script.size(),
      [&](std::size_t i, Object& self) -> Value {
        const ScriptCall& call = script[i];
        const Resolved& r = resolved[i];
        switch (call.kind) {
          case ScriptCall::Kind::Construct:
            if (r.method >= 0) machine.invoke(self, r.method, call.args);
            return Value::none();
          case ScriptCall::Kind::Method:
            return machine.invoke(self, r.method, call.args);
          case ScriptCall::Kind::Assign:
            if (r.method >= 0) {
              machine.invoke(self, r.method, call.args);
            } else {
              self.attrs[static_cast<std::size_t>(r.attribute)] = call.args[0];
            }
            return Value::none();
        }
        return Value::none();
      },
      trace.outcomes);
  trace.covered_lines = buffers.covered_lines();
  return trace;
}

}  // namespace suitegen::minipy
