#include <gtest/gtest.h>

#include <string>

#include "suitegen/minipy.hpp"

using namespace suitegen;
using namespace suitegen::minipy;

namespace {

ScriptCall construct(std::vector<Value> args = {}) {
  return {ScriptCall::Kind::Construct, "", std::move(args)};
}

ScriptCall call(std::string name, std::vector<Value> args = {}) {
  return {ScriptCall::Kind::Method, std::move(name), std::move(args)};
}

ScriptCall assign(std::string name, std::int64_t v) {
  return {ScriptCall::Kind::Assign, std::move(name), {Value::integer(v)}};
}

Value I(std::int64_t v) { return Value::integer(v); }

// Result of calling `f(args)` on a fresh `C()` whose body is `source`.
CallOutcome eval_method(const std::string& source, const std::string& method,
                        std::vector<Value> args = {}) {
  const Program p = parse_program(source);
  const auto trace = run_script(p, {construct(), call(method, std::move(args))});
  return trace.outcomes.back();
}

std::string parse_error(const std::string& source) {
  try {
    parse_program(source);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

const char* kCounter = R"(
class Counter:
    def __init__(self, start):
        self.count = start

    def bump(self, by):
        self.count = self.count + by
        return self.count

    def sign(self):
        if self.count > 0:
            return 1
        elif self.count == 0:
            return 0
        else:
            return -1

    def plain(self):
        x = 2
        y = x * 3
        return y
)";

}  // namespace

TEST(MinipyParse, CounterStructure) {
  const Program p = parse_program(kCounter);
  EXPECT_EQ(p.class_name, "Counter");
  ASSERT_EQ(p.methods.size(), 4u);
  ASSERT_NE(p.constructor(), nullptr);
  EXPECT_EQ(p.constructor()->params, (std::vector<std::string>{"start"}));
  EXPECT_EQ(p.find_method("bump"), 1);
  EXPECT_EQ(p.find_method("missing"), -1);
  EXPECT_GE(p.find_attribute("count"), 0);
  ASSERT_EQ(p.predicates.size(), 2u);
  EXPECT_EQ(p.predicates[0].line, 11);
  EXPECT_EQ(p.predicates[1].line, 13);
  EXPECT_EQ(p.predicates[0].method, "sign");
}

TEST(MinipyParse, StatementLinesAreStrictlyIncreasing) {
  const Program p = parse_program(kCounter);
  for (std::size_t i = 1; i < p.statement_lines.size(); ++i) {
    EXPECT_LT(p.statement_lines[i - 1], p.statement_lines[i]);
  }
  EXPECT_EQ(p.statement_lines, (std::vector<int>{4, 7, 8, 11, 12, 13, 14, 16, 19, 20, 21}));
}

TEST(MinipyGoals, IfElseAndStraightLine) {
  const Program single = parse_program(R"(
class A:
    def f(self, x):
        if x < 3:
            return 1
        else:
            return 2

    def g(self):
        a = 1
        return a
)");
  const GoalSet goals = enumerate_goals(single);
  EXPECT_EQ(goals.goals.size(), 2u);
  EXPECT_EQ(goals.executable_lines, (std::set<int>{4, 5, 7, 10, 11}));
  EXPECT_TRUE(goals.executable_lines.count(10) && goals.executable_lines.count(11));
}

TEST(MinipyGoals, StraightLineHasNoGoals) {
  const Program p = parse_program("class A:\n    def g(self):\n        a = 1\n        return a\n");
  const GoalSet goals = enumerate_goals(p);
  EXPECT_TRUE(goals.goals.empty());
  EXPECT_EQ(goals.executable_lines, (std::set<int>{3, 4}));
}

TEST(MinipyParse, Errors) {
  EXPECT_FALSE(parse_error("").empty());
  EXPECT_FALSE(parse_error("# only a comment\n").empty());
  const std::string loop = parse_error(
      "class A:\n    def f(self):\n        while True:\n            pass\n");
  EXPECT_NE(loop.find("while"), std::string::npos) << loop;
  EXPECT_NE(loop.find("line 3"), std::string::npos) << loop;
  EXPECT_NE(parse_error("import os\nclass A:\n    pass\n").find("import"), std::string::npos);
  EXPECT_NE(parse_error(
                "class A:\n    def f(self):\n        pass\nclass B:\n    def g(self):\n        pass\n").find("one class"),
            std::string::npos);
  EXPECT_NE(parse_error("class A:\n    def f(self):\n        for i in x:\n            pass\n")
                .find("for"),
            std::string::npos);
  EXPECT_FALSE(parse_error("class A:\n    def f(x):\n        pass\n").empty());
  EXPECT_FALSE(parse_error("class A:\n    def f(self):\n        x = (1 +\n").empty());
  EXPECT_FALSE(parse_error("class A:\n    def f(self):\n    return 1\n").empty());
  EXPECT_FALSE(parse_error("class A:\n    def f(self):\n        return 1 < 2 < 3\n").empty());
  EXPECT_FALSE(parse_error("class A:\n    def f(self):\n        return 'abc\n").empty());
  EXPECT_FALSE(parse_error("class A:\n    def f(self):\n        return 1 $ 2\n").empty());
}

TEST(MinipyParse, ErrorCarriesLineAndColumn) {
  try {
    parse_program("class A:\n    def f(self):\n        return 1 +\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GT(e.column(), 1);
  }
}

TEST(MinipyParse, AcceptsClassHeaderVariantsAndContinuations) {
  const char* body = "\n    def f(self):\n        pass\n";
  EXPECT_NO_THROW(parse_program(std::string("class A():") + body));
  EXPECT_NO_THROW(parse_program(std::string("class A(object):") + body));
  EXPECT_FALSE(parse_error("class A:\n    pass\n").empty());
  const Program p = parse_program(R"(
class A:
    def f(self, a,
          b):
        return (a +
                b) * \
            2
)");
  EXPECT_EQ(run_script(p, {construct(), call("f", {I(2), I(3)})}).outcomes.back().value, I(10));
}

TEST(MinipyEval, Arithmetic) {
  const std::string src = R"(
class M:
    def f(self, a, b):
        return a + b * 2 - -a
    def div(self, a, b):
        return a / b
    def pw(self, a):
        return a ** 2
    def neg_pw(self):
        return -2 ** 2
    def cat(self):
        return "ab" "cd" + "ef"
)";
  EXPECT_EQ(eval_method(src, "f", {I(3), I(4)}).value, I(14));
  EXPECT_EQ(eval_method(src, "div", {I(7), I(2)}).value, Value::real(3.5));
  EXPECT_EQ(eval_method(src, "div", {I(4), I(2)}).value, Value::real(2.0));
  EXPECT_EQ(eval_method(src, "pw", {I(-3)}).value, I(9));
  EXPECT_EQ(eval_method(src, "neg_pw").value, I(-4));
  EXPECT_EQ(eval_method(src, "cat").value, Value::text("abcdef"));
  const CallOutcome z = eval_method(src, "div", {I(1), I(0)});
  EXPECT_TRUE(z.raised);
  EXPECT_EQ(z.error_type, "ZeroDivisionError");
}

TEST(MinipyEval, FloatReprMatchesPython) {
  EXPECT_EQ(Value::real(18.2).repr(), "18.2");
  EXPECT_EQ(Value::real(25.0).repr(), "25.0");
  EXPECT_EQ(Value::real(24.999999999999996).repr(), "24.999999999999996");
  EXPECT_EQ(Value::real(0.1).repr(), "0.1");
  EXPECT_EQ(Value::real(1e16).repr(), "1e+16");
  EXPECT_EQ(Value::real(1.5e-5).repr(), "1.5e-05");
  EXPECT_EQ(Value::real(0.0001).repr(), "0.0001");
  EXPECT_EQ(Value::real(-2.5).repr(), "-2.5");
  EXPECT_EQ(Value::real(123456789.0).repr(), "123456789.0");
  EXPECT_EQ(Value::integer(-7).repr(), "-7");
  EXPECT_EQ(Value::none().repr(), "None");
  EXPECT_EQ(Value::text("Overweight").repr(), "Overweight");
}

TEST(MinipyEval, ControlFlowAndCoverage) {
  const Program p = parse_program(kCounter);
  const auto pos = run_script(p, {construct({I(5)}), call("sign")});
  EXPECT_EQ(pos.outcomes.back().value, I(1));
  EXPECT_EQ(pos.covered_lines, (std::set<int>{4, 11, 12}));
  const auto neg = run_script(p, {construct({I(-5)}), call("sign")});
  EXPECT_EQ(neg.outcomes.back().value, I(-1));
  EXPECT_EQ(neg.covered_lines, (std::set<int>{4, 11, 13, 16}));
  const auto bump = run_script(p, {construct({I(1)}), call("bump", {I(4)}), call("bump", {I(5)})});
  EXPECT_EQ(bump.outcomes.back().value, I(10));
}

TEST(MinipyEval, RaiseEndsScript) {
  const Program p = parse_program(R"(
class V:
    def __init__(self, x):
        self.set_x(x)
    def set_x(self, x):
        if x < 0:
            raise ValueError("negative")
        self.x = x
    def get(self):
        return self.x
)");
  const auto bad = run_script(p, {construct({I(-1)}), call("get")});
  ASSERT_EQ(bad.outcomes.size(), 1u);
  EXPECT_TRUE(bad.outcomes[0].raised);
  EXPECT_EQ(bad.outcomes[0].error_type, "ValueError");
  EXPECT_EQ(bad.outcomes[0].message, "negative");
  EXPECT_EQ(bad.outcomes[0].text(), "negative");
  EXPECT_EQ(bad.covered_lines.count(10), 0u);

  // Assignments are routed through set_<attr>.
  const auto routed = run_script(p, {construct({I(1)}), assign("x", -3), call("get")});
  ASSERT_EQ(routed.outcomes.size(), 2u);
  EXPECT_TRUE(routed.outcomes[1].raised);
  const auto ok = run_script(p, {construct({I(1)}), assign("x", 3), call("get")});
  EXPECT_EQ(ok.outcomes.back().value, I(3));
}

TEST(MinipyEval, RuntimeErrors) {
  const std::string src = R"(
class E:
    def unset(self):
        return self.nothing
    def loop(self):
        return self.loop()
    def name(self):
        return undefined_name
    def mixed(self):
        return 1 + "a"
    def order(self):
        return 1 < "a"
    def big(self):
        return 9223372036854775807 + 1
)";
  EXPECT_EQ(eval_method(src, "unset").error_type, "AttributeError");
  EXPECT_EQ(eval_method(src, "loop").error_type, "RecursionError");
  EXPECT_EQ(eval_method(src, "name").error_type, "NameError");
  EXPECT_EQ(eval_method(src, "mixed").error_type, "TypeError");
  EXPECT_EQ(eval_method(src, "order").error_type, "TypeError");
  EXPECT_EQ(eval_method(src, "big").error_type, "OverflowError");
}

TEST(MinipyEval, BooleanOperatorsShortCircuit) {
  const std::string src = R"(
class B:
    def f(self, a):
        if a > 0 and self.boom() > 0:
            return 1
        return 0
    def boom(self):
        return 1 / 0
    def g(self, a):
        if not a == 1 or a == 2:
            return "yes"
        return "no"
)";
  EXPECT_EQ(eval_method(src, "f", {I(-1)}).value, I(0));
  EXPECT_TRUE(eval_method(src, "f", {I(1)}).raised);
  EXPECT_EQ(eval_method(src, "g", {I(1)}).value, Value::text("no"));
  EXPECT_EQ(eval_method(src, "g", {I(3)}).value, Value::text("yes"));
}

TEST(MinipyEval, ConfigurationErrors) {
  const Program p = parse_program(kCounter);
  EXPECT_THROW(run_script(p, {construct({I(1)}), call("nope")}), ConfigurationError);
  EXPECT_THROW(run_script(p, {construct()}), ConfigurationError);
  EXPECT_THROW(run_script(p, {construct({I(1)}), assign("missing", 1)}), ConfigurationError);
  // Arity mismatch on a method is a runtime TypeError, as in Python.
  const auto t = run_script(p, {construct({I(1)}), call("bump")});
  EXPECT_EQ(t.outcomes.back().error_type, "TypeError");
}

TEST(MinipyEval, PredicateRecordsAgreeWithDistance) {
  const Program p = parse_program(R"(
class P:
    def f(self, a, b):
        if a < b and not a == 3:
            return 1
        elif a >= b * 2 or b == 0:
            return 2
        return 3
)");
  for (int a = -4; a <= 4; ++a) {
    for (int b = -4; b <= 4; ++b) {
      const auto t = run_script(p, {construct(), call("f", {I(a), I(b)})}, true);
      ASSERT_FALSE(t.predicates.empty());
      for (const auto& ev : t.predicates) {
        ASSERT_EQ(ev.outcome, ev.condition.outcome());
        for (bool desired : {true, false}) {
          ASSERT_EQ(raw_branch_distance(ev.condition, desired) == 0.0, ev.outcome == desired);
        }
      }
    }
  }
}
