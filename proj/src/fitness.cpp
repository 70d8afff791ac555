#include "suitegen/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace suitegen {

namespace {

std::optional<double> numeric(const Scalar& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&value)) return *d;
  return std::nullopt;
}

bool scalars_equal(const Scalar& a, const Scalar& b) {
  auto na = numeric(a);
  auto nb = numeric(b);
  if (na && nb) return *na == *nb;
  return a == b;
}

bool truthy(const Scalar& value) {
  if (std::holds_alternative<std::monostate>(value)) return false;
  if (const auto* s = std::get_if<std::string>(&value)) return !s->empty();
  return *numeric(value) != 0.0;
}

double compare_distance(CompareOp op, const Scalar& lhs, const Scalar& rhs, bool desired) {
  constexpr double k = kDistanceOffset;
  const auto na = numeric(lhs);
  const auto nb = numeric(rhs);
  if (!na || !nb) {
    // Non-numeric operands give no gradient: satisfied or a flat K.
    const bool eq = scalars_equal(lhs, rhs);
    bool holds = false;
    if (op == CompareOp::Eq) {
      holds = eq;
    } else if (op == CompareOp::Ne) {
      holds = !eq;
    } else {
      const auto* sa = std::get_if<std::string>(&lhs);
      const auto* sb = std::get_if<std::string>(&rhs);
      if (sa && sb) {
        const int c = sa->compare(*sb);
        holds = (op == CompareOp::Lt && c < 0) || (op == CompareOp::Le && c <= 0) ||
                (op == CompareOp::Gt && c > 0) || (op == CompareOp::Ge && c >= 0);
      }
    }
    return holds == desired ? 0.0 : k;
  }
  const double a = *na;
  const double b = *nb;
  switch (op) {
    case CompareOp::Eq:
      return desired ? std::fabs(a - b) : (a == b ? k : 0.0);
    case CompareOp::Ne:
      return desired ? (a != b ? 0.0 : k) : std::fabs(a - b);
    case CompareOp::Lt:
      return desired ? (a < b ? 0.0 : a - b + k) : (a < b ? b - a : 0.0);
    case CompareOp::Le:
      return desired ? (a <= b ? 0.0 : a - b) : (a <= b ? b - a + k : 0.0);
    case CompareOp::Gt:
      return desired ? (a > b ? 0.0 : b - a + k) : (a > b ? a - b : 0.0);
    case CompareOp::Ge:
      return desired ? (a >= b ? 0.0 : b - a) : (a >= b ? a - b + k : 0.0);
  }
  return k;
}

bool compare_outcome(CompareOp op, const Scalar& lhs, const Scalar& rhs) {
  return compare_distance(op, lhs, rhs, true) == 0.0;
}

}  // namespace

const char* to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "==";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "?";
}

void validate_fitness_config(const FitnessConfig& config) {
  if (!(config.num_tests_penalty > 0.0)) throw FitnessError("num_tests_penalty must be > 0");
  if (!(config.length_test_penalty > 0.0)) throw FitnessError("length_test_penalty must be > 0");
}

double CoverageReport::statement_percent() const { return statement_fitness(*this); }

Condition Condition::compare(CompareOp op, Scalar lhs, Scalar rhs) {
  Condition c;
  c.kind = Kind::Compare;
  c.op = op;
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  return c;
}

Condition Condition::truth(Scalar value) {
  Condition c;
  c.kind = Kind::Truth;
  c.lhs = std::move(value);
  return c;
}

Condition Condition::negation(Condition child) {
  Condition c;
  c.kind = Kind::Not;
  c.children.push_back(std::move(child));
  return c;
}

Condition Condition::conjunction(std::vector<Condition> children) {
  Condition c;
  c.kind = Kind::And;
  c.children = std::move(children);
  return c;
}

Condition Condition::disjunction(std::vector<Condition> children) {
  Condition c;
  c.kind = Kind::Or;
  c.children = std::move(children);
  return c;
}

Condition Condition::unevaluated() { return Condition{}; }

bool Condition::outcome() const {
  switch (kind) {
    case Kind::Compare: return compare_outcome(op, lhs, rhs);
    case Kind::Truth: return truthy(lhs);
    case Kind::Not: return !children.front().outcome();
    case Kind::And:
      return std::all_of(children.begin(), children.end(),
                         [](const Condition& c) { return c.outcome(); });
    case Kind::Or:
      return std::any_of(children.begin(), children.end(),
                         [](const Condition& c) { return c.outcome(); });
    case Kind::Unevaluated: return false;
  }
  return false;
}

double raw_branch_distance(const Condition& condition, bool desired) {
  using Kind = Condition::Kind;
  switch (condition.kind) {
    case Kind::Compare:
      return compare_distance(condition.op, condition.lhs, condition.rhs, desired);
    case Kind::Truth: {
      const bool holds = truthy(condition.lhs);
      if (holds != desired) {
        if (!desired) {
          if (auto n = numeric(condition.lhs)) return std::fabs(*n);
        }
        return kDistanceOffset;
      }
      return 0.0;
    }
    case Kind::Not:
      return raw_branch_distance(condition.children.front(), !desired);
    case Kind::And:
    case Kind::Or: {
      // A conjunction moves toward True by fixing every operand (sum) and
      // toward False by breaking any one (min); a disjunction is the dual.
      const bool sum = (condition.kind == Kind::And) == desired;
      double acc = sum ? 0.0 : std::numeric_limits<double>::infinity();
      for (const auto& child : condition.children) {
        const double d = raw_branch_distance(child, desired);
        acc = sum ? acc + d : std::min(acc, d);
      }
      return condition.children.empty() ? 0.0 : acc;
    }
    case Kind::Unevaluated:
      return kDistanceOffset;
  }
  return kDistanceOffset;
}

void record_predicate(std::map<BranchGoal, GoalRecord>& goals, int predicate_id,
                      const Condition& condition) {
  for (bool desired : {true, false}) {
    GoalRecord& rec = goals[BranchGoal{predicate_id, desired}];
    rec.reached = true;
    if (rec.attained) continue;
    const double d = raw_branch_distance(condition, desired);
    if (d == 0.0) {
      rec.attained = true;
      rec.min_raw_distance.reset();
    } else if (!rec.min_raw_distance || d < *rec.min_raw_distance) {
      rec.min_raw_distance = d;
    }
  }
}

double normalize_distance(double raw) { return raw / (raw + 1.0); }

double statement_fitness(const CoverageReport& report) {
  if (report.executable_lines.empty()) {
    throw FitnessError("statement fitness undefined: no executable lines");
  }
  return 100.0 * static_cast<double>(report.covered_lines.size()) /
         static_cast<double>(report.executable_lines.size());
}

double bloat_penalty(const TestSuite& suite, const FitnessConfig& config) {
  if (suite.tests.empty()) throw FitnessError("bloat penalty undefined for an empty suite");
  return static_cast<double>(suite.tests.size()) / config.num_tests_penalty +
         suite.mean_length() / config.length_test_penalty;
}

double goal_distance(const BranchGoal& goal, const CoverageReport& report) {
  auto it = report.goals.find(goal);
  if (it == report.goals.end()) {
    throw FitnessError("unknown branch goal: predicate " + std::to_string(goal.predicate_id) +
                       (goal.desired_outcome ? " True" : " False"));
  }
  const GoalRecord& rec = it->second;
  if (!rec.reached) return 1.0;
  if (rec.attained) return 0.0;
  return normalize_distance(rec.min_raw_distance.value_or(kDistanceOffset));
}

double branch_fitness(std::span<const BranchGoal> goals, const CoverageReport& report,
                      const TestSuite& suite, const FitnessConfig& config) {
  if (goals.empty()) throw FitnessError("branch fitness undefined: no branch goals");
  double total = 0.0;
  for (const auto& goal : goals) total += goal_distance(goal, report);
  return 100.0 * (1.0 - total / static_cast<double>(goals.size())) -
         bloat_penalty(suite, config);
}

double score_suite(const TestSuite& suite, const CoverageReport& report,
                   const FitnessConfig& config) {
  if (config.kind == FitnessKind::Statement) {
    return statement_fitness(report) - bloat_penalty(suite, config);
  }
  std::vector<BranchGoal> goals;
  goals.reserve(report.goals.size());
  for (const auto& [goal, rec] : report.goals) goals.push_back(goal);
  return branch_fitness(goals, report, suite, config);
}

double calculate_fitness(TestSuite& suite, const CoverageReport& report,
                         const FitnessConfig& config) {
  const double fitness = score_suite(suite, report, config);
  suite.fitness = fitness;
  return fitness;
}

}  // namespace suitegen
