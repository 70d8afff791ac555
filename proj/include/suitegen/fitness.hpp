#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "suitegen/genotype.hpp"

namespace suitegen {

class FitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FitnessKind { Statement, BranchDistance };

struct FitnessConfig {
  FitnessKind kind = FitnessKind::Statement;
  double num_tests_penalty = 10.0;
  double length_test_penalty = 30.0;
};

void validate_fitness_config(const FitnessConfig& config);

struct BranchGoal {
  int predicate_id = 0;
  bool desired_outcome = true;

  auto operator<=>(const BranchGoal&) const = default;
};

struct GoalRecord {
  bool reached = false;
  bool attained = false;
  std::optional<double> min_raw_distance;  // set iff reached && !attained
};

/// Outcome of evaluating one suite: statement coverage plus, for backends
/// that can observe predicates, per-goal branch-distance records.
struct CoverageReport {
  std::set<int> executable_lines;
  std::set<int> covered_lines;
  std::map<BranchGoal, GoalRecord> goals;

  double statement_percent() const;
};

// Predicate evaluation records, produced by an instrumented interpreter and
// consumed by the branch-distance rules below.

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* to_string(CompareOp op);

/// A runtime operand as observed at a predicate: int, real, text, or None.
using Scalar = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Condition {
  enum class Kind { Compare, Truth, Not, And, Or, Unevaluated };

  Kind kind = Kind::Unevaluated;
  CompareOp op = CompareOp::Eq;  // Compare only
  Scalar lhs;                    // Compare, Truth
  Scalar rhs;                    // Compare
  std::vector<Condition> children;  // Not (one), And/Or (operands in order)

  static Condition compare(CompareOp op, Scalar lhs, Scalar rhs);
  static Condition truth(Scalar value);
  static Condition negation(Condition child);
  static Condition conjunction(std::vector<Condition> children);
  static Condition disjunction(std::vector<Condition> children);
  static Condition unevaluated();

  /// Boolean result the condition produced; false for Unevaluated.
  bool outcome() const;
};

/// Offset added to strict-comparison distances so that zero means satisfied.
inline constexpr double kDistanceOffset = 1.0;

double raw_branch_distance(const Condition& condition, bool desired);

/// Folds one evaluation of a predicate into the two goal records for it.
void record_predicate(std::map<BranchGoal, GoalRecord>& goals, int predicate_id,
                      const Condition& condition);

double normalize_distance(double raw);

double statement_fitness(const CoverageReport& report);
double bloat_penalty(const TestSuite& suite, const FitnessConfig& config);
double goal_distance(const BranchGoal& goal, const CoverageReport& report);
double branch_fitness(std::span<const BranchGoal> goals, const CoverageReport& report,
                      const TestSuite& suite, const FitnessConfig& config);

/// Fitness of `suite` given its report, without touching the suite.
double score_suite(const TestSuite& suite, const CoverageReport& report,
                   const FitnessConfig& config);

/// Scores `suite` against its own report, stores it in suite.fitness and
/// returns it. Branch fitness uses every goal present in the report.
double calculate_fitness(TestSuite& suite, const CoverageReport& report,
                         const FitnessConfig& config);

}  // namespace suitegen
