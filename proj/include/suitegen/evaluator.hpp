#pragma once

#include <functional>

#include "suitegen/fitness.hpp"
#include "suitegen/genotype.hpp"
#include "suitegen/minipy.hpp"
#include "suitegen/phenotype.hpp"

namespace suitegen {

/// Scores suites for the search engines. Implementations must be
/// deterministic: the same suite always gets the same score.
class Evaluator {
 public:
  virtual ~Evaluator() = default;

  /// Scores `suite`, caches the score in suite.fitness and returns it.
  double evaluate(TestSuite& suite) {
    ++evaluations_;
    const double f = score(suite);
    suite.fitness = f;
    return f;
  }

  std::size_t evaluations() const { return evaluations_; }

 protected:
  virtual double score(const TestSuite& suite) = 0;

 private:
  std::size_t evaluations_ = 0;
};

/// An evaluator backed by a coverage measurement and a fitness function.
class CoverageEvaluator : public Evaluator {
 public:
  virtual CoverageReport measure(const TestSuite& suite) = 0;

  const FitnessConfig& fitness_config() const { return config_; }

 protected:
  explicit CoverageEvaluator(FitnessConfig config);

  double score(const TestSuite& suite) override;

 private:
  FitnessConfig config_;
};

/// Runs suites in-process on the instrumented interpreter.
class BuiltinEvaluator : public CoverageEvaluator {
 public:
  /// `program` must outlive the evaluator.
  BuiltinEvaluator(const minipy::Program& program, const UutMetadata& meta, FitnessConfig config);

  CoverageReport measure(const TestSuite& suite) override;

  const minipy::Executor& executor() const { return executor_; }

 private:
  minipy::Executor executor_;
};

/// Renders suites and runs them under the external test runner. Only
/// statement fitness is available from this backend.
class ExternalEvaluator : public CoverageEvaluator {
 public:
  ExternalEvaluator(UutMetadata meta, RunnerConfig runner, FitnessConfig config);

  CoverageReport measure(const TestSuite& suite) override;

 private:
  UutMetadata meta_;
  RunnerConfig runner_;
};

/// Wraps an arbitrary scoring function.
class FunctionEvaluator : public Evaluator {
 public:
  using Score = std::function<double(const TestSuite&)>;

  explicit FunctionEvaluator(Score score) : score_(std::move(score)) {}

 protected:
  double score(const TestSuite& suite) override { return score_(suite); }

 private:
  Score score_;
};

}  // namespace suitegen
