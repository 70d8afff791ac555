#include "suitegen/evaluator.hpp"

namespace suitegen {

CoverageEvaluator::CoverageEvaluator(FitnessConfig config) : config_(config) {
  validate_fitness_config(config_);
}

double CoverageEvaluator::score(const TestSuite& suite) {
  return score_suite(suite, measure(suite), config_);
}

BuiltinEvaluator::BuiltinEvaluator(const minipy::Program& program, const UutMetadata& meta,
                                   FitnessConfig config)
    : CoverageEvaluator(config), executor_(program, meta) {
  if (config.kind == FitnessKind::BranchDistance && executor_.goals().goals.empty()) {
    throw FitnessError("branch fitness needs at least one branch in " + program.class_name);
  }
}

CoverageReport BuiltinEvaluator::measure(const TestSuite& suite) {
  return executor_.execute(suite);
}

ExternalEvaluator::ExternalEvaluator(UutMetadata meta, RunnerConfig runner, FitnessConfig config)
    : CoverageEvaluator(config), meta_(std::move(meta)), runner_(std::move(runner)) {
  if (config.kind != FitnessKind::Statement) {
    throw FitnessError("the external backend only supports statement fitness");
  }
}

CoverageReport ExternalEvaluator::measure(const TestSuite& suite) {
  return run_external_coverage(suite, meta_, runner_);
}

}  // namespace suitegen
