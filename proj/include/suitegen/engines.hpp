#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "suitegen/evaluator.hpp"
#include "suitegen/genotype.hpp"
#include "suitegen/metadata.hpp"

namespace suitegen {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HillClimberConfig {
  int max_gen = 200;
  int max_tries = 200;
  int max_restarts = 5;
  GenerationLimits limits;
  std::uint64_t seed = 0;
};

struct GeneticConfig {
  int max_gen = 200;
  int population_size = 20;
  int tournament_size = 6;
  double crossover_probability = 0.7;
  double mutation_probability = 0.7;
  int exhaustion = 30;
  GenerationLimits limits;
  std::uint64_t seed = 0;
};

void validate(const HillClimberConfig& config);
void validate(const GeneticConfig& config);

/// State of the best-so-far suite at the end of one generation.
struct GenerationStats {
  int generation = 0;
  double best_fitness = 0.0;
  std::size_t num_tests = 0;
  double mean_actions = 0.0;
};

struct SearchResult {
  TestSuite best;
  double initial_fitness = 0.0;
  int generations_run = 0;
  int restarts_used = 0;
  std::vector<GenerationStats> stats;
};

SearchResult hill_climb(const HillClimberConfig& config, const UutMetadata& meta,
                        Evaluator& evaluator);

SearchResult genetic_algorithm(const GeneticConfig& config, const UutMetadata& meta,
                               Evaluator& evaluator);

/// `generation,best_fitness,num_tests,avg_actions` with one row per generation.
std::string stats_csv(const std::vector<GenerationStats>& stats);

/// Shortest decimal text that reads back as exactly `value`.
std::string format_number(double value);

}  // namespace suitegen
