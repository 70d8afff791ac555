#include "suitegen/engines.hpp"

#include <charconv>
#include <sstream>

#include "suitegen/random.hpp"
#include "suitegen/search_ops.hpp"

namespace suitegen {

namespace {

GenerationStats snapshot(int generation, const TestSuite& best) {
  return {generation, *best.fitness, best.tests.size(), best.mean_actions()};
}

void validate_limits_for(const GenerationLimits& limits) {
  if (limits.max_test_cases < 1) throw ConfigError("max_test_cases must be >= 1");
  if (limits.max_actions < 1) throw ConfigError("max_actions must be >= 1");
}

}  // namespace

void validate(const HillClimberConfig& c) {
  if (c.max_gen < 0) throw ConfigError("max_gen must be >= 0");
  if (c.max_tries < 1) throw ConfigError("max_tries must be >= 1");
  if (c.max_restarts < 0) throw ConfigError("max_restarts must be >= 0");
  validate_limits_for(c.limits);
}

void validate(const GeneticConfig& c) {
  if (c.max_gen < 0) throw ConfigError("max_gen must be >= 0");
  if (c.population_size < 2 || c.population_size % 2 != 0) {
    throw ConfigError("population size must be a positive even number, got " +
                      std::to_string(c.population_size));
  }
  if (c.tournament_size < 1 || c.tournament_size > c.population_size) {
    throw ConfigError("tournament size must be in [1, population size]");
  }
  if (!(c.crossover_probability >= 0.0 && c.crossover_probability <= 1.0)) {
    throw ConfigError("crossover probability must be in [0, 1]");
  }
  if (!(c.mutation_probability >= 0.0 && c.mutation_probability <= 1.0)) {
    throw ConfigError("mutation probability must be in [0, 1]");
  }
  if (c.exhaustion < 0) throw ConfigError("exhaustion must be >= 0");
  validate_limits_for(c.limits);
}

SearchResult hill_climb(const HillClimberConfig& config, const UutMetadata& meta,
                        Evaluator& evaluator) {
  validate(config);
  Rng rng(config.seed);

  TestSuite current = generate_random_suite(meta, config.limits, rng);
  evaluator.evaluate(current);

  SearchResult result;
  result.initial_fitness = *current.fitness;
  result.best = current;

  int gen = 1;
  int restarts = 0;
  while (gen <= config.max_gen && restarts <= config.max_restarts) {
    int tries = 1;
    bool changed = false;
    while (tries < config.max_tries && !changed) {
      TestSuite candidate = mutate(current, meta, config.limits, rng);
      evaluator.evaluate(candidate);
      if (*candidate.fitness > *current.fitness) {
        current = std::move(candidate);
        changed = true;
        if (*current.fitness > *result.best.fitness) result.best = current;
      }
      ++tries;
    }
    // Stuck on a local optimum: start over from a fresh random suite.
    if (!changed) {
      ++restarts;
      current = generate_random_suite(meta, config.limits, rng);
      evaluator.evaluate(current);
    }
    result.stats.push_back(snapshot(gen, result.best));
    ++gen;
  }
  result.generations_run = gen - 1;
  result.restarts_used = restarts;
  return result;
}

SearchResult genetic_algorithm(const GeneticConfig& config, const UutMetadata& meta,
                               Evaluator& evaluator) {
  validate(config);
  Rng rng(config.seed);
  const auto tournament = static_cast<std::size_t>(config.tournament_size);

  std::vector<TestSuite> population;
  population.reserve(static_cast<std::size_t>(config.population_size));
  for (int i = 0; i < config.population_size; ++i) {
    population.push_back(generate_random_suite(meta, config.limits, rng));
    evaluator.evaluate(population.back());
  }

  SearchResult result;
  result.best = population.front();
  result.initial_fitness = *result.best.fitness;

  int gen = 1;
  int stagnation = -1;
  while (gen <= config.max_gen && stagnation <= config.exhaustion) {
    std::vector<TestSuite> next;
    next.reserve(population.size());
    while (next.size() < population.size()) {
      TestSuite first = tournament_select(population, tournament, rng);
      TestSuite second = tournament_select(population, tournament, rng);
      bool first_changed = false;
      bool second_changed = false;

      if (rng.uniform01() < config.crossover_probability) {
        std::tie(first, second) = uniform_crossover(first, second, rng);
        first_changed = second_changed = true;
      }
      if (rng.uniform01() < config.mutation_probability) {
        first = mutate(first, meta, config.limits, rng);
        first_changed = true;
      }
      if (rng.uniform01() < config.mutation_probability) {
        second = mutate(second, meta, config.limits, rng);
        second_changed = true;
      }
      // Unchanged children are copies and keep their parent's score.
      if (first_changed) evaluator.evaluate(first);
      if (second_changed) evaluator.evaluate(second);

      for (TestSuite* child : {&first, &second}) {
        if (*child->fitness > *result.best.fitness) {
          result.best = *child;
          stagnation = -1;
        }
      }
      next.push_back(std::move(first));
      next.push_back(std::move(second));
    }
    population = std::move(next);
    result.stats.push_back(snapshot(gen, result.best));
    ++gen;
    ++stagnation;
  }
  result.generations_run = gen - 1;
  return result;
}

std::string format_number(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string stats_csv(const std::vector<GenerationStats>& stats) {
  std::ostringstream out;
  out << "generation,best_fitness,num_tests,avg_actions\n";
  for (const auto& s : stats) {
    out << s.generation << ',' << format_number(s.best_fitness) << ',' << s.num_tests << ','
        << format_number(s.mean_actions) << '\n';
  }
  return out.str();
}

}  // namespace suitegen
