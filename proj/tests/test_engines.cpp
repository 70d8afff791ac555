#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "suitegen/engines.hpp"
#include "support.hpp"

using namespace suitegen;
using testing_support::bmi_meta;
using testing_support::bmi_program;

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

BuiltinEvaluator statement_evaluator() { return {bmi_program(), bmi_meta(), FitnessConfig{}}; }

// Counts evaluations between consecutive stats rows.
class CountingEvaluator : public Evaluator {
 public:
  explicit CountingEvaluator(Evaluator& inner) : inner_(inner) {}

 protected:
  double score(const TestSuite& suite) override {
    TestSuite copy = suite;
    return inner_.evaluate(copy);
  }

 private:
  Evaluator& inner_;
};

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST(Engines, ConfigValidation) {
  GeneticConfig ga;
  ga.population_size = 21;
  try {
    validate(ga);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("21"), std::string::npos);
  }
  ga.population_size = 0;
  EXPECT_THROW(validate(ga), ConfigError);
  ga.population_size = 4;
  ga.tournament_size = 5;
  EXPECT_THROW(validate(ga), ConfigError);
  ga.tournament_size = 4;
  EXPECT_NO_THROW(validate(ga));
  ga.crossover_probability = 1.5;
  EXPECT_THROW(validate(ga), ConfigError);
  ga.crossover_probability = 0.5;
  ga.mutation_probability = -0.1;
  EXPECT_THROW(validate(ga), ConfigError);
  ga.mutation_probability = 0.5;
  ga.exhaustion = -1;
  EXPECT_THROW(validate(ga), ConfigError);

  HillClimberConfig hc;
  hc.max_tries = 0;
  EXPECT_THROW(validate(hc), ConfigError);
  hc.max_tries = 5;
  hc.limits.max_actions = 0;
  EXPECT_THROW(validate(hc), ConfigError);
}

TEST(Engines, OddPopulationRejectedBeforeAnyEvaluation) {
  GeneticConfig ga;
  ga.population_size = 21;
  FunctionEvaluator eval([](const TestSuite&) { return 0.0; });
  EXPECT_THROW(genetic_algorithm(ga, bmi_meta(), eval), ConfigError);
  EXPECT_EQ(eval.evaluations(), 0u);
}

TEST(HillClimber, ZeroGenerationsReturnsInitialSuite) {
  HillClimberConfig hc;
  hc.max_gen = 0;
  hc.seed = 3;
  auto eval = statement_evaluator();
  const SearchResult r = hill_climb(hc, bmi_meta(), eval);
  EXPECT_EQ(r.generations_run, 0);
  EXPECT_TRUE(r.stats.empty());
  EXPECT_EQ(eval.evaluations(), 1u);
  EXPECT_EQ(*r.best.fitness, r.initial_fitness);
  Rng rng(3);
  EXPECT_EQ(r.best.tests, generate_random_suite(bmi_meta(), hc.limits, rng).tests);
}

TEST(HillClimber, DeterministicPerSeed) {
  HillClimberConfig hc;
  hc.max_gen = 30;
  hc.seed = 42;
  auto e1 = statement_evaluator();
  auto e2 = statement_evaluator();
  const SearchResult a = hill_climb(hc, bmi_meta(), e1);
  const SearchResult b = hill_climb(hc, bmi_meta(), e2);
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(stats_csv(a.stats), stats_csv(b.stats));
}

TEST(HillClimber, ImprovesOverInitialSuite) {
  std::vector<double> initial;
  std::vector<double> best;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    HillClimberConfig hc;
    hc.max_gen = 50;
    hc.seed = seed;
    auto eval = statement_evaluator();
    const SearchResult r = hill_climb(hc, bmi_meta(), eval);
    initial.push_back(r.initial_fitness);
    best.push_back(*r.best.fitness);
    EXPECT_GE(*r.best.fitness, r.initial_fitness);
  }
  EXPECT_GT(median(best), median(initial));
}

TEST(HillClimber, EvaluationsPerGenerationBounded) {
  HillClimberConfig hc;
  hc.max_gen = 40;
  hc.max_tries = 7;
  hc.max_restarts = 1000;
  hc.seed = 9;
  auto inner = statement_evaluator();
  // max_tries - 1 mutants plus at most one restart suite per generation.
  CountingEvaluator eval(inner);
  const SearchResult r = hill_climb(hc, bmi_meta(), eval);
  EXPECT_EQ(r.generations_run, 40);
  EXPECT_LE(eval.evaluations(), 1u + 40u * 7u);
}

TEST(HillClimber, RestartLimitStopsSearch) {
  HillClimberConfig hc;
  hc.max_gen = 100;
  hc.max_tries = 2;
  hc.max_restarts = 3;
  FunctionEvaluator eval([](const TestSuite&) { return 1.0; });
  const SearchResult r = hill_climb(hc, bmi_meta(), eval);
  // Nothing ever improves, so every generation restarts.
  EXPECT_EQ(r.restarts_used, 4);
  EXPECT_EQ(r.generations_run, 4);
}

TEST(HillClimber, BestStatsAreMonotone) {
  HillClimberConfig hc;
  hc.max_gen = 60;
  hc.seed = 1;
  auto eval = statement_evaluator();
  const SearchResult r = hill_climb(hc, bmi_meta(), eval);
  for (std::size_t i = 1; i < r.stats.size(); ++i) {
    EXPECT_GE(r.stats[i].best_fitness, r.stats[i - 1].best_fitness);
  }
  EXPECT_EQ(r.stats.back().best_fitness, *r.best.fitness);
}

TEST(Genetic, DeterministicPerSeed) {
  GeneticConfig ga;
  ga.max_gen = 20;
  ga.seed = 5;
  auto e1 = statement_evaluator();
  auto e2 = statement_evaluator();
  const SearchResult a = genetic_algorithm(ga, bmi_meta(), e1);
  const SearchResult b = genetic_algorithm(ga, bmi_meta(), e2);
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(stats_csv(a.stats), stats_csv(b.stats));
  ga.seed = 6;
  auto e3 = statement_evaluator();
  EXPECT_NE(stats_csv(genetic_algorithm(ga, bmi_meta(), e3).stats), stats_csv(a.stats));
}

TEST(Genetic, ZeroExhaustionOnFlatLandscapeRunsTwoGenerations) {
  GeneticConfig ga;
  ga.exhaustion = 0;
  ga.seed = 2;
  FunctionEvaluator eval([](const TestSuite&) { return 7.0; });
  const SearchResult r = genetic_algorithm(ga, bmi_meta(), eval);
  EXPECT_EQ(r.generations_run, 2);
  EXPECT_EQ(r.stats.size(), 2u);
}

TEST(Genetic, ExhaustionAboveMaxGenRunsEveryGeneration) {
  GeneticConfig ga;
  ga.max_gen = 25;
  ga.exhaustion = 26;
  ga.population_size = 6;
  ga.tournament_size = 2;
  FunctionEvaluator eval([](const TestSuite&) { return 0.0; });
  const SearchResult r = genetic_algorithm(ga, bmi_meta(), eval);
  ASSERT_EQ(r.stats.size(), 25u);
  for (int i = 0; i < 25; ++i) EXPECT_EQ(r.stats[static_cast<std::size_t>(i)].generation, i + 1);
  EXPECT_EQ(csv_lines(stats_csv(r.stats)).size(), 26u);
}

TEST(Genetic, NoVariationMeansNoNewEvaluations) {
  GeneticConfig ga;
  ga.max_gen = 10;
  ga.exhaustion = 100;
  ga.crossover_probability = 0.0;
  ga.mutation_probability = 0.0;
  auto eval = statement_evaluator();
  const SearchResult r = genetic_algorithm(ga, bmi_meta(), eval);
  EXPECT_EQ(eval.evaluations(), 20u);
  for (std::size_t i = 1; i < r.stats.size(); ++i) {
    EXPECT_GE(r.stats[i].best_fitness, r.stats[i - 1].best_fitness);
  }
}

TEST(Genetic, BestIsMonotoneAndMatchesScore) {
  GeneticConfig ga;
  ga.max_gen = 40;
  ga.seed = 11;
  auto eval = statement_evaluator();
  const SearchResult r = genetic_algorithm(ga, bmi_meta(), eval);
  for (std::size_t i = 1; i < r.stats.size(); ++i) {
    ASSERT_GE(r.stats[i].best_fitness, r.stats[i - 1].best_fitness);
  }
  EXPECT_GE(*r.best.fitness, r.initial_fitness);
  TestSuite copy = r.best;
  auto fresh = statement_evaluator();
  EXPECT_EQ(fresh.evaluate(copy), *r.best.fitness);
  EXPECT_EQ(r.stats.back().num_tests, r.best.tests.size());
  EXPECT_DOUBLE_EQ(r.stats.back().mean_actions, r.best.mean_actions());
}

TEST(Genetic, EvaluationsPerGenerationAtMostPopulation) {
  GeneticConfig ga;
  ga.max_gen = 15;
  ga.exhaustion = 100;
  ga.population_size = 8;
  ga.tournament_size = 3;
  auto eval = statement_evaluator();
  const SearchResult r = genetic_algorithm(ga, bmi_meta(), eval);
  EXPECT_EQ(r.generations_run, 15);
  EXPECT_LE(eval.evaluations(), 8u + 15u * 8u);
}

TEST(Genetic, RespectsGrowthLimits) {
  GeneticConfig ga;
  ga.max_gen = 30;
  ga.limits = {3, 4};
  auto eval = statement_evaluator();
  const SearchResult r = genetic_algorithm(ga, bmi_meta(), eval);
  EXPECT_LE(r.best.tests.size(), 6u);
  for (const auto& t : r.best.tests) EXPECT_LE(t.action_count(), 8u);
}

TEST(StatsCsv, Format) {
  const std::vector<GenerationStats> rows = {{1, 32.5, 3, 4.0}, {2, 1.0 / 3.0, 12, 2.25}};
  EXPECT_EQ(stats_csv(rows),
            "generation,best_fitness,num_tests,avg_actions\n"
            "1,32.5,3,4\n"
            "2,0.3333333333333333,12,2.25\n");
  EXPECT_EQ(stats_csv({}), "generation,best_fitness,num_tests,avg_actions\n");
}

TEST(StatsCsv, NumbersRoundTrip) {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const double v = (rng.uniform01() - 0.5) * 1e6;
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(100.0), "100");
  EXPECT_EQ(format_number(-0.5), "-0.5");
}
