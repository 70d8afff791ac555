#include <gtest/gtest.h>

#include <array>

#include "suitegen/genotype.hpp"
#include "suitegen/random.hpp"
#include "support.hpp"

using namespace suitegen;
using testing_support::bmi_meta;
using testing_support::fixture;
using testing_support::golden_suite;
using testing_support::slurp;

TEST(Genotype, GoldenSuiteDecodes) {
  const TestSuite suite = golden_suite();
  ASSERT_EQ(suite.tests.size(), 1u);
  const auto& calls = suite.tests[0].calls;
  ASSERT_EQ(calls.size(), 8u);
  EXPECT_EQ(calls[0].action_id, kConstructorId);
  EXPECT_EQ(calls[0].args, (std::vector<std::int64_t>{246, 680, 2}));
  EXPECT_EQ(calls[1].action_id, 2);
  EXPECT_EQ(calls[1].args, (std::vector<std::int64_t>{18}));
  EXPECT_EQ(calls[7].action_id, 5);
  EXPECT_FALSE(suite.fitness.has_value());
}

TEST(Genotype, EncodeReproducesGoldenBytes) {
  EXPECT_EQ(encode_suite(golden_suite()), slurp(fixture("golden_genotype.json")));
}

TEST(Genotype, ShapeAccessors) {
  const TestSuite suite = golden_suite();
  EXPECT_EQ(suite.tests[0].action_count(), 7u);
  EXPECT_DOUBLE_EQ(suite.mean_actions(), 7.0);
  EXPECT_DOUBLE_EQ(suite.mean_length(), 8.0);
}

TEST(Genotype, OutOfRangeActionId) {
  try {
    decode_suite("[[[-1, [160, 65, 21]], [9, [1]]]]", bmi_meta());
    FAIL() << "expected GenotypeError";
  } catch (const GenotypeError& e) {
    EXPECT_NE(std::string(e.what()).find("action id 9 out of range"), std::string::npos)
        << e.what();
  }
}

TEST(Genotype, DecodeRejectsInvalidSuites) {
  const UutMetadata& meta = bmi_meta();
  EXPECT_THROW(decode_suite("not json", meta), GenotypeError);
  EXPECT_THROW(decode_suite("[]", meta), GenotypeError);
  EXPECT_THROW(decode_suite("[[]]", meta), GenotypeError);
  // Wrong arity.
  EXPECT_THROW(decode_suite("[[[-1, [160, 65]]]]", meta), GenotypeError);
  EXPECT_THROW(decode_suite("[[[-1, [160, 65, 21]], [3, [1]]]]", meta), GenotypeError);
  // Argument outside its bounds (age max 150, min -1).
  EXPECT_THROW(decode_suite("[[[-1, [160, 65, 151]]]]", meta), GenotypeError);
  EXPECT_THROW(decode_suite("[[[-1, [-2, 65, 21]]]]", meta), GenotypeError);
  // Constructor must come first and only once.
  EXPECT_THROW(decode_suite("[[[5, []]]]", meta), GenotypeError);
  EXPECT_THROW(decode_suite("[[[-1, [1, 1, 1]], [-1, [1, 1, 1]]]]", meta), GenotypeError);
  EXPECT_THROW(decode_suite("[[[-1, [1, 1, 1.5]]]]", meta), GenotypeError);
}

TEST(Genotype, ConstructorOnlyTestIsValid) {
  const TestSuite suite = decode_suite("[[[-1, [1, 1, 1]]]]", bmi_meta());
  EXPECT_EQ(suite.tests[0].action_count(), 0u);
}

TEST(Genotype, SingleActionLimit) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const TestCase test = generate_random_test(bmi_meta(), {20, 1}, rng);
    ASSERT_EQ(test.calls.size(), 2u);
  }
}

TEST(Genotype, ConstructorArgsWithinBounds) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const TestCase test = generate_random_test(bmi_meta(), {}, rng);
    const auto& args = test.calls.at(0).args;
    ASSERT_EQ(args.size(), 3u);
    EXPECT_GE(args[0], -1);
    EXPECT_GE(args[1], -1);
    EXPECT_GE(args[2], -1);
    EXPECT_LE(args[2], 150);
    EXPECT_NO_THROW(validate_test(test, bmi_meta()));
  }
}

TEST(Genotype, ActionCountHistogramIsUniform) {
  Rng rng(2024);
  std::array<int, 21> counts{};
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const TestCase test = generate_random_test(bmi_meta(), {}, rng);
    const auto k = test.action_count();
    ASSERT_GE(k, 1u);
    ASSERT_LE(k, 20u);
    ++counts[k];
  }
  const double expected = n / 20.0;
  double chi2 = 0.0;
  for (int k = 1; k <= 20; ++k) {
    EXPECT_GT(counts[k], 0) << "bin " << k;
    chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
  }
  // Critical value of chi-square with 19 degrees of freedom at p = 0.001.
  EXPECT_LT(chi2, 43.82);
}

TEST(Genotype, ActionIdsCoverAllActions) {
  Rng rng(11);
  std::array<int, 6> seen{};
  for (int i = 0; i < 500; ++i) {
    for (const auto& call : generate_random_test(bmi_meta(), {}, rng).calls) {
      if (call.action_id >= 0) ++seen[static_cast<std::size_t>(call.action_id)];
    }
  }
  for (int c : seen) EXPECT_GT(c, 0);
}

TEST(Genotype, SuiteSizeLimits) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const TestSuite one = generate_random_suite(bmi_meta(), {1, 20}, rng);
    ASSERT_EQ(one.tests.size(), 1u);
    const TestSuite suite = generate_random_suite(bmi_meta(), {}, rng);
    ASSERT_GE(suite.tests.size(), 1u);
    ASSERT_LE(suite.tests.size(), 20u);
    ASSERT_FALSE(suite.fitness.has_value());
    ASSERT_NO_THROW(validate_suite(suite, bmi_meta()));
  }
}

TEST(Genotype, SeedDeterminism) {
  Rng a(77);
  Rng b(77);
  EXPECT_EQ(generate_random_suite(bmi_meta(), {}, a), generate_random_suite(bmi_meta(), {}, b));
}

TEST(Genotype, RoundTripRandomSuites) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const TestSuite suite = generate_random_suite(bmi_meta(), {}, rng);
    const std::string text = encode_suite(suite);
    const TestSuite back = decode_suite(text, bmi_meta());
    ASSERT_EQ(back, suite);
    ASSERT_EQ(encode_suite(back), text);
  }
}

TEST(Genotype, InvalidLimitsRejected) {
  EXPECT_THROW(validate_limits({0, 20}), GenotypeError);
  EXPECT_THROW(validate_limits({20, 0}), GenotypeError);
  EXPECT_NO_THROW(validate_limits({1, 1}));
}
