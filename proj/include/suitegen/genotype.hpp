#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "suitegen/metadata.hpp"
#include "suitegen/random.hpp"

namespace suitegen {

class GenotypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One step of a test: the constructor (id -1) or an action from the metadata.
struct ActionCall {
  int action_id = kConstructorId;
  std::vector<std::int64_t> args;

  bool operator==(const ActionCall&) const = default;
};

/// A constructor call followed by zero or more actions.
struct TestCase {
  std::vector<ActionCall> calls;

  std::size_t action_count() const { return calls.empty() ? 0 : calls.size() - 1; }

  bool operator==(const TestCase&) const = default;
};

/// A candidate solution. `fitness` caches the last evaluation and is reset by
/// anything that changes the tests.
struct TestSuite {
  std::vector<TestCase> tests;
  std::optional<double> fitness;

  /// Mean number of post-constructor actions per test.
  double mean_actions() const;
  /// Mean number of calls per test, constructor included.
  double mean_length() const;

  /// Structural equality; the cached fitness is ignored.
  bool operator==(const TestSuite& other) const { return tests == other.tests; }
};

struct GenerationLimits {
  int max_test_cases = 20;
  int max_actions = 20;
};

void validate_limits(const GenerationLimits& limits);

/// Throws GenotypeError describing the first violated invariant.
void validate_test(const TestCase& test, const UutMetadata& meta);
void validate_suite(const TestSuite& suite, const UutMetadata& meta);

ActionCall random_call(int action_id, const UutMetadata& meta, Rng& rng);
TestCase generate_random_test(const UutMetadata& meta, const GenerationLimits& limits, Rng& rng);
TestSuite generate_random_suite(const UutMetadata& meta, const GenerationLimits& limits, Rng& rng);

/// Nested-array JSON: suite = [test...], test = [[id, [args...]]...].
std::string encode_suite(const TestSuite& suite);
TestSuite decode_suite(std::string_view text, const UutMetadata& meta);

TestSuite load_suite(const std::string& path, const UutMetadata& meta);

}  // namespace suitegen
