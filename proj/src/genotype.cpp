#include "suitegen/genotype.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace suitegen {

namespace {

std::string call_path(std::size_t test, std::size_t call) {
  return "test " + std::to_string(test) + ", call " + std::to_string(call);
}

void validate_call(const ActionCall& call, const UutMetadata& meta, const std::string& where) {
  if (call.action_id < kConstructorId || call.action_id >= meta.action_count()) {
    throw GenotypeError(where + ": action id " + std::to_string(call.action_id) +
                        " out of range");
  }
  const auto& params = meta.params_of(call.action_id);
  if (call.args.size() != params.size()) {
    throw GenotypeError(where + ": action id " + std::to_string(call.action_id) + " takes " +
                        std::to_string(params.size()) + " argument(s), got " +
                        std::to_string(call.args.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i].admits(call.args[i])) {
      throw GenotypeError(where + ": argument " + std::to_string(i) + " = " +
                          std::to_string(call.args[i]) + " outside [" +
                          std::to_string(params[i].effective_min()) + ", " +
                          std::to_string(params[i].effective_max()) + "]");
    }
  }
}

void validate_test_at(const TestCase& test, const UutMetadata& meta, std::size_t index) {
  if (test.calls.empty()) {
    throw GenotypeError("test " + std::to_string(index) + ": empty test case");
  }
  for (std::size_t c = 0; c < test.calls.size(); ++c) {
    const auto& call = test.calls[c];
    const bool is_ctor = call.action_id == kConstructorId;
    if (c == 0 && !is_ctor) {
      throw GenotypeError(call_path(index, c) + ": first call must be the constructor (-1)");
    }
    if (c > 0 && is_ctor) {
      throw GenotypeError(call_path(index, c) + ": constructor may only appear first");
    }
    validate_call(call, meta, call_path(index, c));
  }
}

}  // namespace

double TestSuite::mean_actions() const {
  if (tests.empty()) return 0.0;
  std::size_t total = 0;
  for (const auto& t : tests) total += t.action_count();
  return static_cast<double>(total) / static_cast<double>(tests.size());
}

double TestSuite::mean_length() const {
  if (tests.empty()) return 0.0;
  std::size_t total = 0;
  for (const auto& t : tests) total += t.calls.size();
  return static_cast<double>(total) / static_cast<double>(tests.size());
}

void validate_limits(const GenerationLimits& limits) {
  if (limits.max_test_cases < 1) throw GenotypeError("max_test_cases must be >= 1");
  if (limits.max_actions < 1) throw GenotypeError("max_actions must be >= 1");
}

void validate_test(const TestCase& test, const UutMetadata& meta) {
  validate_test_at(test, meta, 0);
}

void validate_suite(const TestSuite& suite, const UutMetadata& meta) {
  if (suite.tests.empty()) throw GenotypeError("suite has no test cases");
  for (std::size_t t = 0; t < suite.tests.size(); ++t) validate_test_at(suite.tests[t], meta, t);
}

ActionCall random_call(int action_id, const UutMetadata& meta, Rng& rng) {
  ActionCall call{action_id, {}};
  for (const auto& spec : meta.params_of(action_id)) call.args.push_back(sample_param(spec, rng));
  return call;
}

TestCase generate_random_test(const UutMetadata& meta, const GenerationLimits& limits, Rng& rng) {
  TestCase test;
  test.calls.push_back(random_call(kConstructorId, meta, rng));
  const auto count = rng.uniform_int(1, limits.max_actions);
  for (std::int64_t i = 0; i < count; ++i) {
    const int id = static_cast<int>(rng.index(meta.actions.size()));
    test.calls.push_back(random_call(id, meta, rng));
  }
  return test;
}

TestSuite generate_random_suite(const UutMetadata& meta, const GenerationLimits& limits,
                                Rng& rng) {
  TestSuite suite;
  const auto count = rng.uniform_int(1, limits.max_test_cases);
  for (std::int64_t i = 0; i < count; ++i) {
    suite.tests.push_back(generate_random_test(meta, limits, rng));
  }
  return suite;
}

std::string encode_suite(const TestSuite& suite) {
  // Hand-written so the layout matches the printed genotype form: one call
  // per line, tests separated by commas at the outer level.
  std::ostringstream out;
  out << "[\n";
  for (std::size_t t = 0; t < suite.tests.size(); ++t) {
    out << "    [\n";
    const auto& calls = suite.tests[t].calls;
    for (std::size_t c = 0; c < calls.size(); ++c) {
      out << "        [" << calls[c].action_id << ", [";
      for (std::size_t a = 0; a < calls[c].args.size(); ++a) {
        if (a) out << ", ";
        out << calls[c].args[a];
      }
      out << "]]" << (c + 1 < calls.size() ? "," : "") << "\n";
    }
    out << "    ]" << (t + 1 < suite.tests.size() ? "," : "") << "\n";
  }
  out << "]\n";
  return out.str();
}

TestSuite decode_suite(std::string_view text, const UutMetadata& meta) {
  using nlohmann::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GenotypeError(std::string("malformed genotype JSON: ") + e.what());
  }
  if (!root.is_array()) throw GenotypeError("genotype must be an array of test cases");

  TestSuite suite;
  for (std::size_t t = 0; t < root.size(); ++t) {
    const json& test_json = root[t];
    if (!test_json.is_array()) {
      throw GenotypeError("test " + std::to_string(t) + ": expected an array of calls");
    }
    TestCase test;
    for (std::size_t c = 0; c < test_json.size(); ++c) {
      const json& call_json = test_json[c];
      if (!call_json.is_array() || call_json.size() != 2 || !call_json[0].is_number_integer() ||
          !call_json[1].is_array()) {
        throw GenotypeError(call_path(t, c) + ": expected [id, [args...]]");
      }
      ActionCall call;
      const auto id = call_json[0].get<std::int64_t>();
      if (id < kConstructorId || id >= meta.action_count()) {
        throw GenotypeError(call_path(t, c) + ": action id " + std::to_string(id) +
                            " out of range");
      }
      call.action_id = static_cast<int>(id);
      for (const auto& arg : call_json[1]) {
        if (!arg.is_number_integer()) {
          throw GenotypeError(call_path(t, c) + ": arguments must be integers");
        }
        call.args.push_back(arg.get<std::int64_t>());
      }
      test.calls.push_back(std::move(call));
    }
    suite.tests.push_back(std::move(test));
  }
  validate_suite(suite, meta);
  return suite;
}

TestSuite load_suite(const std::string& path, const UutMetadata& meta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GenotypeError("cannot read genotype file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return decode_suite(buffer.str(), meta);
}

}  // namespace suitegen
