#include <gtest/gtest.h>

#include <string>

#include "suitegen/metadata.hpp"
#include "suitegen/random.hpp"
#include "support.hpp"

using namespace suitegen;
using testing_support::bmi_meta;
using testing_support::fixture;
using testing_support::slurp;

namespace {

std::string with_actions(const std::string& actions) {
  return R"({"file": "m", "location": ".", "class": "C",
             "constructor": {"parameters": []}, "actions": )" +
         actions + "}";
}

std::string error_of(const std::string& text) {
  try {
    parse_metadata(text);
  } catch (const MetadataError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Metadata, ParsesBmiFixture) {
  const UutMetadata& meta = bmi_meta();
  EXPECT_EQ(meta.file, "bmi_calculator");
  EXPECT_EQ(meta.class_name, "BMICalc");
  ASSERT_EQ(meta.constructor.size(), 3u);
  ASSERT_EQ(meta.actions.size(), 6u);
  EXPECT_EQ(meta.actions[1].name, "weight");
  EXPECT_EQ(meta.actions[1].kind, ActionKind::Assign);
  EXPECT_EQ(meta.actions[5].name, "classify_bmi_adults");
  EXPECT_EQ(meta.actions[5].kind, ActionKind::Method);
  EXPECT_TRUE(meta.actions[5].params.empty());
  EXPECT_EQ(meta.constructor[2].min, -1);
  EXPECT_EQ(meta.constructor[2].max, 150);
  EXPECT_FALSE(meta.constructor[0].max.has_value());
}

TEST(Metadata, ParamsOfConstructorAndActions) {
  const UutMetadata& meta = bmi_meta();
  EXPECT_EQ(meta.params_of(kConstructorId).size(), 3u);
  EXPECT_EQ(meta.params_of(2).size(), 1u);
  EXPECT_EQ(meta.params_of(3).size(), 0u);
}

TEST(Metadata, RoundTripIsStable) {
  const UutMetadata first = parse_metadata(slurp(fixture("bmi.json")));
  const std::string rendered = render_metadata(first);
  const UutMetadata second = parse_metadata(rendered);
  EXPECT_EQ(first, second);
  EXPECT_EQ(render_metadata(second), rendered);
}

TEST(Metadata, RoundTripKeepsAbsentBounds) {
  const auto text = with_actions(
      R"([{"name": "f", "type": "method", "parameters": [{"type": "integer"},
          {"type": "integer", "max": 3}, {"type": "integer", "min": 2}]}])");
  const UutMetadata meta = parse_metadata(text);
  EXPECT_EQ(parse_metadata(render_metadata(meta)), meta);
}

TEST(Metadata, EmptyActionsRejected) {
  EXPECT_NE(error_of(with_actions("[]")).find("actions must be non-empty"), std::string::npos);
}

TEST(Metadata, MinAboveMaxCitesParameterPath) {
  const auto msg = error_of(with_actions(
      R"([{"name": "a", "type": "method"},
          {"name": "b", "type": "method", "parameters": [{"type": "integer"},
                                                         {"type": "integer", "min": 5, "max": 3}]}])"));
  EXPECT_NE(msg.find("actions[1].parameters[1]"), std::string::npos) << msg;
  EXPECT_NE(msg.find("min 5 exceeds max 3"), std::string::npos) << msg;
}

TEST(Metadata, UnknownDatatypeRejected) {
  const auto msg = error_of(with_actions(
      R"([{"name": "a", "type": "method", "parameters": [{"type": "float"}]}])"));
  EXPECT_NE(msg.find("actions[0].parameters[0].type"), std::string::npos) << msg;
}

TEST(Metadata, AssignNeedsExactlyOneParameter) {
  EXPECT_FALSE(error_of(with_actions(R"([{"name": "a", "type": "assign"}])")).empty());
  EXPECT_FALSE(error_of(with_actions(R"([{"name": "a", "type": "assign", "parameters":
      [{"type": "integer"}, {"type": "integer"}]}])"))
                   .empty());
}

TEST(Metadata, MalformedAndStructuralErrors) {
  EXPECT_NE(error_of("{not json").find("malformed JSON"), std::string::npos);
  EXPECT_FALSE(error_of("[]").empty());
  EXPECT_FALSE(error_of(R"({"file": "m", "location": ".", "class": "C", "actions": []})").empty());
  EXPECT_FALSE(error_of(with_actions(R"([{"name": "a", "type": "method"},
                                        {"name": "a", "type": "method"}])"))
                   .empty());
  EXPECT_FALSE(error_of(with_actions(R"([{"name": "a", "type": "property"}])")).empty());
}

TEST(Metadata, MissingFileReported) {
  EXPECT_THROW(load_metadata("/nonexistent/meta.json"), MetadataError);
}

TEST(Metadata, EffectiveBoundsDefaults) {
  ParamSpec none;
  EXPECT_EQ(none.effective_min(), -1000);
  EXPECT_EQ(none.effective_max(), 1000);
  ParamSpec lower{DataType::Integer, -1, std::nullopt};
  EXPECT_EQ(lower.effective_min(), -1);
  EXPECT_EQ(lower.effective_max(), 1000);
  ParamSpec high_min{DataType::Integer, 5000, std::nullopt};
  EXPECT_EQ(high_min.effective_min(), 5000);
  EXPECT_EQ(high_min.effective_max(), 7000);
  ParamSpec low_max{DataType::Integer, std::nullopt, -5000};
  EXPECT_EQ(low_max.effective_min(), -7000);
  EXPECT_EQ(low_max.effective_max(), -5000);
}

TEST(SampleParam, SingletonRange) {
  Rng rng(1);
  const ParamSpec spec{DataType::Integer, 7, 7};
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_param(spec, rng), 7);
}

TEST(SampleParam, AgeBoundsHoldForManySeeds) {
  const ParamSpec age{DataType::Integer, -1, 150};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    for (int i = 0; i < 50; ++i) {
      const auto v = sample_param(age, rng);
      ASSERT_GE(v, -1);
      ASSERT_LE(v, 150);
    }
  }
}

TEST(SampleParam, UnboundedCoversWholeDefaultRange) {
  const ParamSpec spec;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    for (int i = 0; i < 2000; ++i) {
      const auto v = sample_param(spec, rng);
      ASSERT_GE(v, -1000);
      ASSERT_LE(v, 1000);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  // 10^5 draws over 2001 values: both extremes appear with overwhelming odds.
  EXPECT_EQ(lo, -1000);
  EXPECT_EQ(hi, 1000);
}

TEST(SampleParam, RandomSpecsStayInBounds) {
  Rng meta_rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    ParamSpec spec;
    if (meta_rng.coin()) spec.min = meta_rng.uniform_int(-5000, 5000);
    if (meta_rng.coin()) {
      const std::int64_t base = spec.min.value_or(meta_rng.uniform_int(-5000, 5000));
      spec.max = base + meta_rng.uniform_int(0, 100);
    }
    Rng rng(static_cast<std::uint64_t>(trial));
    for (int i = 0; i < 100; ++i) {
      const auto v = sample_param(spec, rng);
      ASSERT_TRUE(spec.admits(v)) << v;
      if (spec.min) {
        ASSERT_GE(v, *spec.min);
      }
      if (spec.max) {
        ASSERT_LE(v, *spec.max);
      }
    }
  }
}

TEST(Rng, DrawsStayInRange) {
  Rng rng(5);
  bool saw_negative = false;
  bool saw_positive = false;
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.uniform_int(INT64_MIN, INT64_MAX);
    saw_negative = saw_negative || v < 0;
    saw_positive = saw_positive || v > 0;
  }
  EXPECT_TRUE(saw_negative && saw_positive);
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.uniform_int(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
  }
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, SameSeedSameStream) {
  Rng a(123);
  Rng b(123);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
}
