#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "suitegen/random.hpp"

namespace suitegen {

/// Raised for any malformed or inconsistent metadata file. The message starts
/// with the JSON path of the offending field, e.g. `actions[2].parameters[0]`.
class MetadataError : public std::runtime_error {
 public:
  MetadataError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class DataType { Integer };

inline constexpr std::int64_t kDefaultParamMin = -1000;
inline constexpr std::int64_t kDefaultParamMax = 1000;
inline constexpr std::int64_t kDefaultWidth = kDefaultParamMax - kDefaultParamMin;

struct ParamSpec {
  DataType datatype = DataType::Integer;
  std::optional<std::int64_t> min;
  std::optional<std::int64_t> max;

  // An absent bound defaults to +/-1000; if that would invert the range it
  // is placed a default-width away from the bound that is present instead.
  std::int64_t effective_min() const {
    if (min) return *min;
    return (max && *max < kDefaultParamMin) ? *max - kDefaultWidth : kDefaultParamMin;
  }
  std::int64_t effective_max() const {
    if (max) return *max;
    return (min && *min > kDefaultParamMax) ? *min + kDefaultWidth : kDefaultParamMax;
  }
  bool admits(std::int64_t value) const {
    return value >= effective_min() && value <= effective_max();
  }

  bool operator==(const ParamSpec&) const = default;
};

enum class ActionKind { Method, Assign };

struct ActionSpec {
  std::string name;
  ActionKind kind = ActionKind::Method;
  std::vector<ParamSpec> params;

  bool operator==(const ActionSpec&) const = default;
};

/// Identifier reserved for the constructor call in a genotype.
inline constexpr int kConstructorId = -1;

/// Description of the unit under test: how to build it and which actions
/// the search may apply to it. Action `i` in `actions` is genotype id `i`.
struct UutMetadata {
  std::string file;
  std::string location;
  std::string class_name;
  std::vector<ParamSpec> constructor;
  std::vector<ActionSpec> actions;

  /// Parameter list of genotype id `action_id` (-1 is the constructor).
  const std::vector<ParamSpec>& params_of(int action_id) const;
  int action_count() const { return static_cast<int>(actions.size()); }

  bool operator==(const UutMetadata&) const = default;
};

UutMetadata parse_metadata(std::string_view json_text);
UutMetadata load_metadata(const std::string& path);

/// Canonical JSON rendering in the same layout `parse_metadata` accepts.
std::string render_metadata(const UutMetadata& meta);

std::int64_t sample_param(const ParamSpec& spec, Rng& rng);

std::string_view to_string(ActionKind kind);

}  // namespace suitegen
