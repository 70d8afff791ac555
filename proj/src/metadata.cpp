#include "suitegen/metadata.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace suitegen {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw MetadataError(path, std::string("missing key \"") + key + "\"");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& path) {
  const json& value = require(obj, key, path);
  if (!value.is_string()) throw MetadataError(path + "." + key, "expected a string");
  return value.get<std::string>();
}

std::optional<std::int64_t> optional_bound(const json& obj, const char* key,
                                           const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) throw MetadataError(path + "." + key, "expected an integer");
  return it->get<std::int64_t>();
}

ParamSpec parse_param(const json& obj, const std::string& path) {
  if (!obj.is_object()) throw MetadataError(path, "expected an object");
  ParamSpec spec;
  const std::string type = require_string(obj, "type", path);
  if (type != "integer") {
    throw MetadataError(path + ".type", "unsupported datatype \"" + type + "\" (only integer)");
  }
  spec.min = optional_bound(obj, "min", path);
  spec.max = optional_bound(obj, "max", path);
  if (spec.min && spec.max && *spec.min > *spec.max) {
    throw MetadataError(path, "min " + std::to_string(*spec.min) + " exceeds max " +
                                  std::to_string(*spec.max));
  }
  return spec;
}

std::vector<ParamSpec> parse_params(const json& obj, const std::string& path) {
  std::vector<ParamSpec> params;
  auto it = obj.find("parameters");
  if (it == obj.end() || it->is_null()) return params;
  if (!it->is_array()) throw MetadataError(path + ".parameters", "expected an array");
  for (std::size_t i = 0; i < it->size(); ++i) {
    params.push_back(parse_param((*it)[i], path + ".parameters[" + std::to_string(i) + "]"));
  }
  return params;
}

json render_param(const ParamSpec& spec) {
  json obj = {{"type", "integer"}};
  if (spec.min) obj["min"] = *spec.min;
  if (spec.max) obj["max"] = *spec.max;
  return obj;
}

}  // namespace

const std::vector<ParamSpec>& UutMetadata::params_of(int action_id) const {
  if (action_id == kConstructorId) return constructor;
  return actions.at(static_cast<std::size_t>(action_id)).params;
}

std::string_view to_string(ActionKind kind) {
  return kind == ActionKind::Assign ? "assign" : "method";
}

UutMetadata parse_metadata(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw MetadataError("$", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw MetadataError("$", "expected a top-level object");

  UutMetadata meta;
  meta.file = require_string(root, "file", "$");
  meta.location = require_string(root, "location", "$");
  meta.class_name = require_string(root, "class", "$");

  const json& ctor = require(root, "constructor", "$");
  if (!ctor.is_object()) throw MetadataError("constructor", "expected an object");
  meta.constructor = parse_params(ctor, "constructor");

  const json& actions = require(root, "actions", "$");
  if (!actions.is_array()) throw MetadataError("actions", "expected an array");
  if (actions.empty()) throw MetadataError("actions", "actions must be non-empty");

  std::set<std::string> seen;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const std::string path = "actions[" + std::to_string(i) + "]";
    const json& entry = actions[i];
    if (!entry.is_object()) throw MetadataError(path, "expected an object");
    ActionSpec action;
    action.name = require_string(entry, "name", path);
    const std::string kind = require_string(entry, "type", path);
    if (kind == "method") {
      action.kind = ActionKind::Method;
    } else if (kind == "assign") {
      action.kind = ActionKind::Assign;
    } else {
      throw MetadataError(path + ".type", "unknown action type \"" + kind + "\"");
    }
    action.params = parse_params(entry, path);
    if (action.kind == ActionKind::Assign && action.params.size() != 1) {
      throw MetadataError(path, "assign action \"" + action.name +
                                    "\" must have exactly one parameter");
    }
    if (!seen.insert(action.name).second) {
      throw MetadataError(path + ".name", "duplicate action name \"" + action.name + "\"");
    }
    meta.actions.push_back(std::move(action));
  }
  return meta;
}

UutMetadata load_metadata(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MetadataError("$", "cannot read metadata file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_metadata(buffer.str());
}

std::string render_metadata(const UutMetadata& meta) {
  json ctor_params = json::array();
  for (const auto& p : meta.constructor) ctor_params.push_back(render_param(p));

  json actions = json::array();
  for (const auto& action : meta.actions) {
    json entry = {{"name", action.name}, {"type", std::string(to_string(action.kind))}};
    if (!action.params.empty()) {
      json params = json::array();
      for (const auto& p : action.params) params.push_back(render_param(p));
      entry["parameters"] = std::move(params);
    }
    actions.push_back(std::move(entry));
  }

  json root = {{"file", meta.file},
               {"location", meta.location},
               {"class", meta.class_name},
               {"constructor", {{"parameters", std::move(ctor_params)}}},
               {"actions", std::move(actions)}};
  return root.dump(4) + "\n";
}

std::int64_t sample_param(const ParamSpec& spec, Rng& rng) {
  return rng.uniform_int(spec.effective_min(), spec.effective_max());
}

}  // namespace suitegen
