#include "kresling/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace kresling {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(fmt::format("{}: {}", field, what));
}

void check_keys(const json& object, const std::string& field,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(field, fmt::format("unknown key '{}'", key));
    }
  }
}

const json& require(const json& object, const std::string& field, const char* key) {
  if (!object.contains(key)) fail(field, fmt::format("missing required key '{}'", key));
  return object.at(key);
}

double number(const json& value, const std::string& field) {
  if (!value.is_number()) fail(field, fmt::format("expected a number, got {}", value.dump()));
  return value.get<double>();
}

int integer(const json& value, const std::string& field) {
  if (!value.is_number_integer()) {
    fail(field, fmt::format("expected an integer, got {}", value.dump()));
  }
  return value.get<int>();
}

double number_or(const json& object, const std::string& field, const char* key, double fallback) {
  return object.contains(key) ? number(object.at(key), field + "." + key) : fallback;
}

Handedness parse_handedness(const json& value, const std::string& field) {
  if (value == "CW") return Handedness::CW;
  if (value == "CCW") return Handedness::CCW;
  fail(field, fmt::format("handedness must be \"CW\" or \"CCW\", got {}", value.dump()));
}

ActuatorType parse_type(const json& value, const std::string& field) {
  if (value == "I") return ActuatorType::TypeI;
  if (value == "II") return ActuatorType::TypeII;
  if (value == "III") return ActuatorType::TypeIII;
  if (value == "Custom") return ActuatorType::Custom;
  fail(field, fmt::format("type must be one of \"I\", \"II\", \"III\", \"Custom\", got {}",
                          value.dump()));
}

ModulePattern parse_pattern(const json& object, const std::string& field) {
  if (!object.is_object()) fail(field, "expected an object");
  check_keys(object, field, {"a", "b", "c", "delta0_deg", "n_sides", "handedness"});
  const int n_sides =
      object.contains("n_sides") ? integer(object.at("n_sides"), field + ".n_sides") : 6;
  const Handedness handedness = object.contains("handedness")
                                    ? parse_handedness(object.at("handedness"),
                                                       field + ".handedness")
                                    : Handedness::CW;
  try {
    return ModulePattern(number(require(object, field, "a"), field + ".a"),
                         number(require(object, field, "b"), field + ".b"),
                         number(require(object, field, "c"), field + ".c"),
                         number(require(object, field, "delta0_deg"), field + ".delta0_deg"),
                         n_sides, handedness);
  } catch (const GeometryError& e) {
    fail(field, e.what());
  }
}

ModulePattern resolve_pattern(const json& value, const std::string& field,
                              const std::map<std::string, ModulePattern>& patterns) {
  if (value.is_string()) {
    const auto name = value.get<std::string>();
    const auto it = patterns.find(name);
    if (it == patterns.end()) fail(field, fmt::format("unresolved pattern reference '{}'", name));
    return it->second;
  }
  return parse_pattern(value, field);
}

ActuatorSpec parse_actuator(const json& object, const std::string& field,
                            const std::map<std::string, ModulePattern>& patterns) {
  if (!object.is_object()) fail(field, "expected an object");
  check_keys(object, field,
             {"pattern", "modules", "type", "handedness", "k_c1", "k_c2", "skeleton_ratio"});
  const ActuatorType type = parse_type(require(object, field, "type"), field + ".type");
  const CreaseConstants crease{number_or(object, field, "k_c1", CreaseConstants{}.k_c1),
                               number_or(object, field, "k_c2", CreaseConstants{}.k_c2)};
  const double k = number_or(object, field, "skeleton_ratio", 0.0);
  const json& modules = require(object, field, "modules");

  try {
    if (modules.is_array()) {
      if (object.contains("pattern") || object.contains("handedness")) {
        fail(field, "'pattern' and 'handedness' are not allowed when 'modules' is a list");
      }
      std::vector<ModulePattern> list;
      for (std::size_t i = 0; i < modules.size(); ++i) {
        list.push_back(
            resolve_pattern(modules[i], fmt::format("{}.modules[{}]", field, i), patterns));
      }
      return ActuatorSpec(std::move(list), type, crease, k);
    }

    const int count = integer(modules, field + ".modules");
    if (count < 1) fail(field + ".modules", fmt::format("must be >= 1 (got {})", count));
    const ModulePattern pattern =
        resolve_pattern(require(object, field, "pattern"), field + ".pattern", patterns);
    if (type != ActuatorType::Custom) {
      if (object.contains("handedness")) {
        fail(field + ".handedness", "only allowed for type \"Custom\"");
      }
      return ActuatorSpec::make(type, pattern, count, crease, k);
    }
    const json& hands = require(object, field, "handedness");
    if (!hands.is_array() || hands.size() != static_cast<std::size_t>(count)) {
      fail(field + ".handedness", fmt::format("expected a list of {} entries", count));
    }
    std::vector<ModulePattern> list;
    for (std::size_t i = 0; i < hands.size(); ++i) {
      list.push_back(pattern.with_handedness(
          parse_handedness(hands[i], fmt::format("{}.handedness[{}]", field, i))));
    }
    return ActuatorSpec(std::move(list), type, crease, k);
  } catch (const ArgumentError& e) {
    fail(field, e.what());
  }
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json pattern_json(const ModulePattern& p) {
  return {{"a", p.a()},
          {"b", p.b()},
          {"c", p.c()},
          {"delta0_deg", p.delta0_deg()},
          {"n_sides", p.n_sides()},
          {"handedness", to_string(p.handedness())}};
}

}  // namespace

std::string to_string(ActuatorType type) {
  switch (type) {
    case ActuatorType::TypeI: return "I";
    case ActuatorType::TypeII: return "II";
    case ActuatorType::TypeIII: return "III";
    case ActuatorType::Custom: return "Custom";
  }
  return "?";
}

std::string to_string(Handedness handedness) {
  return handedness == Handedness::CW ? "CW" : "CCW";
}

const ActuatorSpec& ConfigDocument::actuator(const std::string& name) const {
  if (name.empty()) {
    if (actuators.size() == 1) return actuators.begin()->second;
    throw ConfigError(fmt::format(
        "config defines {} actuators; select one with --actuator", actuators.size()));
  }
  const auto it = actuators.find(name);
  if (it == actuators.end()) {
    throw ConfigError(fmt::format("unresolved actuator reference '{}'", name));
  }
  return it->second;
}

const std::filesystem::path& ConfigDocument::material(const std::string& name) const {
  const auto it = materials.find(name);
  if (it == materials.end()) {
    throw ConfigError(fmt::format("unresolved material reference '{}'", name));
  }
  return it->second;
}

ConfigDocument parse_config(std::string_view text, const std::string& source_name,
                            const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte);
    std::string what = e.what();
    const auto colon = what.rfind(": ");
    if (colon != std::string::npos) what = what.substr(colon + 2);
    throw ConfigError(fmt::format("{}:{}:{}: parse error: {}", source_name, line, column, what));
  }
  if (!root.is_object()) throw ConfigError(fmt::format("{}: top level must be an object",
                                                       source_name));
  check_keys(root, source_name, {"patterns", "actuators", "materials"});

  ConfigDocument doc;
  if (root.contains("patterns")) {
    for (const auto& [name, value] : root.at("patterns").items()) {
      doc.patterns.emplace(name, parse_pattern(value, "patterns." + name));
    }
  }
  if (root.contains("actuators")) {
    for (const auto& [name, value] : root.at("actuators").items()) {
      doc.actuators.emplace(name, parse_actuator(value, "actuators." + name, doc.patterns));
    }
  }
  if (root.contains("materials")) {
    for (const auto& [name, value] : root.at("materials").items()) {
      if (!value.is_string()) fail("materials." + name, "expected a file path string");
      std::filesystem::path path = value.get<std::string>();
      if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
      doc.materials.emplace(name, path.lexically_normal());
    }
  }
  return doc;
}

ConfigDocument load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string(), path.parent_path());
}

std::string serialize_config(const ConfigDocument& doc) {
  json root = json::object();
  json& patterns = root["patterns"] = json::object();
  for (const auto& [name, p] : doc.patterns) patterns[name] = pattern_json(p);

  json& actuators = root["actuators"] = json::object();
  for (const auto& [name, spec] : doc.actuators) {
    json modules = json::array();
    for (const auto& m : spec.modules()) modules.push_back(pattern_json(m));
    actuators[name] = {{"type", to_string(spec.type())},
                       {"modules", modules},
                       {"k_c1", spec.crease().k_c1},
                       {"k_c2", spec.crease().k_c2},
                       {"skeleton_ratio", spec.skeleton_ratio()}};
  }

  json& materials = root["materials"] = json::object();
  for (const auto& [name, path] : doc.materials) materials[name] = path.generic_string();
  return root.dump(2) + "\n";
}

}  // namespace kresling
