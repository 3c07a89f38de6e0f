#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "kresling/errors.hpp"
#include "kresling/kinematics.hpp"

namespace kresling {

/// Resolved contents of an actuator config file.
///
/// Format (JSON, `//` comments allowed):
///
///   {
///     "patterns":  { "<name>": {"a": mm, "b": mm, "c": mm, "delta0_deg": deg,
///                               "n_sides": 6, "handedness": "CW"|"CCW"} },
///     "actuators": { "<name>": {"pattern": "<name>" | {...}, "modules": count,
///                               "type": "I"|"II"|"III"|"Custom",
///                               "handedness": ["CW", ...],   // Custom only
///                               "k_c1": 2.0, "k_c2": 0.25, "skeleton_ratio": 0.0} },
///     "materials": { "<name>": "relative/or/absolute/path.csv" }
///   }
///
/// `modules` may also be an array of patterns (names or inline objects), one
/// per module, in which case `pattern` is omitted.
struct ConfigDocument {
  std::map<std::string, ModulePattern> patterns;
  std::map<std::string, ActuatorSpec> actuators;
  std::map<std::string, std::filesystem::path> materials;

  /// Looks up an actuator by name; an empty name selects the only actuator
  /// when there is exactly one.
  const ActuatorSpec& actuator(const std::string& name = {}) const;
  const std::filesystem::path& material(const std::string& name) const;

  bool operator==(const ConfigDocument&) const = default;
};

/// Material paths are resolved against `base_dir`.
ConfigDocument parse_config(std::string_view text, const std::string& source_name,
                            const std::filesystem::path& base_dir = {});
ConfigDocument load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize_config(doc)) == doc. Material
/// paths are written as stored.
std::string serialize_config(const ConfigDocument& doc);

std::string to_string(ActuatorType type);
std::string to_string(Handedness handedness);

}  // namespace kresling
