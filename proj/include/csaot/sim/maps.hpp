#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "csaot/sim/world.hpp"

namespace csaot::sim {

// SingleTurn, SimpleLoop, SharpLoop, Complex.
const std::vector<std::string>& builtin_map_names();
// Throws InputError for an unknown name.
MapSpec builtin_map(const std::string& name);

nlohmann::json map_to_json(const MapSpec& map);
// Throws ParseError naming the missing or malformed field.
MapSpec map_from_json(const nlohmann::json& doc);
MapSpec load_map_file(const std::string& path);
// A built-in name resolves to the shipped file under the maps directory when
// present, else to the compiled-in definition; anything else is a file path.
MapSpec load_map(const std::string& name_or_path);
std::string maps_directory();

}  // namespace csaot::sim
