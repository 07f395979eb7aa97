#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wsnprio/config.hpp"

namespace wsnprio::harness {

/// Reads a JSON scenario document. Missing fields take their defaults.
/// Throws IoError, ParseError (malformed document, wrong type, unknown key)
/// or ValidationError, each naming the offending field.
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig config_from_json(const nlohmann::json& doc);

/// Fully resolved document: every field written, the reception threshold
/// filled in. Loading the result gives back an equivalent configuration.
nlohmann::ordered_json to_json(const ScenarioConfig& config);
std::string dump_config(const ScenarioConfig& config);

}  // namespace wsnprio::harness
