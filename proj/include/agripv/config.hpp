#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "agripv/mpc.hpp"

namespace agripv {

/// Parses a scenario from JSON. Every field is required — there are no silent
/// defaults — and errors name the offending key path.
ScenarioConfig scenario_from_json(const nlohmann::json& j);

/// Loads and parses a scenario file; DataError on I/O or JSON syntax errors,
/// ConfigError on missing/invalid fields.
ScenarioConfig load_scenario(const std::string& path);

/// Reads the raw JSON document of a scenario file (for manifests).
nlohmann::json load_scenario_json(const std::string& path);

/// FNV-1a 64-bit hash of the canonical (key-sorted) serialization; stable
/// under key reordering in the source file.
std::uint64_t config_hash(const nlohmann::json& j);

} // namespace agripv
