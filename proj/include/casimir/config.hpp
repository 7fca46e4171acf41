#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "casimir/scenarios.hpp"

namespace casimir {

// Validation failures name the offending field.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// allow_continuation ORs with the file's own flag.
ScenarioConfig parse_config(const nlohmann::json& j, bool allow_continuation = false);
ScenarioConfig load_config(const std::string& path, std::string* raw_text = nullptr,
                           bool allow_continuation = false);
nlohmann::json config_to_json(const ScenarioConfig& c);

BoundaryCondition parse_bc(const std::string& s);

// FNV-1a, 16 hex digits.
std::string checksum(const std::string& text);

}  // namespace casimir
