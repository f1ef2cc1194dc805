#pragma once

#include <string>

#include "centro/scenario.hpp"

namespace centro {

/// Canonical text form: every field explicit, sections in fixed order,
/// doubles at full round-trip precision. parse(serialize(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

/// Parses sectioned key=value text ('#' comments). Returns an empty string on
/// success, else an error naming the offending "[section] key".
std::string parse_config(const std::string& text, ScenarioConfig& out);

/// Reads and parses a file. I/O errors are prefixed with "io:"; everything
/// else is a config error.
std::string load_config_file(const std::string& path, ScenarioConfig& out);

}  // namespace centro
