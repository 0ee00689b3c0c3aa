#pragma once

#include <string>

#include "colorline/model.hpp"

namespace colorline {

// Parses the UTF-8 JSON configuration document. Applies defaults
// (horizon 8 h, value_class value_adding, overlap off, transport Constant 0)
// and validates the result. Throws ParseError on malformed JSON (with the
// line of the failure) and SchemaError listing every violated field in one
// pass. Unknown keys are rejected.
LineModel parse_config(const std::string& text);

// Reads and parses a configuration file.
LineModel parse_config_file(const std::string& path);

// Canonical JSON form; parse_config(serialize_model(m)) == m for every
// valid model.
std::string serialize_model(const LineModel& model);

} // namespace colorline
