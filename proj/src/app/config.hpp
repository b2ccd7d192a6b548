#pragma once

#include "fmcf/flow_config.hpp"

#include <map>
#include <string>
#include <vector>

namespace fmcf::app {

struct ParsedConfig {
    FlowConfig flow;
    std::vector<double> s_grid;
    bool dt_auto = true;
    std::map<std::string, std::string> raw;  // echo, in key order
};

// Flat "key = value" lines; '#' starts a comment. Throws Error(ConfigInvalid).
ParsedConfig parse_config_text(const std::string& text);
ParsedConfig parse_config_file(const std::string& path);

// Applies one key (also used for command-line overrides).
void apply_key(ParsedConfig& cfg, const std::string& key, const std::string& value);

void validate(const ParsedConfig& cfg);

}  // namespace fmcf::app
