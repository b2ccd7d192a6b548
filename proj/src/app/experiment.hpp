#pragma once

#include "config.hpp"

#include <ostream>

namespace fmcf::app {

constexpr const char* kCodeVersion = "fmcf 1.0.0";

// Exit status: 0 success, 2 invalid config (nothing written), 3 runtime failure (partial outputs flagged).
int run_experiment(const ParsedConfig& cfg, std::ostream& log);
int run_scan(const ParsedConfig& cfg, std::ostream& log);

std::string utc_timestamp();

}  // namespace fmcf::app
