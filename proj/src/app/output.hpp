#pragma once

#include "fmcf/diagnostics.hpp"
#include "fmcf/flow_config.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace fmcf::app {

using ordered_json = nlohmann::ordered_json;

// %.17g; non-finite values as nan/inf.
std::string format_double(double x);
// RFC 4180: quote when the field holds a comma, quote, CR or LF.
std::string csv_field(const std::string& s);

std::vector<std::string> trajectory_header(FlowKind kind, const std::vector<int>& modes);
void write_trajectory_csv(std::ostream& out, FlowKind kind, const std::vector<int>& modes,
                          const std::vector<TrajectoryRecord>& records);

ordered_json to_json(const InequalityReport& r);
ordered_json to_json(const RateFit& f);
// NaN and inf become null.
ordered_json number(double x);

}  // namespace fmcf::app
