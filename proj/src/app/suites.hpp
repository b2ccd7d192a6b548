#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fmcf::app {

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

const std::vector<std::string>& suite_names();

// Throws Error(ConfigInvalid) for an unknown name.
std::vector<CheckResult> run_suite(const std::string& name);

// Writes <out>/suite_<name>.json and a table to `table`; returns 0 when every check passes, else 1.
int report_suite(const std::string& name, const std::vector<CheckResult>& results, const std::string& out,
                 std::ostream& table);

}  // namespace fmcf::app
