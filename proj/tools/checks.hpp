#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace lieprop::cli {

struct CheckRecord {
    std::string name;
    nlohmann::ordered_json parameters;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct CheckOptions {
    long limit_n = 10000;
};

/// Names accepted by run_check, in documentation order.
const std::vector<std::string>& check_names();

/// Runs the named consistency check; throws std::invalid_argument for unknown names.
std::vector<CheckRecord> run_check(const std::string& name, const CheckOptions& options);

nlohmann::ordered_json to_json(const std::vector<CheckRecord>& records);

} // namespace lieprop::cli
