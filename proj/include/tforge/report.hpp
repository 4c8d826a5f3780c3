#pragma once

#include <json.hpp>

#include <string>

namespace tforge {

enum class Status { pass, fail, none_found };

std::string to_string(Status s);

/// Process exit codes of the command-line tool.
enum class ExitCode : int {
    pass = 0,
    verification_fail = 1,
    usage = 2,
    precision = 3,
    none_found = 4,
};

ExitCode exit_code_for(Status s);

/// Result of one CLI command. `results` carries every number the text
/// rendering shows.
struct RunReport {
    std::string command;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    Status status = Status::pass;
    double timing_ms = 0.0;

    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// One named pass/fail check inside a verification report.
nlohmann::ordered_json make_check(std::string name, bool pass, std::string detail,
                                  nlohmann::ordered_json data = nullptr);

} // namespace tforge
