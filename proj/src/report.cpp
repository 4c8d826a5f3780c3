#include "tforge/report.hpp"

namespace tforge {

std::string to_string(Status s) {
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::none_found: return "none-found";
    }
    return "fail";
}

ExitCode exit_code_for(Status s) {
    switch (s) {
    case Status::pass: return ExitCode::pass;
    case Status::fail: return ExitCode::verification_fail;
    case Status::none_found: return ExitCode::none_found;
    }
    return ExitCode::verification_fail;
}

nlohmann::ordered_json RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config"] = config;
    j["status"] = to_string(status);
    j["timing_ms"] = timing_ms;
    j["results"] = results;
    return j;
}

nlohmann::ordered_json make_check(std::string name, bool pass, std::string detail,
                                  nlohmann::ordered_json data) {
    nlohmann::ordered_json j;
    j["name"] = std::move(name);
    j["pass"] = pass;
    j["detail"] = std::move(detail);
    if (!data.is_null()) j["data"] = std::move(data);
    return j;
}

} // namespace tforge
