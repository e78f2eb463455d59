#include "polarwalk/report.hpp"

namespace polarwalk {

const char* to_string(ExperimentReport::Status status) {
    switch (status) {
        case ExperimentReport::Status::pass: return "pass";
        case ExperimentReport::Status::fail: return "fail";
        case ExperimentReport::Status::not_applicable: return "not-applicable";
        case ExperimentReport::Status::diagnostic: return "diagnostic";
    }
    return "unknown";
}

std::string ExperimentReport::status_string() const { return to_string(status); }

nlohmann::json ExperimentReport::to_json(bool include_timing) const {
    nlohmann::json j;
    j["name"] = name;
    j["config"] = config;
    j["quantities"] = quantities;
    j["status"] = status_string();
    j["mode"] = mode;
    if (include_timing) j["wall_ms"] = wall_ms;
    return j;
}

}  // namespace polarwalk
