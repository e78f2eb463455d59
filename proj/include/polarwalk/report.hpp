#pragma once

#include <string>

#include <json.hpp>

namespace polarwalk {

// Structured record of one bound check or measurement. Everything needed to
// recompute the verdict is embedded; wall time is the only field excluded
// from byte-identity comparisons.
struct ExperimentReport {
    enum class Status { pass, fail, not_applicable, diagnostic };

    std::string name;
    nlohmann::json config = nlohmann::json::object();      // resolved parameters
    nlohmann::json quantities = nlohmann::json::object();  // lhs/rhs/measured/target/...
    Status status = Status::diagnostic;
    std::string mode = "exact";  // "exact" or "sampled(N)"
    double wall_ms = 0.0;

    bool passed() const { return status == Status::pass; }
    nlohmann::json to_json(bool include_timing = true) const;
    std::string status_string() const;
};

const char* to_string(ExperimentReport::Status status);

}  // namespace polarwalk
