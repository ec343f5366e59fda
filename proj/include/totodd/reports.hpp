#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace totodd {

/// Verdict of a single check. Violations are reserved for theorem-backed
/// statements (an instance failing means a bug); findings are conjecture
/// evidence and never fail a run.
enum class Status { pass, finding, violation };

inline std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::finding: return "finding";
        case Status::violation: return "violation";
    }
    return "unknown";
}

struct ReportRecord {
    std::string check;
    int weight = -1;
    int depth = -1;
    int j = -1;
    Status status = Status::pass;
    std::string expected;
    std::string observed;
    double elapsed_s = 0.0;  // console only, kept out of serialized reports
};

inline nlohmann::json record_to_json(const ReportRecord& r) {
    nlohmann::json out = {{"check", r.check},     {"N", r.weight},
                          {"r", r.depth},         {"expected", r.expected},
                          {"observed", r.observed}, {"status", to_string(r.status)}};
    if (r.j >= 0) out["j"] = r.j;
    return out;
}

inline nlohmann::json records_to_json(const std::vector<ReportRecord>& records) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : records) out.push_back(record_to_json(r));
    return out;
}

}  // namespace totodd
