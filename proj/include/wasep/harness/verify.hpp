#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace wasep {

/// One sub-check: pass iff |value - reference| <= tolerance, unless the
/// check states its own comparison. Non-gating checks are diagnostics and do
/// not affect the verdict.
struct Check {
    std::string name;
    double value = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool gating = true;
    std::string note;
};

struct CriterionReport {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;
    std::string error;  // set when the run threw

    bool pass() const;
};

struct SuiteReport {
    std::string suite;
    bool quick = false;
    std::vector<CriterionReport> criteria;

    bool pass() const;
};

/// identities, kernel, covariance, rates, inequality.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
/// Criterion ids run by a suite; throws std::invalid_argument for unknown names.
std::vector<int> suite_criteria(const std::string& name);

constexpr int kCriterionCount = 10;
std::string criterion_title(int id);

/// Runs acceptance criterion `id` (1..10). `quick` divides replica and
/// sample counts by 10. Exceptions are caught and reported as a failure.
CriterionReport run_criterion(int id, bool quick = false);

SuiteReport verify_suite(const std::string& name, bool quick = false);

/// "AC<id> PASS|FAIL <title> (<seconds> s)".
std::string summary_line(const CriterionReport& report);

nlohmann::json to_json(const Check& check);
nlohmann::json to_json(const CriterionReport& report);
nlohmann::json to_json(const SuiteReport& report);

}  // namespace wasep
