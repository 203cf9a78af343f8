#pragma once

#include <string>
#include <vector>

namespace matchings {

// outcome of one acceptance criterion; details carry the measured values so
// a failure is diagnosable from the printed report alone
struct CriterionResult {
    std::string name;
    bool passed = false;
    std::vector<std::string> details;
};

// the criterion names, in report order
const std::vector<std::string>& acceptance_suites();

// run a single criterion by name; throws std::invalid_argument for unknown
// names, listing the valid ones
CriterionResult run_criterion(const std::string& name);

// run one named criterion, or all of them for suite == "all"
std::vector<CriterionResult> run_acceptance(const std::string& suite = "all");

}  // namespace matchings
