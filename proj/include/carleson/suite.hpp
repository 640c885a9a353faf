#pragma once

#include <string>
#include <vector>

namespace carleson {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    double time_limit = 0.0;
    std::string detail;
};

struct SuiteOptions {
    /// Harness self-test: forces an impossible tolerance into the first
    /// battery so the failure path is exercised.
    bool inject_failure = false;
};

/// Runs the full acceptance battery: oracle equivalence, theorem
/// consistency checks, Monte Carlo calibration, and the property suite.
std::vector<CriterionResult> run_acceptance_suite(const SuiteOptions& options = {});

std::string format_suite_table(const std::vector<CriterionResult>& results);

}  // namespace carleson
