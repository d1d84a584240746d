#pragma once

#include <string>
#include <vector>

namespace qtpm::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail; // worst observed margin or the first failure
    double seconds = 0.0;
};

// Runs the full release gate: analytic anchor values, identity residuals,
// bound checks and the sampling oracle. Quick mode shrinks the randomized
// instance counts; the deterministic checks stay identical.
std::vector<CriterionResult> run_acceptance(bool quick);

bool all_passed(const std::vector<CriterionResult>& results);

// "[PASS] 01 name (0.01 s) detail" per criterion.
std::string format_report(const std::vector<CriterionResult>& results);

} // namespace qtpm::verify
