#pragma once

/// Acceptance suite behind `bbox verify` and the ctest acceptance targets. Each criterion
/// runs its own seeded experiment and reports a single pass/fail verdict.

#include <string>
#include <vector>

namespace bbox {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

inline constexpr int acceptance_criteria = 9;

/// Quick mode cuts trial counts so the whole suite finishes in seconds; verdicts then
/// carry less statistical weight and runtime limits are not checked.
CriterionResult run_criterion(int id, bool quick = false);
std::vector<CriterionResult> run_acceptance(bool quick = false);

/// "PASS  3  one-plus-one-mc linearity  (12.4 s)  detail"
std::string format_result(const CriterionResult& result);

}  // namespace bbox
