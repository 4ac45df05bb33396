#pragma once

#include <string>
#include <vector>

namespace authkit {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;  // notes on pass, first failures otherwise
};

/// Runs the full built-in verification suite: the four reference
/// constructions with their exact attack values, the randomized property
/// suites, oracle cross-checks, round trips, and the seeded simulation check.
/// Every comparison is exact rational equality; the simulation criterion is
/// the only statistical one.
std::vector<CriterionResult> run_reference_suite();

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace authkit
