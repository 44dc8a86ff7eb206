#pragma once

#include <string>
#include <vector>

// Cross-implementation identity suite: every quantity the library computes
// two independent ways is compared here at oracle scale. Run by the
// `validate` CLI command; the checks double as the core assertions of the
// test suite.
namespace qumeas::validation {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // measured numbers, for the report table
};

std::vector<CheckResult> run_all();

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace qumeas::validation
