#pragma once

#include <string>
#include <vector>

namespace qmetro {

struct CriterionResult {
    std::string id;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    bool informational = false; // reported but never fails the suite
};

std::vector<CriterionResult> run_acceptance();

/// "PASS 3 title: detail (0.12 s)"; informational lines use INFO.
std::string format_result(const CriterionResult &r);

} // namespace qmetro
