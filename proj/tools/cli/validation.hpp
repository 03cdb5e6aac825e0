#pragma once

#include <string>
#include <vector>

#include "commands.hpp"

namespace bsauth::cli {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string observed;
    std::string expected;
};

/// Built-in oracle suite behind `validate`: special functions against
/// quadrature, closed-form error probabilities against simulation, LS
/// estimator moments, two-hop vs consolidated signaling, ROC orderings.
std::vector<CheckResult> run_validation(const ValidateOptions& opts);

}  // namespace bsauth::cli
