#pragma once

#include <string>
#include <vector>

namespace cohsp {

/// One named residual check: the measured value, the tolerance it was held
/// to, and whether it passed.
struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline CheckResult make_check(std::string name, double residual, double tolerance) {
    CheckResult c;
    c.name = std::move(name);
    c.residual = residual;
    c.tolerance = tolerance;
    c.pass = residual <= tolerance;
    return c;
}

inline bool all_pass(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

}  // namespace cohsp
