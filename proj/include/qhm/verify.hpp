#pragma once

#include "qhm/ball.hpp"
#include "qhm/json_io.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qhm {

struct VerifyOptions {
    /// all, constants, metrics, balls, properties, moduli, or a single check name.
    std::string suite = "all";
    std::uint64_t seed = 42;
    /// Halved sample budgets and fewer random pairs.
    bool fast = false;
};

struct CheckResult {
    std::string check;
    Json expected;
    Json got;
    Json tolerance;
    bool pass = false;
};

Json to_json(const CheckResult& result);

/// Every check name, in report order.
const std::vector<std::string>& all_checks();

/// Check names selected by a suite; throws invalid_input for unknown suites.
std::vector<std::string> suite_checks(const std::string& suite);

/// Shape budget used by the threshold checks (halved when fast).
ShapeBudget verify_budget(bool fast);

/// Runs the selected checks in order. A check that throws is recorded as a
/// failure and the run continues. `on_result` sees each result as it lands.
std::vector<CheckResult> run_verify(const VerifyOptions& opts,
                                    const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace qhm
