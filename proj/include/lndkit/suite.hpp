#pragma once

#include "lndkit/report.hpp"
#include "lndkit/runner.hpp"

#include <vector>

namespace lndkit {

struct SuiteOptions {
    RunOptions run;
    std::vector<unsigned> extend_m;  // extra values of m for the X_m checks and the trivialization
};

// The fixed corpus of family checks, in a fixed order.
std::vector<Report> family_suite(const SuiteOptions& options = {});

}  // namespace lndkit
