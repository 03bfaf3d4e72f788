#pragma once

#include "lndkit/budget.hpp"
#include "lndkit/report.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace lndkit {

struct RunOptions {
    Budget budget;
    unsigned jobs = 1;
    std::optional<unsigned> degree_bound;  // overrides the default kernel-search bound
};

// Runs every task under the budget, up to `jobs` at a time. Results come back in
// task order; an escaping exception becomes an error report.
std::vector<Report> run_tasks(const std::vector<std::function<Report()>>& tasks, const RunOptions& options);

}  // namespace lndkit
