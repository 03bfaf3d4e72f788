#pragma once

#include "lndkit/poly.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace lndkit {

enum class Status { Pass, Fail, Error, ExceededBounds };

// "pass", "fail", "error", "exceeded-bounds"
const char* to_string(Status s);

struct Witness {
    std::string label;
    std::string value;
};

// Outcome of a named check. Composite checks nest their sub-checks as steps; the
// overall status is the most severe one (fail, then error, then exceeded-bounds).
struct Report {
    std::string check;
    Status status = Status::Pass;
    std::string message;
    std::vector<Witness> witnesses;
    std::vector<Report> steps;
    double elapsed_ms = 0;

    explicit Report(std::string name = {}) : check(std::move(name)) {}

    bool passed() const { return status == Status::Pass; }

    Report& witness(std::string label, std::string value);
    Report& witness(std::string label, const Poly& value);
    // Marks the report failed with a counterexample or offending item.
    Report& fail(std::string message, std::string label, std::string value);
    Report& fail(std::string message, std::string label, const Poly& value);
    // Adds a sub-check and folds its status in.
    Report& step(Report sub);
    // Records a boolean sub-claim as a step with an optional witness.
    Report& require(bool ok, std::string name, std::string label = {}, std::string value = {});
};

// Runs `body` under a fresh report, timing it and turning exceptions into error
// or exceeded-bounds statuses.
Report run_check(const std::string& name, const std::function<void(Report&)>& body);

nlohmann::ordered_json to_json(const Report& r, bool with_timing = true);
nlohmann::ordered_json to_json(const std::vector<Report>& reports, bool with_timing = true);

// Indented human-readable rendering; `depth` limits nesting (-1 for all).
std::string render_text(const Report& r, int depth = 1);

}  // namespace lndkit
