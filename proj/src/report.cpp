#include "lndkit/report.hpp"

#include "lndkit/errors.hpp"

#include <chrono>
#include <sstream>

namespace lndkit {

const char* to_string(Status s)
{
    switch (s) {
    case Status::Pass:
        return "pass";
    case Status::Fail:
        return "fail";
    case Status::Error:
        return "error";
    case Status::ExceededBounds:
        return "exceeded-bounds";
    }
    return "error";
}

namespace {

int severity(Status s)
{
    switch (s) {
    case Status::Pass:
        return 0;
    case Status::ExceededBounds:
        return 1;
    case Status::Error:
        return 2;
    case Status::Fail:
        return 3;
    }
    return 2;
}

void fold(Status& into, Status s)
{
    if (severity(s) > severity(into))
        into = s;
}

}  // namespace

Report& Report::witness(std::string label, std::string value)
{
    witnesses.push_back(Witness{std::move(label), std::move(value)});
    return *this;
}

Report& Report::witness(std::string label, const Poly& value)
{
    return witness(std::move(label), value.to_string());
}

Report& Report::fail(std::string msg, std::string label, std::string value)
{
    fold(status, Status::Fail);
    if (message.empty())
        message = std::move(msg);
    return witness(std::move(label), std::move(value));
}

Report& Report::fail(std::string msg, std::string label, const Poly& value)
{
    return fail(std::move(msg), std::move(label), value.to_string());
}

Report& Report::step(Report sub)
{
    if (sub.status == Status::Fail)
        witness("failed_step", sub.check);
    fold(status, sub.status);
    steps.push_back(std::move(sub));
    return *this;
}

Report& Report::require(bool ok, std::string name, std::string label, std::string value)
{
    Report sub(std::move(name));
    if (!label.empty())
        sub.witness(label, value);
    if (!ok) {
        sub.status = Status::Fail;
        sub.message = "claim does not hold";
        if (sub.witnesses.empty())
            sub.witness("claim", sub.check);
    }
    return step(std::move(sub));
}

Report run_check(const std::string& name, const std::function<void(Report&)>& body)
{
    Report r(name);
    auto start = std::chrono::steady_clock::now();
    try {
        body(r);
    }
    catch (const BudgetExceeded& e) {
        fold(r.status, Status::ExceededBounds);
        r.message = e.what();
    }
    catch (const std::exception& e) {
        fold(r.status, Status::Error);
        r.message = e.what();
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

nlohmann::ordered_json to_json(const Report& r, bool with_timing)
{
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["status"] = to_string(r.status);
    if (!r.message.empty())
        j["message"] = r.message;
    auto w = nlohmann::ordered_json::array();
    for (const auto& x : r.witnesses)
        w.push_back({{"label", x.label}, {"value", x.value}});
    j["witnesses"] = std::move(w);
    if (!r.steps.empty()) {
        auto s = nlohmann::ordered_json::array();
        for (const auto& sub : r.steps)
            s.push_back(to_json(sub, with_timing));
        j["steps"] = std::move(s);
    }
    if (with_timing)
        j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

nlohmann::ordered_json to_json(const std::vector<Report>& reports, bool with_timing)
{
    auto arr = nlohmann::ordered_json::array();
    std::size_t passed = 0;
    for (const auto& r : reports) {
        arr.push_back(to_json(r, with_timing));
        passed += r.passed() ? 1 : 0;
    }
    nlohmann::ordered_json doc;
    doc["reports"] = std::move(arr);
    doc["summary"] = {{"total", reports.size()}, {"passed", passed}, {"not_passed", reports.size() - passed}};
    return doc;
}

namespace {

void render(std::ostringstream& os, const Report& r, int depth, int level)
{
    std::string pad(static_cast<std::size_t>(level) * 2, ' ');
    os << pad << "[" << to_string(r.status) << "] " << r.check;
    if (!r.message.empty())
        os << ": " << r.message;
    os << "\n";
    const bool show_witnesses = r.status != Status::Pass || level == 0;
    if (show_witnesses)
        for (const auto& w : r.witnesses)
            os << pad << "    " << w.label << " = " << w.value << "\n";
    if (depth < 0 || level < depth)
        for (const auto& s : r.steps)
            render(os, s, depth, level + 1);
}

}  // namespace

std::string render_text(const Report& r, int depth)
{
    std::ostringstream os;
    render(os, r, depth, 0);
    return os.str();
}

}  // namespace lndkit
