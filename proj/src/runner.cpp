#include "lndkit/runner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace lndkit {

namespace {

Report guarded(const std::function<Report()>& task, const Budget& budget)
{
    BudgetScope scope(budget);
    try {
        return task();
    }
    catch (const std::exception& e) {
        Report r("task");
        r.status = Status::Error;
        r.message = e.what();
        return r;
    }
}

}  // namespace

std::vector<Report> run_tasks(const std::vector<std::function<Report()>>& tasks, const RunOptions& options)
{
    std::vector<Report> out(tasks.size());
    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(tasks.size())));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            out[i] = guarded(tasks[i], options.budget);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < jobs; ++k)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < tasks.size(); i = next++)
                out[i] = guarded(tasks[i], options.budget);
        });
    for (auto& t : pool)
        t.join();
    return out;
}

}  // namespace lndkit
