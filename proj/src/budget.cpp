#include "lndkit/budget.hpp"

namespace lndkit {

namespace {
thread_local Budget active_budget{};
}

const Budget& current_budget() { return active_budget; }

BudgetScope::BudgetScope(const Budget& budget) : previous_(active_budget) { active_budget = budget; }

BudgetScope::~BudgetScope() { active_budget = previous_; }

}  // namespace lndkit
