#pragma once

#include <cstddef>

namespace lndkit {

// Resource caps turning runaway computations into BudgetExceeded errors.
struct Budget {
    std::size_t max_pairs = 200000;      // critical pairs processed per Groebner basis run
    std::size_t max_terms = 100000;      // terms in any intermediate polynomial
    std::size_t max_monomials = 20000;   // ansatz size for linear-algebra searches
};

// The budget active on the calling thread.
const Budget& current_budget();

// Installs a budget for the lifetime of the scope (per thread).
class BudgetScope {
public:
    explicit BudgetScope(const Budget& budget);
    ~BudgetScope();
    BudgetScope(const BudgetScope&) = delete;
    BudgetScope& operator=(const BudgetScope&) = delete;

private:
    Budget previous_;
};

}  // namespace lndkit
