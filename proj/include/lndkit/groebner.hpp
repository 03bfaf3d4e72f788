#pragma once

#include "lndkit/monomial.hpp"
#include "lndkit/poly.hpp"

#include <atomic>
#include <functional>
#include <vector>

namespace lndkit {

// A polynomial together with an optional vector of tag polynomials carried
// linearly through every reduction step. With suitable initial tags this records
// how each basis element is built from the inputs.
struct TaggedPoly {
    TermList poly;
    std::vector<TermList> tags;
};

struct GroebnerOptions {
    // When set, applied to every tag after each reduction (e.g. reduction modulo
    // another ideal when only residues of the tags matter).
    std::function<void(TermList&)> tag_reducer;
    // Stop as soon as a nonzero constant appears; the result is then {1}.
    bool stop_at_unit = true;
};

// Reduced Groebner basis with respect to `order`. All inputs (and their tags) are
// expected sorted in `order`. Elements are monic and returned sorted by
// increasing leading monomial. Throws BudgetExceeded when the pair or term
// budget of the calling thread is exhausted.
std::vector<TaggedPoly> buchberger(std::vector<TaggedPoly> input, const MonomialOrder& order,
                                   const GroebnerOptions& options = {});

struct Reduction {
    TermList remainder;
    // One quotient per basis element (only filled when requested).
    std::vector<TermList> quotients;
};

// Full reduction of p by a Groebner basis (remainder has no term divisible by a
// leading monomial of the basis).
Reduction reduce(const TermList& p, const std::vector<TermList>& basis, const MonomialOrder& order,
                 bool want_quotients = false);

TermList s_polynomial(const TermList& a, const TermList& b, const MonomialOrder& order);

// Exhaustive check that every S-polynomial of the basis reduces to zero.
bool is_groebner_basis(const std::vector<TermList>& basis, const MonomialOrder& order);

TermList sorted_terms(const Poly& p, const MonomialOrder& order);

// Counters for the engine self-check. When `verify_every_basis` is on, every
// basis produced by the Ideal cache is re-checked with is_groebner_basis.
struct EngineStats {
    std::atomic<bool> verify_every_basis{false};
    std::atomic<unsigned long> bases_computed{0};
    std::atomic<unsigned long> bases_verified{0};
    std::atomic<unsigned long> verification_failures{0};
    std::atomic<unsigned long> pairs_processed{0};
};

EngineStats& engine_stats();

}  // namespace lndkit
