#pragma once

#include "lndkit/groebner.hpp"
#include "lndkit/poly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lndkit {

// Ideal of a polynomial ring given by generators. Copies share one cache of
// reduced Groebner bases keyed by monomial order, so repeated normal forms over
// the same ideal reuse the work. Thread safe.
class Ideal {
public:
    Ideal() = default;
    Ideal(VarTablePtr vars, std::vector<Poly> generators);

    const VarTablePtr& vars() const;
    const std::vector<Poly>& generators() const;

    // Default order: grevlex in table order.
    MonomialOrder default_order() const;

    // Reduced monic basis, sorted by increasing leading monomial.
    const std::vector<Poly>& groebner_basis() const;
    const std::vector<Poly>& groebner_basis(const MonomialOrder& order) const;
    // Same basis with terms sorted in `order`.
    const std::vector<TermList>& basis_terms(const MonomialOrder& order) const;

    Poly normal_form(const Poly& p) const;
    Poly normal_form(const Poly& p, const MonomialOrder& order) const;
    bool member(const Poly& p) const;
    bool is_unit() const;
    bool contains(const Ideal& other) const;

    // The ideal with extra generators.
    Ideal plus(const std::vector<Poly>& extra) const;
    Ideal plus(const Ideal& other) const;
    // Generators re-expressed over a table containing every variable they use.
    Ideal over(const VarTablePtr& target) const;

    std::string to_string() const;

private:
    struct CacheEntry;
    struct State;
    const CacheEntry& entry(const MonomialOrder& order) const;

    std::shared_ptr<State> state_;
};

// Generators of I intersected with the polynomial ring in the remaining variables,
// expressed over I's table.
Ideal elimination_ideal(const Ideal& I, const std::vector<std::string>& drop);
// Same, but over the table with the dropped variables removed.
Ideal eliminate_to(const Ideal& I, const std::vector<std::string>& drop);

// I : f^infinity.
Ideal saturate(const Ideal& I, const Poly& f);

// An element g with f*g = 1 modulo I, if it exists.
std::optional<Poly> is_unit_mod(const Poly& f, const Ideal& I);

// Rabinowitsch test: f^k in I for some k.
bool radical_member(const Poly& f, const Ideal& I);

bool ideals_equal(const Ideal& I, const Ideal& J);

// (a, b) with a in I, b in J and a + b = 1, if the ideals are comaximal.
std::optional<std::pair<Poly, Poly>> comaximal(const Ideal& I, const Ideal& J);

Ideal intersect(const Ideal& I, const Ideal& J);

// Cofactors c_i with p = sum c_i * g_i over the generators of I, if p is in I.
std::optional<std::vector<Poly>> lift(const Poly& p, const Ideal& I);

// A polynomial q with num = q * d modulo I, if one exists.
std::optional<Poly> divide_mod(const Poly& num, const Poly& d, const Ideal& I);

// p lies in the extension of I to the localization at f (contracted back).
bool member_localized(const Poly& p, const Ideal& I, const Poly& f);

}  // namespace lndkit
