#pragma once

#include "lndkit/report.hpp"
#include "lndkit/scheme.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lndkit {

inline constexpr unsigned kDefaultNilpotencyCap = 32;
inline constexpr unsigned kDefaultDegreeBound = 4;

// k-derivation of a scheme's coordinate ring, given by the images of the ambient
// variables. Partners of inverted elements get the forced image -w^2 * d(f);
// parameters (and the root of unity) are constants.
struct Derivation {
    std::string name;
    SchemePtr scheme;
    std::vector<Poly> images;  // one per ambient variable
    bool certified = false;
    Report certificate;

    // Leibniz extension, reduced to normal form.
    Poly apply(const Poly& p) const;
    // Leibniz extension without reduction.
    Poly apply_raw(const Poly& p) const;
    Poly image(std::string_view var) const;
};

// Images must be given for every variable that is neither a partner nor a
// parameter (unless `missing_are_zero`). The certificate records, per relation g,
// that d(g) lies in the ideal and, when cheap to obtain, the cofactors.
Derivation make_derivation(std::string name, SchemePtr X, const std::map<std::string, Poly>& images,
                           bool missing_are_zero = false);
Derivation make_derivation(std::string name, SchemePtr X, const std::map<std::string, std::string>& images,
                           bool missing_are_zero = false);

// c * d
Derivation scaled(const Derivation& d, const Rational& c, std::string name);

// Least k with d^k(p) = 0, or nullopt if it exceeds `cap`.
std::optional<unsigned> nilpotency_degree(const Derivation& d, const Poly& p, unsigned cap = kDefaultNilpotencyCap);

Report is_locally_nilpotent(const Derivation& d, unsigned cap = kDefaultNilpotencyCap);

// Coaction k[X] -> k[X][T] of exp(T d), as a morphism X x A^1 -> X.
struct GaAction {
    Derivation derivation;
    std::string time_var;
    Morphism coaction;
};

GaAction exp_action(const Derivation& d, unsigned cap = kDefaultNilpotencyCap);

// Identity at T = 0 and exp((S + T) d) = exp(S d) exp(T d) on generators.
Report check_action_axioms(const GaAction& a);

// d_src(phi*(g)) = phi*(d_tgt(g)) for every target variable g.
Report check_equivariant(const Morphism& phi, const Derivation& d_src, const Derivation& d_tgt);

// Scheme ideal plus the images of all variables.
Ideal fixed_locus(const Derivation& d);

// Mutual radical membership of the generators.
Report compare_radical(const Ideal& I, const Ideal& J, const std::string& name);

bool is_invariant(const Derivation& d, const Poly& p);

enum class Grading {
    Box,          // every exponent at most the bound
    TotalDegree,  // total degree at most the bound
};

// Basis of the invariants spanned by normal-form monomials within the bound.
// Each element has a distinct leading monomial with coefficient 1.
std::vector<Poly> kernel_search(const Derivation& d, unsigned bound = kDefaultDegreeBound, Grading grading = Grading::Box);

// Whether p is congruent modulo the ideal to a linear combination of `basis`.
bool span_contains(const std::vector<Poly>& basis, const Poly& p, const Ideal& I);

// q with numerator = q * divisor in the ring; both arguments must be invariant.
// Throws Error when no quotient exists.
Poly invariant_division(const Derivation& d, const Poly& numerator, const Poly& divisor);

}  // namespace lndkit
